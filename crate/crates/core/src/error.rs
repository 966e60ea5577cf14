use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    /// The starting point is not a root modulo p.
    #[error("not a root: {0}")]
    NotARoot(String),

    /// The root is not simple modulo p, so Newton lifting does not apply.
    #[error("Hensel lifting inapplicable: {0}")]
    HenselInapplicable(String),

    /// A symbolic construction produced an inconsistent result. This signals
    /// a bug in a sign or word convention, never bad user input.
    #[error("construction error: {0}")]
    Construction(String),

    #[error("factoring budget exhausted on composite cofactor {0}")]
    FactoringBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
