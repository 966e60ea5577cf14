//! Exact arithmetic for liminal SL2(Z_p)-characters of two-bridge knot groups.
//!
//! The crate is layered bottom-up:
//!
//! - [`numtheory`]: primality, factorization, Legendre symbols, square roots mod p.
//! - [`padic`]: fixed-precision p-adic integers, Hensel lifting, implicit series.
//! - [`poly`]: dense integer polynomials in one and two variables, resultants.
//! - [`knots`]: Chebyshev polynomials, Alexander and Riley polynomials.
//! - [`liminal`]: the liminal character and representation criteria.
//! - [`sequences`]: Lucas/Fibonacci-type sequences attached to `t^2 - t + m`.
//! - [`covers`]: homology orders of cyclic branched covers and verification scans.

pub mod covers;
pub mod error;
pub mod knots;
pub mod liminal;
pub mod numtheory;
pub mod padic;
pub mod poly;
pub mod sequences;

pub use error::{Error, Result};
pub use knots::{DoubleTwistKnot, TwoBridgeKnot};
pub use liminal::{LiminalVerdict, Reason};
pub use numtheory::{FactorBudget, Factorization};
pub use padic::{PAdicInt, PAdicSeries};
pub use poly::{BiPoly, UniPoly, Var};
