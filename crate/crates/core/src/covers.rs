//! Cyclic branched covers. The n-fold cover `M_n` of a knot has
//! `|H_1(M_n)| = |Res(t^n - 1, Delta)|` (zero meaning infinite), written `r_n`.
//!
//! For `J(2k, 2l)` and odd `n`, `r_n = L_n^2` with `m = kl`, so every odd
//! prime divisor of `r_n` must pass the liminal character test; these scans
//! check that, and its analogue for other two-bridge knots through the Riley
//! polynomial criterion.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::knots::{
    alexander_double_twist, fox_alexander, riley_polynomial_general, DoubleTwistKnot,
    TwoBridgeKnot,
};
use crate::liminal::{general_criterion, liminal_character_exists, LiminalVerdict};
use crate::numtheory::{factorize, primes_up_to, FactorBudget, Factorization};
use crate::poly::{resultant_auto, t_power_minus_one, UniPoly, Var};
use crate::sequences::{fib_f, lucas_l};

/// `|Res(t^n - 1, delta)|`.
pub fn r_n(delta: &UniPoly, n: u64) -> Result<BigInt> {
    Ok(signed_resultant(delta, n)?.abs())
}

fn signed_resultant(delta: &UniPoly, n: u64) -> Result<BigInt> {
    if delta.is_zero() {
        return Err(domain("Alexander polynomial is zero"));
    }
    resultant_auto(&t_power_minus_one(n)?, delta)
}

/// `L_n^2` for odd `n`, which equals `r_n` of any knot with `Delta = Delta_m`.
pub fn r_n_odd_oracle(m: i64, n: u64) -> Result<BigInt> {
    if n % 2 == 0 {
        return Err(domain(format!("n = {n} is even")));
    }
    let l = lucas_l(m, n);
    Ok(&l * &l)
}

/// The even-index values of `Res(t^n - 1, Delta_m)` by three routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenIndexCheck {
    /// `(1 - 4m) F_n^2`.
    pub via_fib: BigInt,
    /// `L_n^2 - 4 m^n`.
    pub via_lucas: BigInt,
    /// `Res(t^n - 1, m t^2 + (1 - 2m) t + m)`.
    pub resultant: BigInt,
}

impl EvenIndexCheck {
    pub fn recurrences_agree(&self) -> bool {
        self.via_fib == self.via_lucas
    }

    /// `Res = (1 - 4m) F_n^2` exactly, signs included.
    pub fn three_way_equal(&self) -> bool {
        self.recurrences_agree() && self.resultant == self.via_fib
    }

    /// `Res = (4m - 1) F_n^2`: the product of `Delta(zeta)` over the `n`-th
    /// roots of unity is `Delta(1) Delta(-1) = 4m - 1` times a product of
    /// conjugate pairs, so this is the sign the resultant actually carries.
    pub fn resultant_is_negated(&self) -> bool {
        self.resultant == -&self.via_fib
    }

    pub fn absolute_values_agree(&self) -> bool {
        self.resultant.abs() == self.via_fib.abs()
    }
}

/// `m t^2 + (1 - 2m) t + m`.
fn delta_m(m: i64) -> UniPoly {
    UniPoly::from_i64s(&[m, 1 - 2 * m, m], Var::T)
}

pub fn r_n_even_oracle(m: i64, n: u64) -> Result<EvenIndexCheck> {
    if n % 2 == 1 || n == 0 {
        return Err(domain(format!("n = {n} must be even and positive")));
    }
    let mb = BigInt::from(m);
    let f = fib_f(m, n);
    let l = lucas_l(m, n);
    Ok(EvenIndexCheck {
        via_fib: (BigInt::from(1) - BigInt::from(4) * &mb) * &f * &f,
        via_lucas: &l * &l - BigInt::from(4) * num_traits::pow(mb, n as usize),
        resultant: signed_resultant(&delta_m(m), n)?,
    })
}

/// `H_1` of the `n`-fold cover of a knot with `Delta = Delta_m` is finite.
pub fn h1_is_finite(m: i64, n: u64) -> Result<bool> {
    Ok(!r_n(&delta_m(m), n)?.is_zero())
}

/// One prime divisor of `r_n` and the criterion evaluated there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub p: BigInt,
    pub criterion: bool,
    /// The full verdict, for double twist knots.
    pub verdict: Option<LiminalVerdict>,
    /// Number of roots of `f(x, 2)` mod `p`, simple or not, for the Riley
    /// polynomial criterion.
    pub roots_mod_p: Option<usize>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverRecord {
    pub n: u64,
    pub r_n: BigInt,
    /// `None` when `r_n = 0`, i.e. `H_1(M_n)` is infinite.
    pub factorization: Option<Factorization>,
    pub checks: Vec<PrimeCheck>,
    /// Independent recomputation of `r_n` agrees (`L_n^2` for double twist
    /// knots, the resultant on the reversed polynomial otherwise).
    pub oracle_agrees: bool,
    /// Prime divisors above `p_max`, not checked.
    pub skipped_large: usize,
    /// The factorization stopped at an unsplit composite.
    pub partial: bool,
}

impl CoverRecord {
    pub fn is_infinite(&self) -> bool {
        self.r_n.is_zero()
    }

    pub fn consistent(&self) -> bool {
        self.oracle_agrees && self.checks.iter().all(|c| c.consistent)
    }

    /// Recompute `r_n` from `delta` and compare with the stored value.
    pub fn recheck(&self, delta: &UniPoly) -> Result<bool> {
        Ok(r_n(delta, self.n)? == self.r_n)
    }
}

/// When the prime 2 is tested for a double twist knot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TwoAdicTrigger {
    /// `2^3 | r_n`.
    #[default]
    EightDividesRn,
    /// `2^3 | L_n`, i.e. `2^6 | r_n` since `r_n = L_n^2` for odd `n`. With
    /// the weaker trigger, `m = 7 mod 8` gives `4 | L_3` and so `8 | r_3`
    /// without the mod-8 condition (the figure-eight has `r_3 = 16`).
    EightDividesLn,
}

impl TwoAdicTrigger {
    fn divisor(&self) -> BigInt {
        match self {
            TwoAdicTrigger::EightDividesRn => BigInt::from(8),
            TwoAdicTrigger::EightDividesLn => BigInt::from(64),
        }
    }
}

/// Odd prime divisors up to `p_max`, plus 2 when `trigger` fires.
fn primes_to_check(
    fact: &Factorization,
    r: &BigInt,
    p_max: Option<u64>,
    trigger: TwoAdicTrigger,
) -> (Vec<BigInt>, usize) {
    let two = BigInt::from(2);
    let mut out = Vec::new();
    let mut skipped = 0;
    if (r % trigger.divisor()).is_zero() {
        out.push(two.clone());
    }
    for p in fact.primes() {
        if p == &two {
            continue;
        }
        match p_max {
            Some(bound) if p > &BigInt::from(bound) => skipped += 1,
            _ => out.push(p.clone()),
        }
    }
    (out, skipped)
}

/// For each odd `n <= n_max`, factor `r_n` of `J(2k, 2l)` and test the
/// liminal character criterion at every odd prime divisor `<= p_max` (all of
/// them when `p_max` is `None`) and at 2 when `trigger` fires.
pub fn verify_main_theorem(
    knot: &DoubleTwistKnot,
    n_max: u64,
    p_max: Option<u64>,
    budget: &FactorBudget,
    trigger: TwoAdicTrigger,
) -> Result<Vec<CoverRecord>> {
    if knot.m() == 0 {
        return Err(domain(format!("{knot} has kl = 0")));
    }
    let delta = alexander_double_twist(knot);
    let odd: Vec<u64> = (1..=n_max).step_by(2).collect();
    odd.par_iter()
        .map(|&n| {
            let r = r_n(&delta, n)?;
            let oracle_agrees = r == r_n_odd_oracle(knot.m(), n)?;
            let mut record = CoverRecord {
                n,
                r_n: r.clone(),
                factorization: None,
                checks: Vec::new(),
                oracle_agrees,
                skipped_large: 0,
                partial: false,
            };
            if r.is_zero() {
                return Ok(record);
            }
            let fact = factorize(&r, budget)?;
            let (primes, skipped) = primes_to_check(&fact, &r, p_max, trigger);
            for p in primes {
                let verdict = liminal_character_exists(knot, &p)?;
                record.checks.push(PrimeCheck {
                    criterion: verdict.exists,
                    consistent: verdict.exists,
                    verdict: Some(verdict),
                    roots_mod_p: None,
                    p,
                });
            }
            record.skipped_large = skipped;
            record.partial = !fact.complete;
            record.factorization = Some(fact);
            Ok(record)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub knot: DoubleTwistKnot,
    pub p: BigInt,
    pub verdict: LiminalVerdict,
    /// Odd `n <= n_max` with `p | r_n`.
    pub dividing_indices: Vec<u64>,
}

impl CounterexampleReport {
    /// The criterion holds at `p`, yet `p` divides no odd `r_n` in range.
    pub fn converse_fails(&self) -> bool {
        self.verdict.exists && self.dividing_indices.is_empty()
    }
}

/// Test the converse direction on `J(2, 2m)`: does a prime passing the
/// criterion divide some odd `r_n`?
pub fn counterexample_scan(m: i64, p: u64, n_max: u64) -> Result<CounterexampleReport> {
    let knot = DoubleTwistKnot::new(1, m)?;
    let pb = BigInt::from(p);
    let verdict = liminal_character_exists(&knot, &pb)?;
    let delta = alexander_double_twist(&knot);
    let odd: Vec<u64> = (1..=n_max).step_by(2).collect();
    let divisible: Vec<Option<u64>> = odd
        .par_iter()
        .map(|&n| Ok((r_n(&delta, n)? % &pb).is_zero().then_some(n)))
        .collect::<Result<_>>()?;
    Ok(CounterexampleReport {
        knot,
        p: pb,
        verdict,
        dividing_indices: divisible.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remark64Report {
    pub knot: TwoBridgeKnot,
    pub alexander: UniPoly,
    pub records: Vec<CoverRecord>,
    /// Primes dividing some odd `r_n` (2 only via `8 | r_n`) at which the
    /// Riley polynomial criterion fails.
    pub exceptions: BTreeSet<u64>,
    /// The subset of `exceptions` where `f(x, 2)` has no root mod `p` at
    /// all, i.e. the curves `f = 0` and `y = 2` miss each other over `F_p`.
    /// The rest fail only through repeated roots.
    pub empty_intersections: BTreeSet<u64>,
}

/// The Riley-polynomial analogue of [`verify_main_theorem`] for any
/// two-bridge knot: divisors of `r_n` up to `p_max` are found by trial
/// division, and each is tested with the simple-root criterion.
pub fn remark64_scan(knot: &TwoBridgeKnot, n_max: u64, p_max: u64) -> Result<Remark64Report> {
    let delta = fox_alexander(knot)?;
    let reversed = delta.reversed();
    let f = riley_polynomial_general(knot)?;
    let primes = primes_up_to(p_max);
    let odd: Vec<u64> = (1..=n_max).step_by(2).collect();
    let records = odd
        .par_iter()
        .map(|&n| {
            let r = r_n(&delta, n)?;
            let oracle_agrees = r == r_n(&reversed, n)?;
            let mut record = CoverRecord {
                n,
                r_n: r.clone(),
                factorization: None,
                checks: Vec::new(),
                oracle_agrees,
                skipped_large: 0,
                partial: false,
            };
            if r.is_zero() {
                return Ok(record);
            }
            let mut cofactor = r.abs();
            let mut factors = Vec::new();
            for &p in &primes {
                let pb = BigInt::from(p);
                let mut e = 0u32;
                while (&cofactor % &pb).is_zero() {
                    cofactor /= &pb;
                    e += 1;
                }
                if e == 0 || (p == 2 && e < 3) {
                    continue;
                }
                factors.push(p);
            }
            if cofactor > BigInt::from(1) {
                record.skipped_large = 1;
            }
            for p in factors {
                let gc = general_criterion(&f, p)?;
                record.checks.push(PrimeCheck {
                    p: BigInt::from(p),
                    criterion: gc.holds,
                    verdict: None,
                    roots_mod_p: Some(gc.roots.len()),
                    consistent: gc.holds,
                });
            }
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    let failing = || {
        records
            .iter()
            .flat_map(|r| r.checks.iter())
            .filter(|c| !c.criterion)
    };
    let as_u64 = |c: &PrimeCheck| u64::try_from(&c.p).expect("p <= p_max");
    let exceptions = failing().map(as_u64).collect();
    let empty_intersections = failing()
        .filter(|c| c.roots_mod_p == Some(0))
        .map(as_u64)
        .collect();
    Ok(Remark64Report {
        knot: *knot,
        alexander: delta,
        records,
        exceptions,
        empty_intersections,
    })
}
