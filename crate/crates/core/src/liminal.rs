//! Existence criteria for liminal characters and representations, and the
//! explicit p-adic liminal point.
//!
//! For `J(2k, 2l)` with `m = kl != 0`, the reducible characters meeting the
//! Riley curve sit at `y = 2`, `x^2 = (4m - 1)/m`. A liminal SL2(Z_p)-character
//! exists exactly when that `x` lies in Z_p, which for `p` odd comes down to a
//! Legendre symbol of the square-free part of `4m^2 - m` and for `p = 2` to a
//! congruence mod 8.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::knots::{riley_polynomial, DoubleTwistKnot};
use crate::numtheory::{is_prime, legendre, square_free_part};
use crate::padic::{padic_sqrt, PAdicInt};
use crate::poly::{roots_mod_p, BiPoly, RootModP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    P2Mod8Ok,
    P2Mod8Fail,
    OddSymbolPlus,
    OddSymbolMinusOrZero,
    PDividesKl,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::P2Mod8Ok => "P2_MOD8_OK",
            Reason::P2Mod8Fail => "P2_MOD8_FAIL",
            Reason::OddSymbolPlus => "ODD_SYMBOL_PLUS",
            Reason::OddSymbolMinusOrZero => "ODD_SYMBOL_MINUS_OR_ZERO",
            Reason::PDividesKl => "P_DIVIDES_KL",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The outcome of the liminal character test together with its audit data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiminalVerdict {
    pub exists: bool,
    pub reason: Reason,
    /// Square-free part of `4k^2 l^2 - kl`.
    pub r: BigInt,
    /// `(r/p)`; absent for `p = 2` and when `p | kl`.
    pub symbol: Option<i8>,
}

/// `4m^2 - m` for `m = kl`.
pub fn discriminant(knot: &DoubleTwistKnot) -> BigInt {
    let m = BigInt::from(knot.m());
    BigInt::from(4) * &m * &m - m
}

fn check_inputs(knot: &DoubleTwistKnot, p: &BigInt) -> Result<()> {
    if knot.m() == 0 {
        return Err(domain(format!("{knot} has kl = 0")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(())
}

/// Whether the group of `knot` admits a liminal SL2(Z_p)-character.
pub fn liminal_character_exists(knot: &DoubleTwistKnot, p: &BigInt) -> Result<LiminalVerdict> {
    check_inputs(knot, p)?;
    let d = discriminant(knot);
    let r = square_free_part(&d)?;
    if p == &BigInt::from(2) {
        let ok = d.mod_floor(&BigInt::from(8)).is_one();
        let reason = if ok { Reason::P2Mod8Ok } else { Reason::P2Mod8Fail };
        return Ok(LiminalVerdict { exists: ok, reason, r, symbol: None });
    }
    if (BigInt::from(knot.m()) % p).is_zero() {
        return Ok(LiminalVerdict {
            exists: false,
            reason: Reason::PDividesKl,
            r,
            symbol: None,
        });
    }
    let symbol = legendre(&r, p)?;
    let exists = symbol == 1;
    let reason = if exists {
        Reason::OddSymbolPlus
    } else {
        Reason::OddSymbolMinusOrZero
    };
    Ok(LiminalVerdict { exists, reason, r, symbol: Some(symbol) })
}

/// Sufficient condition for a liminal SL2(Z_p)-representation: a liminal
/// character exists, `p` is odd, and `-kl` is a square mod `p`.
pub fn liminal_representation_exists(knot: &DoubleTwistKnot, p: &BigInt) -> Result<bool> {
    let verdict = liminal_character_exists(knot, p)?;
    if !verdict.exists || p == &BigInt::from(2) {
        return Ok(false);
    }
    let minus_m = square_free_part(&BigInt::from(-knot.m()))?;
    Ok(legendre(&minus_m, p)? == 1)
}

/// Result of the Riley-polynomial criterion at a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralCriterion {
    /// A simple root of `f(x, 2)` exists mod `p`.
    pub holds: bool,
    /// Simple roots, each of which Hensel-lifts to a liminal point.
    pub witnesses: Vec<u64>,
    /// Every root of `f(x, 2)` mod `p`.
    pub roots: Vec<RootModP>,
}

impl GeneralCriterion {
    /// More than one simple root; "a single root" is read as "a simple root",
    /// so this case is flagged rather than rejected.
    pub fn multiple_witnesses(&self) -> bool {
        self.witnesses.len() > 1
    }
}

/// Criterion for any two-bridge knot from its Riley polynomial `f`: a simple
/// root of `f(x, 2)` mod `p` lifts to a liminal SL2(Z_p)-character.
pub fn general_criterion(f: &BiPoly, p: u64) -> Result<GeneralCriterion> {
    let specialized = f.specialize_y(&BigInt::from(2));
    let roots = roots_mod_p(&specialized, p)?;
    let witnesses: Vec<u64> = roots.iter().filter(|r| r.simple).map(|r| r.root).collect();
    Ok(GeneralCriterion {
        holds: !witnesses.is_empty(),
        witnesses,
        roots,
    })
}

/// The liminal point `x = sqrt(4 - 1/kl)` to precision `p^precision`; the
/// companion coordinate is `y = 2`.
///
/// Of `x` and `-x` the one with the smaller leading digit is returned (see
/// [`leading_digit_key`]), so raising the precision only appends digits.
/// The point is checked against the Riley polynomial before it is returned.
pub fn construct_liminal_character(
    knot: &DoubleTwistKnot,
    p: u64,
    precision: u32,
) -> Result<PAdicInt> {
    let pb = BigInt::from(p);
    let verdict = liminal_character_exists(knot, &pb)?;
    if !verdict.exists {
        return Err(domain(format!(
            "{knot} has no liminal character at p = {p} ({})",
            verdict.reason
        )));
    }
    // x = sqrt(4m^2 - m) / m; the criterion forces p not dividing m.
    let root = padic_sqrt(&discriminant(knot), p, precision)?
        .ok_or_else(|| Error::Construction(format!("4m^2 - m has no root in Z_{p}")))?;
    let m = PAdicInt::new(&BigInt::from(knot.m()), p, precision)?;
    let x = &root * &m.inverse()?;
    let other = -&x;
    let x = if leading_digit_key(&other) < leading_digit_key(&x) { other } else { x };

    let modulus = x.modulus();
    let value = riley_polynomial(knot).eval_mod(x.residue(), &BigInt::from(2), &modulus);
    if !value.is_zero() {
        return Err(Error::Construction(format!(
            "Riley polynomial of {knot} is {value} at ({x}, 2)"
        )));
    }
    Ok(x)
}

/// Sort key choosing between `x` and `-x` independently of precision: the
/// first nonzero digit for odd `p`, the two lowest digits of the unit part
/// for `p = 2` (where the first is always 1). Ties fall back to the residue.
fn leading_digit_key(x: &PAdicInt) -> (BigInt, BigInt) {
    let Some(v) = x.valuation() else {
        return (BigInt::zero(), BigInt::zero());
    };
    let p = BigInt::from(x.p());
    let unit = x.residue() / num_traits::pow(p.clone(), v as usize);
    let digits_left = x.precision() - v;
    let window = if x.p() == 2 && digits_left >= 2 { BigInt::from(4) } else { p };
    (unit.mod_floor(&window), x.residue().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::TwoBridgeKnot;
    use crate::knots::riley_polynomial_general;
    use crate::numtheory::primes_up_to;

    fn knot(k: i64, l: i64) -> DoubleTwistKnot {
        DoubleTwistKnot::new(k, l).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn character_examples() {
        let v = liminal_character_exists(&knot(1, 1), &big(13)).unwrap();
        assert!(v.exists);
        assert_eq!(v.reason, Reason::OddSymbolPlus);
        assert_eq!(v.r, big(3));
        assert_eq!(v.symbol, Some(1));

        let v = liminal_character_exists(&knot(1, 3), &big(2)).unwrap();
        assert!(v.exists);
        assert_eq!(v.reason, Reason::P2Mod8Ok);
        assert_eq!(v.symbol, None);

        let v = liminal_character_exists(&knot(1, 1), &big(5)).unwrap();
        assert!(!v.exists);
        assert_eq!(v.symbol, Some(-1));

        let v = liminal_character_exists(&knot(1, 3), &big(3)).unwrap();
        assert_eq!(v.reason, Reason::PDividesKl);

        assert!(liminal_character_exists(&knot(0, 3), &big(5)).is_err());
        assert!(liminal_character_exists(&knot(1, 1), &big(9)).is_err());
    }

    #[test]
    fn verdict_invariants() {
        for k in -4i64..=4 {
            for l in -4i64..=4 {
                if k * l == 0 {
                    continue;
                }
                for p in primes_up_to(100) {
                    let v = liminal_character_exists(&knot(k, l), &big(p as i64)).unwrap();
                    assert_eq!(
                        v.exists,
                        matches!(v.reason, Reason::P2Mod8Ok | Reason::OddSymbolPlus)
                    );
                    assert_eq!(square_free_part(&v.r).unwrap(), v.r);
                }
            }
        }
    }

    #[test]
    fn representation_examples() {
        assert!(liminal_representation_exists(&knot(1, -1), &big(11)).unwrap());
        assert!(liminal_representation_exists(&knot(1, 1), &big(13)).unwrap());
        for (k, l) in [(1, 3), (1, 1), (2, -3)] {
            assert!(!liminal_representation_exists(&knot(k, l), &big(2)).unwrap());
        }
    }

    #[test]
    fn representation_implies_character() {
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                if k * l == 0 {
                    continue;
                }
                for p in primes_up_to(200) {
                    let pb = big(p as i64);
                    if liminal_representation_exists(&knot(k, l), &pb).unwrap() {
                        assert!(liminal_character_exists(&knot(k, l), &pb).unwrap().exists);
                    }
                }
            }
        }
    }

    #[test]
    fn general_criterion_examples() {
        let trefoil = BiPoly::from_terms(&[(1, 2, 0), (-1, 0, 1), (-1, 0, 0)]);
        let c = general_criterion(&trefoil, 13).unwrap();
        assert!(c.holds);
        assert_eq!(c.witnesses, vec![4, 9]);
        assert!(c.multiple_witnesses());
        assert!(!general_criterion(&trefoil, 5).unwrap().holds);

        let six_two = crate::knots::NamedKnot::SixTwo.resolve().unwrap();
        let f = riley_polynomial_general(&six_two).unwrap();
        let c = general_criterion(&f, 2).unwrap();
        assert!(!c.holds);
        assert!(c.roots.is_empty());

        assert!(general_criterion(&BiPoly::constant(big(7)), 7).is_err());
    }

    #[test]
    fn criteria_agree_off_the_bad_primes() {
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                if k * l == 0 {
                    continue;
                }
                let kn = knot(k, l);
                let f = riley_polynomial(&kn);
                let m = k * l;
                for p in primes_up_to(200) {
                    let pi = p as i64;
                    if (2 * m) % pi == 0 || (4 * m - 1) % pi == 0 {
                        continue;
                    }
                    let lhs = liminal_character_exists(&kn, &big(pi)).unwrap().exists;
                    let rhs = general_criterion(&f, p).unwrap().holds;
                    assert_eq!(lhs, rhs, "{kn} p={p}");
                }
            }
        }
    }

    #[test]
    fn double_root_case_is_only_sufficient() {
        // m = -6, p = 5: 4m - 1 = -25, so f(x, 2) = -6x^2 + 25 has the double
        // root 0 mod 5 while x^2 = 25/6 still has a root in Z_5.
        let kn = knot(2, -3);
        assert!(liminal_character_exists(&kn, &big(5)).unwrap().exists);
        assert!(!general_criterion(&riley_polynomial(&kn), 5).unwrap().holds);
        let x = construct_liminal_character(&kn, 5, 6).unwrap();
        assert_eq!(x.valuation(), Some(1));
    }

    #[test]
    fn construction_examples() {
        let x = construct_liminal_character(&knot(1, 1), 13, 1).unwrap();
        assert_eq!(x.residue(), &big(4));
        let x = construct_liminal_character(&knot(1, 1), 13, 3).unwrap();
        assert_eq!((x.residue() * x.residue() - big(3)) % big(2197), big(0));
        assert_eq!(x.residue() % big(13), big(4));
        for n in 1..8 {
            let lifted = construct_liminal_character(&knot(1, 1), 13, n + 1).unwrap();
            let low = construct_liminal_character(&knot(1, 1), 13, n).unwrap();
            assert_eq!(lifted.truncate(n).unwrap(), low);
        }
        let x = construct_liminal_character(&knot(1, -1), 11, 1).unwrap();
        assert_eq!(x.residue(), &big(4));
        assert!(construct_liminal_character(&knot(1, 1), 5, 3).is_err());
    }

    #[test]
    fn construction_satisfies_riley_hook() {
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                if k * l == 0 {
                    continue;
                }
                for p in primes_up_to(60) {
                    let kn = knot(k, l);
                    if !liminal_character_exists(&kn, &big(p as i64)).unwrap().exists {
                        continue;
                    }
                    let x = construct_liminal_character(&kn, p, 8).unwrap();
                    let m = BigInt::from(kn.m());
                    let lhs = (&m * x.residue() * x.residue()).mod_floor(&x.modulus());
                    let rhs = (BigInt::from(4) * &m - BigInt::one()).mod_floor(&x.modulus());
                    assert_eq!(lhs, rhs, "{kn} p={p}");
                    let coarser = construct_liminal_character(&kn, p, 7).unwrap();
                    assert_eq!(x.truncate(7).unwrap(), coarser, "{kn} p={p}");
                    let coarser = construct_liminal_character(&kn, p, 7).unwrap();
                    assert_eq!(x.truncate(7).unwrap(), coarser, "{kn} p={p}");
                }
            }
        }
    }

    #[test]
    fn general_riley_criterion_for_twist_knots() {
        // b(5,3) is the figure-eight, so its criterion matches (5/p) = 1.
        let f = riley_polynomial_general(&TwoBridgeKnot::new(5, 3).unwrap()).unwrap();
        for p in primes_up_to(200).into_iter().filter(|&p| p > 5) {
            let expected = legendre(&big(5), &big(p as i64)).unwrap() == 1;
            assert_eq!(general_criterion(&f, p).unwrap().holds, expected, "p={p}");
        }
    }
}
