//! Fixed-precision p-adic integers, square roots in Z_p, Newton lifting of
//! simple roots and truncated implicit power series in `y - 2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::numtheory::{self, is_prime_u64, mod_inverse, sqrt_mod_p};
use crate::poly::{BiPoly, UniPoly, Var};

/// Absolute precision used when the caller has no preference.
pub const DEFAULT_PRECISION: u32 = 10;

/// An element of Z_p known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicInt {
    p: u64,
    precision: u32,
    residue: BigInt,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

fn check_precision(n: u32) -> Result<()> {
    if n == 0 {
        Err(domain("p-adic precision must be at least 1"))
    } else {
        Ok(())
    }
}

impl PAdicInt {
    pub fn new(value: &BigInt, p: u64, precision: u32) -> Result<Self> {
        check_prime(p)?;
        check_precision(precision)?;
        Ok(Self::new_unchecked(value, p, precision))
    }

    pub(crate) fn new_unchecked(value: &BigInt, p: u64, precision: u32) -> Self {
        let modulus = num_traits::pow(BigInt::from(p), precision as usize);
        Self {
            p,
            precision,
            residue: value.mod_floor(&modulus),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Representative in `[0, p^precision)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.precision as usize)
    }

    /// Drop to a lower precision.
    pub fn truncate(&self, precision: u32) -> Result<Self> {
        check_precision(precision)?;
        if precision > self.precision {
            return Err(domain(format!(
                "cannot raise precision from {} to {precision}",
                self.precision
            )));
        }
        Ok(Self::new_unchecked(&self.residue, self.p, precision))
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.p).is_zero()
    }

    /// `None` when the element is zero at this precision.
    pub fn valuation(&self) -> Option<u32> {
        (!self.is_zero()).then(|| numtheory::valuation(&self.residue, &BigInt::from(self.p)))
    }

    pub fn inverse(&self) -> Result<Self> {
        mod_inverse(&self.residue, &self.modulus())
            .map(|inv| Self::new_unchecked(&inv, self.p, self.precision))
            .ok_or_else(|| domain(format!("{self} is not a unit")))
    }

    pub fn pow(&self, e: u32) -> Self {
        let r = self.residue.modpow(&BigInt::from(e), &self.modulus());
        Self::new_unchecked(&r, self.p, self.precision)
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.p, rhs.p, "p-adic arithmetic across different primes");
        let n = self.precision.min(rhs.precision);
        Self::new_unchecked(&op(&self.residue, &rhs.residue), self.p, n)
    }
}

impl fmt::Display for PAdicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.precision)
    }
}

impl Add for &PAdicInt {
    type Output = PAdicInt;
    fn add(self, rhs: &PAdicInt) -> PAdicInt {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &PAdicInt {
    type Output = PAdicInt;
    fn sub(self, rhs: &PAdicInt) -> PAdicInt {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &PAdicInt {
    type Output = PAdicInt;
    fn mul(self, rhs: &PAdicInt) -> PAdicInt {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for &PAdicInt {
    type Output = PAdicInt;
    fn neg(self) -> PAdicInt {
        PAdicInt::new_unchecked(&-&self.residue, self.p, self.precision)
    }
}

/// Whether `a` has a square root in Z_p.
///
/// The largest even power `p^(2e)` is stripped first; an odd remaining
/// valuation means no root. The unit part `u` then needs `u = 1 mod 8` for
/// `p = 2` and `(u/p) = 1` for odd `p`.
pub fn padic_sqrt_exists(a: &BigInt, p: u64) -> Result<bool> {
    if a.is_zero() {
        return Err(domain("square root of 0 is not a meaningful query"));
    }
    check_prime(p)?;
    let pb = BigInt::from(p);
    let v = numtheory::valuation(a, &pb);
    if v % 2 == 1 {
        return Ok(false);
    }
    let unit = a / num_traits::pow(pb.clone(), v as usize);
    Ok(if p == 2 {
        unit.mod_floor(&BigInt::from(8)).is_one()
    } else {
        numtheory::legendre(&unit, &pb)? == 1
    })
}

/// A square root of `a` in Z_p to `precision` digits, or `None` when none
/// exists.
///
/// The result is the truncation of a genuine p-adic root `r`; of `r` and
/// `-r` the one with the smaller residue is returned. For `p = 2` and a unit
/// `a = 8b + 1` the root is `2*beta + 1` with `beta` a lifted root of
/// `Y^2 + Y - 2b`, whose derivative is a unit mod 2.
pub fn padic_sqrt(a: &BigInt, p: u64, precision: u32) -> Result<Option<PAdicInt>> {
    check_precision(precision)?;
    if !padic_sqrt_exists(a, p)? {
        return Ok(None);
    }
    let pb = BigInt::from(p);
    let v = numtheory::valuation(a, &pb);
    let half = v / 2;
    let unit = a / num_traits::pow(pb.clone(), v as usize);

    let unit_root = if p == 2 {
        let b = (&unit - BigInt::one()) / BigInt::from(8);
        let g = UniPoly::new(vec![-(b * BigInt::from(2)), BigInt::one(), BigInt::one()], Var::X);
        let beta = hensel_lift_root(&g, &BigInt::zero(), 2, precision)?;
        beta.residue * BigInt::from(2) + BigInt::one()
    } else {
        let r0 = sqrt_mod_p(&unit, &pb)?.expect("existence checked above");
        let g = UniPoly::new(vec![-unit.clone(), BigInt::zero(), BigInt::one()], Var::X);
        hensel_lift_root(&g, &r0, p, precision)?.residue
    };

    let modulus = num_traits::pow(pb.clone(), precision as usize);
    let root = (num_traits::pow(pb, half as usize) * unit_root).mod_floor(&modulus);
    let other = (&modulus - &root).mod_floor(&modulus);
    Ok(Some(PAdicInt::new_unchecked(&root.min(other), p, precision)))
}

/// Lift a simple root `x0` of `f` mod `p` to a root mod `p^precision` by
/// quadratic Newton iteration.
pub fn hensel_lift_root(f: &UniPoly, x0: &BigInt, p: u64, precision: u32) -> Result<PAdicInt> {
    check_prime(p)?;
    check_precision(precision)?;
    let pb = BigInt::from(p);
    if !f.eval_mod(x0, &pb).is_zero() {
        return Err(Error::NotARoot(format!("f({x0}) != 0 mod {p}")));
    }
    let df = f.derivative();
    if df.eval_mod(x0, &pb).is_zero() {
        return Err(Error::HenselInapplicable(format!(
            "f'({x0}) = 0 mod {p}, root is not simple"
        )));
    }
    let mut x = x0.mod_floor(&pb);
    let mut reached = 1u32;
    while reached < precision {
        reached = (2 * reached).min(precision);
        let m = num_traits::pow(pb.clone(), reached as usize);
        let inv = mod_inverse(&df.eval_mod(&x, &m), &m).expect("derivative stays a unit");
        x = (&x - f.eval_mod(&x, &m) * inv).mod_floor(&m);
    }
    Ok(PAdicInt::new_unchecked(&x, p, precision))
}

/// A truncated power series `sum c_j (y - 2)^j` with p-adic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicSeries {
    p: u64,
    precision: u32,
    coefficients: Vec<PAdicInt>,
}

impl PAdicSeries {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Coefficient of `(y - 2)^j` at index `j`.
    pub fn coefficients(&self) -> &[PAdicInt] {
        &self.coefficients
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// The truncated series evaluated at an integer `y`.
    pub fn eval(&self, y: &BigInt) -> PAdicInt {
        let h = y - BigInt::from(2);
        let modulus = self.coefficients[0].modulus();
        let r = self
            .coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &h + c.residue()).mod_floor(&modulus));
        PAdicInt::new_unchecked(&r, self.p, self.precision)
    }
}

fn series_mul(a: &[BigInt], b: &[BigInt], len: usize, m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

/// `G(s(h), h)` truncated to `len` terms, where `G(x, h) = f(x, 2 + h)`.
fn substitute(shifted: &BiPoly, s: &[BigInt], len: usize, m: &BigInt) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    for row in shifted.rows().iter().rev() {
        acc = series_mul(&acc, s, len, m);
        for (j, c) in row.iter().enumerate().take(len) {
            acc[j] = (&acc[j] + c).mod_floor(m);
        }
    }
    acc
}

/// The implicit function `x = s(y)` with `f(s(y), y) = 0` near `(x0, 2)`,
/// as a series in `y - 2` of the given order.
///
/// Needs `f(x0, 2) = 0 mod p^N` and `df/dx(x0, 2)` a unit. Each coefficient
/// is solved from the linear term: `c_j = -[h^j] G(s_{<j}) / G_x(x0, 0)`.
pub fn implicit_series(f: &BiPoly, x0: &PAdicInt, order: usize) -> Result<PAdicSeries> {
    let p = x0.p();
    let precision = x0.precision();
    let m = x0.modulus();
    let two = BigInt::from(2);
    if !f.eval_mod(x0.residue(), &two, &m).is_zero() {
        return Err(Error::NotARoot(format!("f({}, 2) != 0 mod {p}^{precision}", x0.residue())));
    }
    let fx = f.partial_x().eval_mod(x0.residue(), &two, &m);
    let inv = mod_inverse(&fx, &m).ok_or_else(|| {
        Error::HenselInapplicable(format!("df/dx({}, 2) is not a unit mod {p}", x0.residue()))
    })?;

    let shifted = f.shift_y(&two);
    let len = order + 1;
    let mut s = vec![BigInt::zero(); len];
    s[0] = x0.residue().clone();
    for j in 1..len {
        let g = substitute(&shifted, &s, j + 1, &m);
        s[j] = (-&g[j] * &inv).mod_floor(&m);
    }
    Ok(PAdicSeries {
        p,
        precision,
        coefficients: s
            .iter()
            .map(|c| PAdicInt::new_unchecked(c, p, precision))
            .collect(),
    })
}
