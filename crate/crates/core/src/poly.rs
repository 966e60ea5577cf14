//! Dense integer polynomials in one variable ([`UniPoly`]) and two variables
//! ([`BiPoly`]), resultants, and root finding modulo small primes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Largest prime accepted by [`roots_mod_p`]; the scan is `O(p * deg)`.
pub const ROOT_SCAN_CAP: u64 = 1_000_000;

/// Sylvester dimensions above this go through the Euclidean route in
/// [`resultant_auto`].
pub const BAREISS_MAX_DIM: usize = 64;

/// Variable name used when printing a [`UniPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    X,
    Y,
    Z,
}

impl Var {
    fn symbol(self) -> char {
        match self {
            Var::T => 't',
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

/// `sum(coeffs[i] * var^i)`. No trailing zeros; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
    var: Var,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>, var: Var) -> Self {
        trim(&mut coeffs);
        Self { coeffs, var }
    }

    pub fn from_i64s(coeffs: &[i64], var: Var) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), var)
    }

    pub fn zero(var: Var) -> Self {
        Self::new(Vec::new(), var)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(BigInt::one(), var)
    }

    pub fn constant(c: BigInt, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    /// The polynomial `var`.
    pub fn var(var: Var) -> Self {
        Self::monomial(BigInt::one(), 1, var)
    }

    pub fn monomial(c: BigInt, degree: usize, var: Var) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs, var)
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `var^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    /// Evaluation reduced into `[0, modulus)`.
    pub fn eval_mod(&self, at: &BigInt, modulus: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * at + c).mod_floor(modulus))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(p)).collect(), self.var)
    }

    /// `t^deg * f(1/t)`: the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs, self.var)
    }

    /// Strip the largest power of `var` dividing the polynomial.
    pub fn strip_var_power(&self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[lead_zeros..].to_vec(), self.var)
    }
}

impl fmt::Display for UniPoly {
    /// Ascending order: `1 - 3*t + t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial_text(&[(self.var.symbol(), i)])));
        write_terms(f, terms)
    }
}

fn monomial_text(powers: &[(char, usize)]) -> String {
    powers
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (BigInt, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn add_vecs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn mul_vecs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(add_vecs(&self.coeffs, &rhs.coeffs), self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(mul_vecs(&self.coeffs, &rhs.coeffs), self.var)
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_owned_ops!(UniPoly);
forward_owned_ops!(BiPoly);

/// `sum(c[i][j] * x^i * y^j)`. Rows and the row list carry no trailing zeros,
/// so derived equality is coefficient-wise equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: Vec<Vec<BigInt>>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<Vec<BigInt>>) -> Self {
        for row in &mut coeffs {
            trim(row);
        }
        while coeffs.last().is_some_and(Vec::is_empty) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From `(coeff, x_exp, y_exp)` terms; repeated monomials accumulate.
    pub fn from_terms(terms: &[(i64, usize, usize)]) -> Self {
        let mut coeffs: Vec<Vec<BigInt>> = Vec::new();
        for &(c, i, j) in terms {
            if coeffs.len() <= i {
                coeffs.resize(i + 1, Vec::new());
            }
            if coeffs[i].len() <= j {
                coeffs[i].resize(j + 1, BigInt::zero());
            }
            coeffs[i][j] += c;
        }
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![vec![c]])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_terms(&[(1, 1, 0)])
    }

    pub fn y() -> Self {
        Self::from_terms(&[(1, 0, 1)])
    }

    /// Embed a univariate polynomial as a polynomial in `y`.
    pub fn from_uni_in_y(f: &UniPoly) -> Self {
        Self::new(vec![f.coeffs.clone()])
    }

    /// Embed a univariate polynomial as a polynomial in `x`.
    pub fn from_uni_in_x(f: &UniPoly) -> Self {
        Self::new(f.coeffs.iter().map(|c| vec![c.clone()]).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient rows: `rows()[i][j]` multiplies `x^i y^j`.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_default()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|r| r.len().checked_sub(1)).max()
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|a| a * c).collect())
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.specialize_y(y).eval(x)
    }

    /// `f(x, y)` reduced into `[0, modulus)`.
    pub fn eval_mod(&self, x: &BigInt, y: &BigInt, modulus: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, row| {
            let r = row
                .iter()
                .rev()
                .fold(BigInt::zero(), |a, c| (a * y + c).mod_floor(modulus));
            (acc * x + r).mod_floor(modulus)
        })
    }

    /// `f(x, value)` as a polynomial in `x`.
    pub fn specialize_y(&self, value: &BigInt) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().rev().fold(BigInt::zero(), |a, c| a * value + c))
            .collect();
        UniPoly::new(coeffs, Var::X)
    }

    /// `f(x, shift + h)` with `h` taking the place of `y`.
    pub fn shift_y(&self, shift: &BigInt) -> Self {
        let h_plus_shift = UniPoly::new(vec![shift.clone(), BigInt::one()], Var::Y);
        let rows = self
            .coeffs
            .iter()
            .map(|row| {
                let r = UniPoly::new(row.clone(), Var::Y);
                compose_uni(&r, &h_plus_shift).coeffs
            })
            .collect();
        Self::new(rows)
    }

    pub fn partial_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| r.iter().map(|c| c * BigInt::from(i)).collect())
                .collect(),
        )
    }

    pub fn reduce_mod(&self, p: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|c| c.mod_floor(p)).collect())
                .collect(),
        )
    }

    /// Nonzero terms as `(coeff, x_exp, y_exp)`.
    pub fn terms(&self) -> Vec<(BigInt, usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((c.clone(), i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    /// Graded order, highest total degree first, ties broken by higher
    /// x-degree: `x^2 - y - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.1 + b.2, b.1).cmp(&(a.1 + a.2, a.1)));
        write_terms(
            f,
            terms
                .into_iter()
                .map(|(c, i, j)| (c, monomial_text(&[('x', i), ('y', j)]))),
        )
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let empty = Vec::new();
        let rows = (0..n)
            .map(|i| {
                add_vecs(
                    self.coeffs.get(i).unwrap_or(&empty),
                    rhs.coeffs.get(i).unwrap_or(&empty),
                )
            })
            .collect();
        BiPoly::new(rows)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|c| -c).collect())
                .collect(),
        )
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut rows = vec![Vec::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = mul_vecs(a, b);
                rows[i + j] = add_vecs(&rows[i + j], &prod);
            }
        }
        BiPoly::new(rows)
    }
}

fn compose_uni(outer: &UniPoly, inner: &UniPoly) -> UniPoly {
    outer
        .coeffs
        .iter()
        .rev()
        .fold(UniPoly::zero(inner.var), |acc, c| {
            &(&acc * inner) + &UniPoly::constant(c.clone(), inner.var)
        })
}

/// `outer(inner(x, y))`.
pub fn compose_uni_into_bi(outer: &UniPoly, inner: &BiPoly) -> BiPoly {
    outer.coeffs.iter().rev().fold(BiPoly::zero(), |acc, c| {
        &(&acc * inner) + &BiPoly::constant(c.clone())
    })
}

/// `t^n - 1`.
pub fn t_power_minus_one(n: u64) -> Result<UniPoly> {
    if n < 1 {
        return Err(domain("t^n - 1 needs n >= 1"));
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::one();
    Ok(UniPoly::new(coeffs, Var::T))
}

/// Sylvester matrix of `f` and `g`: `deg g` shifted rows of `f` (highest
/// coefficient first) followed by `deg f` shifted rows of `g`.
fn sylvester(f: &UniPoly, g: &UniPoly) -> Vec<Vec<BigInt>> {
    let df = f.coeffs.len() - 1;
    let dg = g.coeffs.len() - 1;
    let size = df + dg;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for r in 0..dg {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..df {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            m[dg + r][r + j] = c.clone();
        }
    }
    m
}

/// Fraction-free Gaussian elimination. Every division is exact.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn zero_or_constant_resultant(f: &UniPoly, g: &UniPoly) -> Option<Result<BigInt>> {
    match (f.degree(), g.degree()) {
        (None, None) => Some(Err(domain("resultant of two zero polynomials"))),
        (None, _) | (_, None) => Some(Ok(BigInt::zero())),
        (Some(0), Some(dg)) => Some(Ok(num_traits::pow(f.coeffs[0].clone(), dg))),
        (Some(df), Some(0)) => Some(Ok(num_traits::pow(g.coeffs[0].clone(), df))),
        _ => None,
    }
}

/// `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of `f`, as the
/// Bareiss determinant of the Sylvester matrix. A zero argument gives 0
/// unless both are zero, which is an error.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigInt> {
    if let Some(r) = zero_or_constant_resultant(f, g) {
        return r;
    }
    Ok(bareiss_determinant(sylvester(f, g)))
}

/// Same value as [`resultant`], computed by the Euclidean remainder sequence
/// over the rationals: `Res(f, g) = (-1)^(df*dg) lc(g)^(df - dr) Res(g, r)`
/// with `r = f mod g`. Linear in the larger degree when the smaller one is
/// fixed.
pub fn resultant_euclidean(f: &UniPoly, g: &UniPoly) -> Result<BigInt> {
    if let Some(r) = zero_or_constant_resultant(f, g) {
        return r;
    }
    let to_q = |p: &UniPoly| -> Vec<BigRational> {
        p.coeffs.iter().cloned().map(BigRational::from_integer).collect()
    };
    let mut a = to_q(f);
    let mut b = to_q(g);
    let mut acc = BigRational::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            acc *= num_traits::pow(b[0].clone(), da);
            break;
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let lead_b = b[db].clone();
        let mut r = a.clone();
        for shift in (0..=da - db).rev() {
            let q = &r[shift + db] / &lead_b;
            if q.is_zero() {
                continue;
            }
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &q * bc;
            }
        }
        r.truncate(db);
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            return Ok(BigInt::zero());
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(lead_b, da - dr);
        a = b;
        b = r;
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer())
}

/// [`resultant`] for small Sylvester matrices, [`resultant_euclidean`] once
/// the dimension exceeds [`BAREISS_MAX_DIM`].
pub fn resultant_auto(f: &UniPoly, g: &UniPoly) -> Result<BigInt> {
    let dim = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
    if dim <= BAREISS_MAX_DIM {
        resultant(f, g)
    } else {
        resultant_euclidean(f, g)
    }
}

/// A root of a polynomial over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootModP {
    pub root: u64,
    /// `f'(root) != 0 mod p`.
    pub simple: bool,
}

/// All roots of `f` in `F_p` by exhaustive scan, `O(p * deg f)`.
/// Errors when `f` vanishes identically mod `p` or `p` exceeds
/// [`ROOT_SCAN_CAP`].
pub fn roots_mod_p(f: &UniPoly, p: u64) -> Result<Vec<RootModP>> {
    if p > ROOT_SCAN_CAP {
        return Err(domain(format!("p = {p} exceeds the root scan cap {ROOT_SCAN_CAP}")));
    }
    if !crate::numtheory::is_prime_u64(p) {
        return Err(crate::Error::NotPrime(p.to_string()));
    }
    let pb = BigInt::from(p);
    let reduce = |g: &UniPoly| -> Vec<u64> {
        g.coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
            .collect()
    };
    let fc = reduce(f);
    if fc.iter().all(|&c| c == 0) {
        return Err(domain(format!("polynomial vanishes identically mod {p}")));
    }
    let dc = reduce(&f.derivative());
    let horner = |cs: &[u64], x: u64| -> u64 {
        cs.iter()
            .rev()
            .fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
    };
    Ok((0..p)
        .filter(|&x| horner(&fc, x) == 0)
        .map(|x| RootModP {
            root: x,
            simple: horner(&dc, x) != 0,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c, Var::T)
    }

    #[test]
    fn ring_arithmetic() {
        assert_eq!(&t(&[1, 1]) * &t(&[-1, 1]), t(&[-1, 0, 1]));
        let f = t(&[3, 0, -2]);
        assert_eq!(&f + &UniPoly::zero(Var::T), f);
        let xy = &BiPoly::x() + &BiPoly::y();
        assert_eq!(xy.pow(2), BiPoly::from_terms(&[(1, 2, 0), (2, 1, 1), (1, 0, 2)]));
        assert_eq!(&f - &f, UniPoly::zero(Var::T));
        assert!((&xy - &xy).is_zero());
        assert_eq!(f.scalar_mul(&BigInt::from(0)), UniPoly::zero(Var::T));
    }

    #[test]
    fn canonical_form() {
        let f = UniPoly::from_i64s(&[1, 2, 0, 0], Var::T);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(UniPoly::from_i64s(&[0, 0], Var::T).degree(), None);
        let g = BiPoly::new(vec![vec![BigInt::from(1), BigInt::zero()], vec![], vec![BigInt::zero()]]);
        assert_eq!(g, BiPoly::one());
    }

    #[test]
    fn display() {
        assert_eq!(t(&[1, -3, 1]).to_string(), "1 - 3*t + t^2");
        assert_eq!(t(&[-1, 3, -3, 3, -1]).to_string(), "-1 + 3*t - 3*t^2 + 3*t^3 - t^4");
        assert_eq!(UniPoly::zero(Var::T).to_string(), "0");
        let riley = BiPoly::from_terms(&[(1, 2, 0), (-1, 0, 1), (-1, 0, 0)]);
        assert_eq!(riley.to_string(), "x^2 - y - 1");
    }

    #[test]
    fn composition() {
        let z2 = UniPoly::from_i64s(&[0, 0, 1], Var::Z);
        let xy = &BiPoly::x() + &BiPoly::y();
        assert_eq!(compose_uni_into_bi(&z2, &xy), xy.pow(2));
        let z = UniPoly::var(Var::Z);
        let g = BiPoly::from_terms(&[(3, 2, 1), (-1, 0, 0)]);
        assert_eq!(compose_uni_into_bi(&z, &g), g);
        let s2 = UniPoly::from_i64s(&[-1, 0, 1], Var::Z);
        assert_eq!(
            compose_uni_into_bi(&s2, &BiPoly::constant(BigInt::from(2))),
            BiPoly::constant(BigInt::from(3))
        );
    }

    /// Product of `g` over the cube roots of unity, by reducing `g` modulo
    /// `t^3 - 1` and taking the determinant of multiplication on `Z[t]/(t^3-1)`,
    /// a circulant. Independent of the Sylvester construction.
    fn res_cube_roots(g: &[i64]) -> i64 {
        let mut c = [0i64; 3];
        for (i, a) in g.iter().enumerate() {
            c[i % 3] += a;
        }
        let [a, b, cc] = c;
        a * a * a + b * b * b + cc * cc * cc - 3 * a * b * cc
    }

    #[test]
    fn resultant_examples() {
        let g = t(&[7, -2, 5]);
        for a in -3i64..=3 {
            let lin = t(&[-a, 1]);
            assert_eq!(resultant(&lin, &g).unwrap(), g.eval(&BigInt::from(a)));
        }
        let delta = t(&[-1, 3, -1]);
        let r3 = resultant(&t_power_minus_one(3).unwrap(), &delta).unwrap();
        assert_eq!(r3, BigInt::from(res_cube_roots(&[-1, 3, -1])));
        assert_eq!(r3.abs(), BigInt::from(16));
        let six_two = t(&[-1, 3, -3, 3, -1]);
        let r5 = resultant(&t_power_minus_one(5).unwrap(), &six_two).unwrap();
        assert_eq!(r5.abs(), BigInt::from(16));
        assert!(resultant(&UniPoly::zero(Var::T), &UniPoly::zero(Var::T)).is_err());
        assert_eq!(resultant(&UniPoly::zero(Var::T), &g).unwrap(), BigInt::zero());
        assert_eq!(resultant(&t(&[2]), &g).unwrap(), BigInt::from(4));
    }

    #[test]
    fn euclidean_route_matches_bareiss() {
        let delta = t(&[16, -31, 16]);
        for n in 1..=40 {
            let f = t_power_minus_one(n).unwrap();
            assert_eq!(resultant(&f, &delta).unwrap(), resultant_euclidean(&f, &delta).unwrap());
            assert_eq!(resultant(&delta, &f).unwrap(), resultant_euclidean(&delta, &f).unwrap());
        }
    }

    #[test]
    fn reduce_mod_p_examples() {
        let p = BigInt::from(7);
        assert!(UniPoly::zero(Var::T).reduce_mod(&p).is_zero());
        assert!(t(&[14, -7, 21]).reduce_mod(&p).is_zero());
        assert_eq!(t(&[1, 6, 3]).reduce_mod(&p), t(&[1, 6, 3]));
        assert_eq!(t(&[-1, 8]).reduce_mod(&p), t(&[6, 1]));
        assert_eq!(
            BiPoly::from_terms(&[(-1, 1, 1), (7, 0, 0)]).reduce_mod(&p),
            BiPoly::from_terms(&[(6, 1, 1)])
        );
    }

    #[test]
    fn roots_mod_p_examples() {
        let x = |c: &[i64]| UniPoly::from_i64s(c, Var::X);
        let r = roots_mod_p(&x(&[-3, 0, 1]), 11).unwrap();
        assert_eq!(
            r,
            vec![RootModP { root: 5, simple: true }, RootModP { root: 6, simple: true }]
        );
        assert_eq!(
            roots_mod_p(&x(&[1, -2, 1]), 5).unwrap(),
            vec![RootModP { root: 1, simple: false }]
        );
        assert!(roots_mod_p(&x(&[1, 0, 1]), 7).unwrap().is_empty());
        assert!(roots_mod_p(&x(&[7, 14]), 7).is_err());
        assert!(roots_mod_p(&x(&[1, 1]), 1_000_003).is_err());
    }

    #[test]
    fn t_power_minus_one_examples() {
        assert_eq!(t_power_minus_one(1).unwrap(), t(&[-1, 1]));
        assert_eq!(t_power_minus_one(2).unwrap(), t(&[-1, 0, 1]));
        assert_eq!(t_power_minus_one(5).unwrap(), t(&[-1, 0, 0, 0, 0, 1]));
        assert!(t_power_minus_one(0).is_err());
    }

    #[test]
    fn specialize_and_shift() {
        let f = BiPoly::from_terms(&[(1, 2, 0), (-1, 0, 1), (-1, 0, 0)]);
        assert_eq!(f.specialize_y(&BigInt::from(2)), UniPoly::from_i64s(&[-3, 0, 1], Var::X));
        let shifted = f.shift_y(&BigInt::from(2));
        assert_eq!(shifted, BiPoly::from_terms(&[(1, 2, 0), (-1, 0, 1), (-3, 0, 0)]));
        assert_eq!(f.partial_x(), BiPoly::from_terms(&[(2, 1, 0)]));
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-100i64..=100, 1..=9)
            .prop_map(|c| UniPoly::from_i64s(&c, Var::T))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn resultant_antisymmetry(f in small_poly(), g in small_poly()) {
            let df = f.degree().unwrap();
            let dg = g.degree().unwrap();
            let sign = if (df * dg) % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(resultant(&f, &g).unwrap(), resultant(&g, &f).unwrap() * sign);
        }

        #[test]
        fn resultant_multiplicative(f in small_poly(), g in small_poly(), h in small_poly()) {
            let lhs = resultant(&f, &(&g * &h)).unwrap();
            prop_assert_eq!(lhs, resultant(&f, &g).unwrap() * resultant(&f, &h).unwrap());
        }

        #[test]
        fn resultant_routes_agree(f in small_poly(), g in small_poly()) {
            prop_assert_eq!(resultant(&f, &g).unwrap(), resultant_euclidean(&f, &g).unwrap());
        }

        #[test]
        fn roots_are_exactly_the_zeros(c in prop::collection::vec(-50i64..50, 2..6), pi in 0usize..25) {
            let p = crate::numtheory::primes_up_to(100)[pi];
            let f = UniPoly::from_i64s(&c, Var::X);
            prop_assume!(!f.reduce_mod(&BigInt::from(p)).is_zero());
            let roots = roots_mod_p(&f, p).unwrap();
            let pb = BigInt::from(p);
            for x in 0..p {
                let vanishes = f.eval_mod(&BigInt::from(x), &pb).is_zero();
                prop_assert_eq!(vanishes, roots.iter().any(|r| r.root == x));
            }
            for r in roots {
                let d = f.derivative().eval_mod(&BigInt::from(r.root), &pb);
                prop_assert_eq!(r.simple, !d.is_zero());
            }
        }
    }
}
