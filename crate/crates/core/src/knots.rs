//! Knot constructions: Chebyshev polynomials, Alexander polynomials, the
//! trace `z = tr w` and Riley polynomials of double twist knots `J(2k, 2l)`,
//! and for a general two-bridge knot `b(alpha, beta)` the Riley polynomial
//! from a symbolic matrix product together with its Fox-calculus Alexander
//! polynomial.
//!
//! Trace coordinates are `x = tr a` and `y = tr ab^{-1}`; reducible
//! characters sit on `y = 2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::poly::{compose_uni_into_bi, BiPoly, UniPoly, Var};

/// The double twist knot `J(2k, 2l)`; every genus one two-bridge knot has
/// this form. `J(2,2)` is the trefoil, `J(2,-2)` the figure-eight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DoubleTwistKnot {
    k: i64,
    l: i64,
}

impl DoubleTwistKnot {
    pub fn new(k: i64, l: i64) -> Result<Self> {
        if k == 0 && l == 0 {
            return Err(domain("J(0,0) is excluded"));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    /// `m = kl`, the parameter of the Alexander polynomial.
    pub fn m(&self) -> i64 {
        self.k * self.l
    }
}

impl fmt::Display for DoubleTwistKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", 2 * self.k, 2 * self.l)
    }
}

/// Chebyshev polynomial of the second kind in `z`:
/// `S_{-1} = 0`, `S_0 = 1`, `S_{n+1} = z S_n - S_{n-1}` for all integers `n`.
pub fn chebyshev_s(n: i64) -> UniPoly {
    if n == -1 {
        return UniPoly::zero(Var::Z);
    }
    if n < -1 {
        return -chebyshev_s(-2 - n);
    }
    let z = UniPoly::var(Var::Z);
    let mut prev = UniPoly::zero(Var::Z);
    let mut cur = UniPoly::one(Var::Z);
    for _ in 0..n {
        let next = &(&z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn chebyshev_s_in_y(n: i64) -> BiPoly {
    BiPoly::from_uni_in_y(&chebyshev_s(n))
}

/// `kl t^2 + (1 - 2kl) t + kl`.
pub fn alexander_double_twist(knot: &DoubleTwistKnot) -> UniPoly {
    let m = knot.m();
    UniPoly::from_i64s(&[m, 1 - 2 * m, m], Var::T)
}

/// `-x^2 + y + 2`.
fn trace_factor() -> BiPoly {
    BiPoly::from_terms(&[(-1, 2, 0), (1, 0, 1), (2, 0, 0)])
}

/// `z = tr w = 2 + (y - 2)(-x^2 + y + 2) S_{k-1}(y)^2`.
pub fn trace_z(k: i64) -> BiPoly {
    let y_minus_2 = BiPoly::from_terms(&[(1, 0, 1), (-2, 0, 0)]);
    let s = chebyshev_s_in_y(k - 1);
    &BiPoly::constant(BigInt::from(2)) + &(&(&y_minus_2 * &trace_factor()) * &(&s * &s))
}

/// Riley polynomial of `J(2k, 2l)`:
/// `S_l(z) - (1 + (-x^2 + y + 2) S_{k-1}(y) (S_k(y) - S_{k-1}(y))) S_{l-1}(z)`.
pub fn riley_polynomial(knot: &DoubleTwistKnot) -> BiPoly {
    let (k, l) = (knot.k, knot.l);
    let z = trace_z(k);
    let s_l = compose_uni_into_bi(&chebyshev_s(l), &z);
    let s_l1 = compose_uni_into_bi(&chebyshev_s(l - 1), &z);
    let sk1 = chebyshev_s_in_y(k - 1);
    let diff = &chebyshev_s_in_y(k) - &sk1;
    let bracket = &BiPoly::one() + &(&(&trace_factor() * &sk1) * &diff);
    &s_l - &(&bracket * &s_l1)
}

/// `x^2` at the points where the Riley curve meets `y = 2`, as the reduced
/// fraction `(4kl - 1) / kl` with a positive denominator.
pub fn intersection_x_squared(knot: &DoubleTwistKnot) -> Result<(BigInt, BigInt)> {
    let m = knot.m();
    if m == 0 {
        return Err(domain(format!("{knot} has kl = 0")));
    }
    let (mut num, mut den) = (BigInt::from(4 * m - 1), BigInt::from(m));
    let g = num.gcd(&den);
    num /= &g;
    den /= &g;
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok((num, den))
}

/// Two-bridge knot `b(alpha, beta)`: `alpha` odd and at least 3,
/// `0 < beta < alpha`, `gcd(alpha, beta) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoBridgeKnot {
    alpha: u64,
    beta: u64,
}

impl TwoBridgeKnot {
    pub fn new(alpha: u64, beta: u64) -> Result<Self> {
        if alpha < 3 || alpha % 2 == 0 {
            return Err(domain(format!("alpha = {alpha} must be odd and >= 3")));
        }
        if beta == 0 || beta >= alpha || alpha.gcd(&beta) != 1 {
            return Err(domain(format!(
                "beta = {beta} must lie in (0, {alpha}) and be coprime to it"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({},{})", self.alpha, self.beta)
    }
}

/// `eps_i = (-1)^floor(i * beta / alpha)` for `i = 1..alpha-1`.
///
/// An even `beta` is replaced by the odd `beta + alpha`, which presents the
/// same knot and keeps the sequence palindromic.
pub fn word_signs(knot: &TwoBridgeKnot) -> Vec<i8> {
    let beta = if knot.beta % 2 == 0 {
        knot.beta + knot.alpha
    } else {
        knot.beta
    };
    (1..knot.alpha)
        .map(|i| if (i * beta / knot.alpha) % 2 == 0 { 1 } else { -1 })
        .collect()
}

/// `u + v*s` in `Z[x, y][s] / (s^2 - x s + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QuadElem {
    u: BiPoly,
    v: BiPoly,
}

impl QuadElem {
    fn scalar(u: BiPoly) -> Self {
        Self { u, v: BiPoly::zero() }
    }

    fn zero() -> Self {
        Self::scalar(BiPoly::zero())
    }

    fn s() -> Self {
        Self {
            u: BiPoly::zero(),
            v: BiPoly::one(),
        }
    }

    /// `s^{-1} = x - s`.
    fn s_inv() -> Self {
        Self {
            u: BiPoly::x(),
            v: -BiPoly::one(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        Self {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let vv = &self.v * &rhs.v;
        Self {
            u: &(&self.u * &rhs.u) - &vv,
            v: &(&(&self.u * &rhs.v) + &(&self.v * &rhs.u)) + &(&BiPoly::x() * &vv),
        }
    }
}

type SymbolicMatrix = [[QuadElem; 2]; 2];

fn mat_mul(a: &SymbolicMatrix, b: &SymbolicMatrix) -> SymbolicMatrix {
    let entry = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// Riley's representation: `a -> [[s, 1], [0, 1/s]]`,
/// `b -> [[s, 0], [2 - y, 1/s]]`, and their inverses.
fn riley_generator(is_a: bool, sign: i8) -> SymbolicMatrix {
    let one = QuadElem::scalar(BiPoly::one());
    let two_minus_y = QuadElem::scalar(BiPoly::from_terms(&[(2, 0, 0), (-1, 0, 1)]));
    let zero = QuadElem::zero();
    match (is_a, sign > 0) {
        (true, true) => [[QuadElem::s(), one], [zero.clone(), QuadElem::s_inv()]],
        (true, false) => [
            [QuadElem::s_inv(), zero.sub(&one)],
            [zero, QuadElem::s()],
        ],
        (false, true) => [[QuadElem::s(), zero], [two_minus_y, QuadElem::s_inv()]],
        (false, false) => [
            [QuadElem::s_inv(), zero.clone()],
            [zero.sub(&two_minus_y), QuadElem::s()],
        ],
    }
}

/// Riley polynomial of `b(alpha, beta)` in `x = tr a`, `y = tr ab^{-1}`.
///
/// With `W` the image of `w = a^{e_1} b^{e_2} a^{e_3} ...`, the relation
/// `wa = bw` reduces to the vanishing of `W_11 + (1/s - s) W_12`. That entry
/// is symmetric under `s <-> 1/s`, so its `s`-part must cancel; a residue
/// there means a convention bug and is reported as a construction error.
pub fn riley_polynomial_general(knot: &TwoBridgeKnot) -> Result<BiPoly> {
    let identity = [
        [QuadElem::scalar(BiPoly::one()), QuadElem::zero()],
        [QuadElem::zero(), QuadElem::scalar(BiPoly::one())],
    ];
    let w = word_signs(knot)
        .iter()
        .enumerate()
        .fold(identity, |acc, (i, &e)| mat_mul(&acc, &riley_generator(i % 2 == 0, e)));
    let entry = w[0][0].add(&QuadElem::s_inv().sub(&QuadElem::s()).mul(&w[0][1]));
    if !entry.v.is_zero() {
        return Err(Error::Construction(format!(
            "Riley polynomial of {knot} kept s-dependence {}",
            entry.v
        )));
    }
    Ok(entry.u)
}

/// Positive leading coefficient, nonzero constant term.
pub fn normalize_alexander(delta: &UniPoly) -> UniPoly {
    let stripped = delta.strip_var_power().with_var(Var::T);
    if stripped.leading().is_some_and(Signed::is_negative) {
        -stripped
    } else {
        stripped
    }
}

/// Alexander polynomial of `b(alpha, beta)` by Fox calculus on
/// `<a, b | w a w^{-1} b^{-1}>`, abelianized by `a, b -> t`:
/// `d(r)/da = (1 - t) dw/da + t^{e_1 + ... + e_{alpha-1}}`.
pub fn fox_alexander(knot: &TwoBridgeKnot) -> Result<UniPoly> {
    let signs = word_signs(knot);
    let mut laurent: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut add = |exp: i64, c: i64| *laurent.entry(exp).or_default() += c;

    let mut prefix = 0i64;
    let mut dw: Vec<(i64, i64)> = Vec::new();
    for (i, &e) in signs.iter().enumerate() {
        if i % 2 == 0 {
            if e > 0 {
                dw.push((prefix, 1));
            } else {
                dw.push((prefix - 1, -1));
            }
        }
        prefix += i64::from(e);
    }
    for (exp, c) in dw {
        add(exp, c);
        add(exp + 1, -c);
    }
    add(prefix, 1);

    let low = laurent
        .iter()
        .find(|(_, c)| !c.is_zero())
        .map(|(&e, _)| e)
        .ok_or_else(|| Error::Construction(format!("Fox derivative of {knot} vanished")))?;
    let high = *laurent.keys().next_back().expect("nonempty");
    let mut coeffs = vec![BigInt::zero(); (high - low) as usize + 1];
    for (e, c) in laurent {
        if e >= low {
            coeffs[(e - low) as usize] += c;
        }
    }
    let delta = normalize_alexander(&UniPoly::new(coeffs, Var::T));
    if !delta.eval(&BigInt::one()).abs().is_one() {
        return Err(Error::Construction(format!(
            "Alexander polynomial of {knot} has |Delta(1)| != 1"
        )));
    }
    Ok(delta)
}

/// Knots referred to by name on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedKnot {
    SixTwo,
    SixThree,
}

impl NamedKnot {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "6_2" => Some(Self::SixTwo),
            "6_3" => Some(Self::SixThree),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SixTwo => "6_2",
            Self::SixThree => "6_3",
        }
    }

    /// Normalized Alexander polynomial.
    pub fn alexander(&self) -> UniPoly {
        match self {
            Self::SixTwo => UniPoly::from_i64s(&[1, -3, 3, -3, 1], Var::T),
            Self::SixThree => UniPoly::from_i64s(&[1, -3, 5, -3, 1], Var::T),
        }
    }

    pub fn resolve(&self) -> Result<TwoBridgeKnot> {
        resolve_by_alexander(&self.alexander(), AUTO_ALPHA_MAX)
    }
}

/// Search bound on `alpha` for [`resolve_by_alexander`].
pub const AUTO_ALPHA_MAX: u64 = 15;

/// `beta` up to inversion and mirroring mod `alpha`: the smallest of
/// `beta`, `-beta`, `1/beta`, `-1/beta`.
fn canonical_beta(alpha: u64, beta: u64) -> u64 {
    let a = BigInt::from(alpha);
    let inv = crate::numtheory::mod_inverse(&BigInt::from(beta), &a)
        .and_then(|v| u64::try_from(v).ok())
        .expect("beta is coprime to alpha");
    [beta, alpha - beta, inv, alpha - inv]
        .into_iter()
        .min()
        .expect("nonempty")
}

/// The two-bridge knot with `alpha <= alpha_max` whose Fox-calculus
/// Alexander polynomial equals `delta` up to units. Matches related by
/// `beta -> -beta` or `beta -> 1/beta` are one knot up to mirror image and
/// resolve to the smallest `beta`; matches spanning two distinct knots, or
/// none at all, are errors.
pub fn resolve_by_alexander(delta: &UniPoly, alpha_max: u64) -> Result<TwoBridgeKnot> {
    let target = normalize_alexander(delta);
    let mut classes: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for alpha in (3..=alpha_max).step_by(2) {
        for beta in 1..alpha {
            let Ok(knot) = TwoBridgeKnot::new(alpha, beta) else {
                continue;
            };
            if fox_alexander(&knot)? == target {
                let class = (alpha, canonical_beta(alpha, beta));
                let best = classes.entry(class).or_insert(beta);
                *best = (*best).min(beta);
            }
        }
    }
    match classes.len() {
        0 => Err(domain(format!(
            "no two-bridge knot with alpha <= {alpha_max} has Alexander polynomial {target}"
        ))),
        1 => {
            let ((alpha, _), beta) = classes.into_iter().next().expect("one class");
            TwoBridgeKnot::new(alpha, beta)
        }
        _ => Err(domain(format!(
            "Alexander polynomial {target} matches several knots: {:?}",
            classes.keys().collect::<Vec<_>>()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(k: i64, l: i64) -> DoubleTwistKnot {
        DoubleTwistKnot::new(k, l).unwrap()
    }

    fn z(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c, Var::Z)
    }

    #[test]
    fn chebyshev_examples() {
        assert!(chebyshev_s(-1).is_zero());
        assert_eq!(chebyshev_s(0), z(&[1]));
        assert_eq!(chebyshev_s(2), z(&[-1, 0, 1]));
        assert_eq!(chebyshev_s(3).eval(&BigInt::from(2)), BigInt::from(4));
        assert_eq!(chebyshev_s(-2), z(&[-1]));
    }

    #[test]
    fn chebyshev_identities() {
        for n in 0..=40 {
            assert_eq!(chebyshev_s(n).eval(&BigInt::from(2)), BigInt::from(n + 1));
        }
        for n in -20..=20 {
            assert_eq!(chebyshev_s(-1 - n), -chebyshev_s(n - 1));
        }
        let zz = UniPoly::var(Var::Z);
        for n in -10..=10 {
            assert_eq!(chebyshev_s(n + 1), &(&zz * &chebyshev_s(n)) - &chebyshev_s(n - 1));
        }
    }

    #[test]
    fn chebyshev_recurrence_through_composition() {
        let g = BiPoly::from_terms(&[(1, 1, 1), (-2, 0, 1), (3, 0, 0)]);
        for n in -6..=8 {
            let lhs = compose_uni_into_bi(&chebyshev_s(n + 1), &g);
            let rhs = &(&g * &compose_uni_into_bi(&chebyshev_s(n), &g))
                - &compose_uni_into_bi(&chebyshev_s(n - 1), &g);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn alexander_examples() {
        let t = |c: &[i64]| UniPoly::from_i64s(c, Var::T);
        assert_eq!(alexander_double_twist(&knot(1, 1)), t(&[1, -1, 1]));
        assert_eq!(alexander_double_twist(&knot(1, -1)), t(&[-1, 3, -1]));
        assert_eq!(alexander_double_twist(&knot(1, 0)), t(&[0, 1]));
        assert!(DoubleTwistKnot::new(0, 0).is_err());
        assert_eq!(knot(1, -3).to_string(), "J(2,-6)");
    }

    #[test]
    fn trace_z_examples() {
        assert_eq!(trace_z(0), BiPoly::constant(BigInt::from(2)));
        let expected = &BiPoly::constant(BigInt::from(2))
            + &(&BiPoly::from_terms(&[(1, 0, 1), (-2, 0, 0)]) * &trace_factor());
        assert_eq!(trace_z(1), expected);
        assert_eq!(trace_z(-1), trace_z(1));
    }

    #[test]
    fn riley_examples() {
        let trefoil = BiPoly::from_terms(&[(1, 2, 0), (-1, 0, 1), (-1, 0, 0)]);
        assert_eq!(riley_polynomial(&knot(1, 1)), trefoil);
        let y_minus_1 = BiPoly::from_terms(&[(1, 0, 1), (-1, 0, 0)]);
        let figure_eight = &BiPoly::one() + &(&y_minus_1 * &trace_factor());
        assert_eq!(riley_polynomial(&knot(1, -1)), figure_eight);
    }

    #[test]
    fn riley_specialization_identity() {
        for k in -4i64..=4 {
            for l in -4i64..=4 {
                if k * l == 0 {
                    continue;
                }
                let f2 = riley_polynomial(&knot(k, l)).specialize_y(&BigInt::from(2));
                let m = k * l;
                let expected = UniPoly::from_i64s(&[1 - 4 * m, 0, m], Var::X);
                assert_eq!(f2, expected, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let b = |n: i64, d: i64| (BigInt::from(n), BigInt::from(d));
        assert_eq!(intersection_x_squared(&knot(1, 1)).unwrap(), b(3, 1));
        assert_eq!(intersection_x_squared(&knot(1, -1)).unwrap(), b(5, 1));
        assert_eq!(intersection_x_squared(&knot(1, 2)).unwrap(), b(7, 2));
        assert_eq!(intersection_x_squared(&knot(-2, 1)).unwrap(), b(9, 2));
        assert!(intersection_x_squared(&knot(0, 3)).is_err());
    }

    #[test]
    fn intersection_is_root_of_specialization() {
        for k in -3i64..=3 {
            for l in -3i64..=3 {
                if k * l == 0 {
                    continue;
                }
                let (num, den) = intersection_x_squared(&knot(k, l)).unwrap();
                // kl * x^2 + 1 - 4kl at x^2 = num/den, scaled by den.
                let m = BigInt::from(k * l);
                let scaled = &m * &num + (BigInt::one() - BigInt::from(4) * &m) * &den;
                assert!(scaled.is_zero());
            }
        }
    }

    #[test]
    fn word_sign_examples() {
        assert_eq!(word_signs(&TwoBridgeKnot::new(3, 1).unwrap()), vec![1, 1]);
        assert_eq!(word_signs(&TwoBridgeKnot::new(5, 3).unwrap()), vec![1, -1, -1, 1]);
        for alpha in (3u64..=25).step_by(2) {
            for beta in 1..alpha {
                let Ok(k) = TwoBridgeKnot::new(alpha, beta) else { continue };
                let e = word_signs(&k);
                assert_eq!(e.len() as u64, alpha - 1);
                let mut rev = e.clone();
                rev.reverse();
                assert_eq!(e, rev, "{k}");
            }
        }
        assert!(TwoBridgeKnot::new(4, 1).is_err());
        assert!(TwoBridgeKnot::new(9, 3).is_err());
        assert!(TwoBridgeKnot::new(5, 5).is_err());
    }

    #[test]
    fn general_riley_matches_double_twist() {
        let trefoil = riley_polynomial_general(&TwoBridgeKnot::new(3, 1).unwrap()).unwrap();
        let expected = riley_polynomial(&knot(1, 1));
        assert!(trefoil == expected || trefoil == -&expected);
        assert_eq!(
            trefoil.specialize_y(&BigInt::from(2)),
            UniPoly::from_i64s(&[-3, 0, 1], Var::X)
        );
        let fig8 = riley_polynomial_general(&TwoBridgeKnot::new(5, 3).unwrap()).unwrap();
        let expected = riley_polynomial(&knot(1, -1));
        assert!(fig8 == expected || fig8 == -&expected, "{fig8}");
    }

    #[test]
    fn general_riley_constructs_for_small_knots() {
        for alpha in (3u64..=15).step_by(2) {
            for beta in 1..alpha {
                if let Ok(k) = TwoBridgeKnot::new(alpha, beta) {
                    riley_polynomial_general(&k).unwrap();
                }
            }
        }
    }

    #[test]
    fn fox_examples() {
        let t = |c: &[i64]| UniPoly::from_i64s(c, Var::T);
        assert_eq!(fox_alexander(&TwoBridgeKnot::new(3, 1).unwrap()).unwrap(), t(&[1, -1, 1]));
        assert_eq!(fox_alexander(&TwoBridgeKnot::new(5, 3).unwrap()).unwrap(), t(&[1, -3, 1]));
        for alpha in (3u64..=21).step_by(2) {
            for beta in 1..alpha {
                if let Ok(k) = TwoBridgeKnot::new(alpha, beta) {
                    let d = fox_alexander(&k).unwrap();
                    assert!(d.eval(&BigInt::one()).abs().is_one());
                    // Determinant of a two-bridge knot is alpha.
                    assert_eq!(d.eval(&BigInt::from(-1)).abs(), BigInt::from(alpha));
                }
            }
        }
    }

    #[test]
    fn fox_matches_double_twist_for_twist_knots() {
        // J(2, 2l) is the two-bridge knot b(4l - 1, ...) for l > 0 and
        // b(1 - 4l, ...) for l < 0; match Alexander polynomials by search.
        for l in [1i64, -1, 2, -2, 3] {
            let delta = alexander_double_twist(&knot(1, l));
            let found = resolve_by_alexander(&delta, 15).unwrap();
            assert_eq!(found.alpha() as i64, (4 * l - 1).abs());
        }
    }

    #[test]
    fn named_knots_resolve() {
        let six_two = NamedKnot::SixTwo.resolve().unwrap();
        assert_eq!(six_two.alpha(), 11);
        assert_eq!(fox_alexander(&six_two).unwrap(), NamedKnot::SixTwo.alexander());
        let six_three = NamedKnot::SixThree.resolve().unwrap();
        assert_eq!(six_three.alpha(), 13);
        let unknown = UniPoly::from_i64s(&[1, -7, 1], Var::T);
        assert!(resolve_by_alexander(&unknown, 15).is_err());
    }
}
