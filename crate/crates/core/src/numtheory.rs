//! Integer number theory: primality, factorization, Legendre/Jacobi symbols,
//! square roots modulo a prime and square-free parts.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};

/// Trial division never goes past this bound, whatever the budget says.
pub const TRIAL_DIVISION_CAP: u64 = 1_000_000;

/// Bases for Miller-Rabin above 2^64. The first twelve are a deterministic
/// set below 3.3e24; the remaining eight make the test probabilistic beyond.
const MR_BASES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Effort limits for [`factorize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division bound, clamped to [`TRIAL_DIVISION_CAP`].
    pub trial_limit: u64,
    /// Total Pollard-Brent iterations allowed per composite cofactor.
    pub rho_iterations: u64,
    /// Seed for the rho polynomial constants and starting points.
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            trial_limit: TRIAL_DIVISION_CAP,
            rho_iterations: 1 << 22,
            seed: 0x6c69_6d69_6e61_6c00,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub base: BigInt,
    pub exponent: u32,
    /// False for a composite cofactor the budget could not split.
    pub is_prime: bool,
}

/// `sign * prod(base^exponent)`, bases strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<Factor>,
    pub complete: bool,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for f in &self.factors {
            v *= num_traits::pow(f.base.clone(), f.exponent as usize);
        }
        v
    }

    /// Proven prime factors (composite pseudo-factors are skipped).
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|f| f.is_prime).map(|f| &f.base)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|f| &f.base == p)
            .map_or(0, |f| f.exponent)
    }

    /// Composite cofactors left unsplit.
    pub fn composites(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|f| !f.is_prime).map(|f| &f.base)
    }
}

impl fmt::Display for Factorization {
    /// `2^4 * 3^2 * 7`, with a leading `-1 * ` for negatives and `c` appended
    /// to unsplit composites.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.sign);
        }
        if self.sign < 0 {
            write!(f, "-1 * ")?;
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{}", fac.base)?;
            if !fac.is_prime {
                write!(f, "c")?;
            }
            if fac.exponent > 1 {
                write!(f, "^{}", fac.exponent)?;
            }
        }
        Ok(())
    }
}

fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_DIVISION_CAP))
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit <= TRIAL_DIVISION_CAP {
        let ps = small_primes();
        let end = ps.partition_point(|&p| p <= limit);
        ps[..end].to_vec()
    } else {
        sieve(limit)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES[..12] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES[..12] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality. Exact for `n < 2^64`; above that a strong probable-prime test
/// to the twenty prime bases 2..=71 (deterministic below 3.3e24).
/// Integers below 2 are not prime.
pub fn is_prime(n: &BigInt) -> bool {
    match n.sign() {
        Sign::Plus => is_prime_biguint(n.magnitude()),
        _ => false,
    }
}

fn integer_sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn random_below(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    let bits = n.bits();
    let words = bits.div_ceil(32) as usize + 1;
    let digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    BigUint::from_slice(&digits) % n
}

/// Pollard-Brent with batched gcds. Returns a proper divisor or `None` once
/// `budget` iterations are spent.
fn pollard_brent(n: &BigUint, budget: u64, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let mut spent = 0u64;
    while spent < budget {
        let c = random_below(rng, n).max(one.clone());
        let step = |v: &BigUint| (v * v + &c) % n;
        let mut y = random_below(rng, n);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g == one && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
        }
        if g == *n {
            // The batch overshot; replay it one step at a time.
            g = one.clone();
            for _ in 0..r {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
    }
    None
}

/// Factor a nonzero integer: trial division up to `budget.trial_limit`, then
/// perfect-square detection and Pollard-Brent. Cofactors that survive the rho
/// budget are kept as composite pseudo-factors and `complete` is cleared.
pub fn factorize(n: &BigInt, budget: &FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(domain("cannot factor 0"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.magnitude().clone();
    let mut found: BTreeMap<BigUint, (u32, bool)> = BTreeMap::new();

    let limit = budget.trial_limit.min(TRIAL_DIVISION_CAP);
    let mut proven_below: u64 = 1;
    for &p in small_primes() {
        if p > limit {
            break;
        }
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                proven_below = u64::MAX;
                break;
            }
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.insert(BigUint::from(p), (e, true));
        }
        proven_below = p;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut stack = vec![rest];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        let below_square = proven_below == u64::MAX
            || c < BigUint::from(proven_below) * BigUint::from(proven_below);
        if below_square || is_prime_biguint(&c) {
            found.entry(c).or_insert((0, true)).0 += 1;
        } else if let Some(r) = integer_sqrt_exact(&c) {
            stack.push(r.clone());
            stack.push(r);
        } else if let Some(d) = pollard_brent(&c, budget.rho_iterations, &mut rng) {
            stack.push(&c / &d);
            stack.push(d);
        } else {
            found.entry(c).or_insert((0, false)).0 += 1;
        }
    }

    let factors: Vec<Factor> = found
        .into_iter()
        .map(|(base, (exponent, is_prime))| Factor {
            base: BigInt::from(base),
            exponent,
            is_prime,
        })
        .collect();
    let complete = factors.iter().all(|f| f.is_prime);
    Ok(Factorization {
        sign,
        factors,
        complete,
    })
}

/// `a / b^2` for the largest `b` with `b^2 | a`. The sign of `a` is kept.
pub fn square_free_part(a: &BigInt) -> Result<BigInt> {
    if a.is_zero() {
        return Err(domain("square-free part of 0 is undefined"));
    }
    let fact = factorize(a, &FactorBudget::default())?;
    if let Some(c) = fact.composites().next() {
        return Err(Error::FactoringBudget(c.to_string()));
    }
    let mut r = BigInt::from(fact.sign);
    for f in fact.factors.iter().filter(|f| f.exponent % 2 == 1) {
        r *= &f.base;
    }
    Ok(r)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(domain(format!("Jacobi symbol needs odd positive modulus, got {n}")));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i8;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let four = BigInt::from(4);
    let eight = BigInt::from(8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

fn require_odd_prime(p: &BigInt) -> Result<()> {
    if p.is_even() || !is_prime(p) {
        return Err(Error::NotPrime(format!("{p} (odd prime required)")));
    }
    Ok(())
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Jacobi reciprocity.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i8> {
    require_odd_prime(p)?;
    jacobi(a, p)
}

/// A square root of `a` modulo the prime `p` by Tonelli-Shanks, or `None`
/// for a non-residue. The root returned is the one in `[0, p/2]`.
pub fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> Result<Option<BigInt>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Ok(Some(a));
    }
    if *p == BigInt::from(2) {
        return Ok(Some(a));
    }
    if jacobi(&a, p)? != 1 {
        return Ok(None);
    }
    let one = BigInt::one();
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    let mut root = if s == 1 {
        a.modpow(&((p + &one) >> 2), p)
    } else {
        let mut z = BigInt::from(2);
        while jacobi(&z, p)? != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + &one) >> 1), p);
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = (&t2 * &t2) % p;
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = (&b * &b) % p;
            }
            r = (r * &b) % p;
            c = (&b * &b) % p;
            t = (t * &c) % p;
            m = i;
        }
        r
    };
    let other = p - &root;
    if other < root {
        root = other;
    }
    Ok(Some(root))
}

/// Exponent of `p` in `n` (`n != 0`, `p >= 2`).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
