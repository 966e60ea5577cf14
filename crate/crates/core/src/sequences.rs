//! Lucas and Fibonacci-type sequences of `t^2 - t + m`.
//!
//! With `a + b = 1`, `ab = m`, `L_n = a^n + b^n` and `F_n = (a^n - b^n)/(a - b)`.
//! Both satisfy `X_{n+2} = X_{n+1} - m X_n`, with `L_0 = 2, L_1 = 1` and
//! `F_0 = 0, F_1 = 1`. Odd prime divisors `p` of `L_{2n+1}` all have
//! `((4m^2 - m)/p) = 1`, and `8 | L_{2n+1}` forces `4m^2 - m = 1 mod 8`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::numtheory::{factorize, is_prime, legendre, square_free_part, FactorBudget, Factorization};

fn recurrence(m: i64, first: BigInt, second: BigInt, len: usize) -> Vec<BigInt> {
    let m = BigInt::from(m);
    let mut out = Vec::with_capacity(len);
    let (mut a, mut b) = (first, second);
    for _ in 0..len {
        let next = &b - &m * &a;
        out.push(std::mem::replace(&mut a, std::mem::replace(&mut b, next)));
    }
    out
}

/// `L_0, ..., L_{n_max}`.
pub fn lucas_sequence(m: i64, n_max: u64) -> Vec<BigInt> {
    recurrence(m, BigInt::from(2), BigInt::one(), n_max as usize + 1)
}

/// `F_0, ..., F_{n_max}`.
pub fn fib_sequence(m: i64, n_max: u64) -> Vec<BigInt> {
    recurrence(m, BigInt::zero(), BigInt::one(), n_max as usize + 1)
}

pub fn lucas_l(m: i64, n: u64) -> BigInt {
    lucas_sequence(m, n).pop().expect("nonempty")
}

pub fn fib_f(m: i64, n: u64) -> BigInt {
    fib_sequence(m, n).pop().expect("nonempty")
}

/// `L_n^2 + (4m - 1) F_n^2 == 4 m^n`.
pub fn star_identity_holds(m: i64, n: u64) -> bool {
    let l = lucas_l(m, n);
    let f = fib_f(m, n);
    let mb = BigInt::from(m);
    let lhs = &l * &l + (BigInt::from(4) * &mb - 1) * &f * &f;
    lhs == BigInt::from(4) * num_traits::pow(mb, n as usize)
}

/// `L_n mod 8` as a preperiod followed by a repeating block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mod8Row {
    pub preperiod: Vec<u8>,
    pub period: Vec<u8>,
}

impl Mod8Row {
    pub fn get(&self, n: u64) -> u8 {
        let n = n as usize;
        if n < self.preperiod.len() {
            self.preperiod[n]
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }
}

/// Eventually periodic description of `L_n mod 8`, found at the first
/// repeated state `(L_n, L_{n+1}) mod 8`.
pub fn mod8_row(m: i64) -> Mod8Row {
    let m8 = m.rem_euclid(8) as u8;
    let mut seen = [[None::<usize>; 8]; 8];
    let mut values = Vec::new();
    let (mut a, mut b) = (2u8, 1u8);
    loop {
        if let Some(start) = seen[a as usize][b as usize] {
            let period = values.split_off(start);
            return Mod8Row { preperiod: values, period };
        }
        seen[a as usize][b as usize] = Some(values.len());
        values.push(a);
        let next = (b + 8 * 8 - m8 * a) % 8;
        (a, b) = (b, next);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem5Violation {
    /// An odd prime divisor with `((4m^2 - m)/p) != 1`.
    Symbol { index: u64, p: BigInt, symbol: i8 },
    /// `8 | L_index` while `4m^2 - m != 1 mod 8`.
    Mod8 { index: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem5Row {
    pub index: u64,
    pub value: BigInt,
    /// `None` when the value is zero.
    pub factorization: Option<Factorization>,
    /// Odd prime divisors `<= p_max` that were tested.
    pub checked: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem5Report {
    pub m: i64,
    pub rows: Vec<Theorem5Row>,
    pub violations: Vec<Theorem5Violation>,
    /// Prime divisors above `p_max`, counted but not tested.
    pub skipped_large: usize,
    /// Some value was not fully factored within budget.
    pub partial: bool,
}

/// Check the divisor constraint on `L_i` for every odd `i <= max_index`.
pub fn theorem5_verify(
    m: i64,
    max_index: u64,
    p_max: u64,
    budget: &FactorBudget,
) -> Result<Theorem5Report> {
    let d = BigInt::from(4 * m * m - m);
    let r = if d.is_zero() { BigInt::zero() } else { square_free_part(&d)? };
    let mod8_ok = d.mod_floor(&BigInt::from(8)).is_one();
    let seq = lucas_sequence(m, max_index);
    let mut report = Theorem5Report {
        m,
        rows: Vec::new(),
        violations: Vec::new(),
        skipped_large: 0,
        partial: false,
    };
    for index in (1..=max_index).step_by(2) {
        let value = seq[index as usize].clone();
        let mut row = Theorem5Row {
            index,
            value: value.clone(),
            factorization: None,
            checked: Vec::new(),
        };
        if value.is_zero() {
            report.rows.push(row);
            continue;
        }
        let fact = factorize(&value, budget)?;
        report.partial |= !fact.complete;
        for p in fact.primes() {
            if p == &BigInt::from(2) {
                continue;
            }
            if p > &BigInt::from(p_max) {
                report.skipped_large += 1;
                continue;
            }
            let symbol = legendre(&r, p)?;
            if symbol != 1 {
                report.violations.push(Theorem5Violation::Symbol {
                    index,
                    p: p.clone(),
                    symbol,
                });
            }
            row.checked.push(p.clone());
        }
        if (&value % BigInt::from(8)).is_zero() && !mod8_ok {
            report.violations.push(Theorem5Violation::Mod8 { index });
        }
        row.factorization = Some(fact);
        report.rows.push(row);
    }
    Ok(report)
}

/// Values of `L_n` as printed in a widely reproduced table, written as
/// products of prime powers. A few entries are misprinted; they are kept
/// verbatim so that disagreements can be flagged.
pub const PRINTED_LUCAS: &[(i64, u64, &str)] = &[
    (-1, 1, "1"),
    (-1, 2, "3"),
    (-1, 3, "2^2"),
    (-1, 4, "7"),
    (-1, 5, "11"),
    (-1, 6, "2*3^2"),
    (-1, 7, "29"),
    (-1, 8, "47"),
    (-1, 9, "2^2*19"),
    (-1, 10, "3*41"),
    (-1, 11, "199"),
    (-1, 12, "2*7*23"),
    (-1, 13, "521"),
    (-1, 14, "3*281"),
    (-1, 15, "2^2*11*31"),
    (-1, 16, "2207"),
    (-1, 17, "3571"),
    (-1, 18, "2*3^2*321"),
    (-1, 19, "9349"),
    (-1, 20, "127*119"),
    (-1, 21, "2^2*6119"),
    (2, 1, "1"),
    (2, 3, "-5"),
    (2, 5, "11"),
    (2, 7, "-13"),
    (2, 9, "-5"),
    (2, 11, "67"),
    (2, 13, "-181"),
    (2, 15, "5^2*11"),
    (2, 17, "-101"),
    (2, 19, "-797"),
    (2, 21, "5*13*43"),
    (-2, 1, "1"),
    (-2, 3, "7"),
    (-2, 5, "31"),
    (-2, 7, "127"),
    (-2, 9, "7*73"),
    (-2, 11, "23*89"),
    (-2, 13, "8191"),
    (-2, 15, "7*31*151"),
    (-2, 17, "131071"),
    (-2, 19, "524287"),
    (-2, 21, "7*299593"),
    (3, 1, "1"),
    (3, 3, "-2^3"),
    (3, 5, "31"),
    (3, 7, "-83"),
    (3, 9, "2^3*17"),
    (3, 11, "67"),
    (3, 13, "-1559"),
    (3, 15, "2^3*29*31"),
    (3, 17, "-21929"),
    (3, 19, "44917"),
    (3, 21, "-2^3*41*83"),
    (-3, 1, "1"),
    (-3, 3, "2*5"),
    (-3, 5, "61"),
    (-3, 7, "337"),
    (-3, 9, "2*5*181"),
    (-3, 11, "23*491"),
    (-3, 13, "51169"),
    (-3, 15, "2*5^2*5429"),
    (-3, 17, "1439629"),
    (-3, 19, "7634353"),
    (-3, 21, "2*5*4048381"),
    (4, 1, "1"),
    (4, 3, "-11"),
    (4, 5, "61"),
    (4, 7, "-251"),
    (4, 9, "11*71"),
    (4, 11, "-1451"),
    (4, 13, "-2339"),
    (4, 15, "11*59*61"),
    (4, 17, "-239699"),
    (4, 19, "229*451"),
    (4, 21, "-11*251*1259"),
];

/// How a printed entry compares with the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedCheck {
    pub printed: &'static str,
    pub printed_value: BigInt,
    pub value_matches: bool,
    /// Bases in the printed product that are not prime.
    pub non_prime_bases: Vec<BigInt>,
}

impl PrintedCheck {
    pub fn is_consistent(&self) -> bool {
        self.value_matches && self.non_prime_bases.is_empty()
    }
}

fn parse_product(s: &str) -> (BigInt, Vec<BigInt>) {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let mut value = BigInt::from(sign);
    let mut bases = Vec::new();
    for term in body.split('*') {
        let (base, exp) = term.split_once('^').unwrap_or((term, "1"));
        let base: BigInt = base.parse().expect("printed base");
        let exp: usize = exp.parse().expect("printed exponent");
        value *= num_traits::pow(base.clone(), exp);
        bases.push(base);
    }
    (value, bases)
}

/// Compare the printed entry for `L_n` at parameter `m`, if there is one.
pub fn check_printed(m: i64, n: u64) -> Option<PrintedCheck> {
    let &(_, _, printed) = PRINTED_LUCAS.iter().find(|(pm, pn, _)| *pm == m && *pn == n)?;
    let (printed_value, bases) = parse_product(printed);
    let non_prime_bases = bases
        .into_iter()
        .filter(|b| !b.is_one() && !is_prime(b))
        .collect();
    Some(PrintedCheck {
        printed,
        value_matches: printed_value == lucas_l(m, n),
        printed_value,
        non_prime_bases,
    })
}

/// `L_n` for `1 <= n <= n_max` with factorizations, for table output.
pub fn lucas_table(
    m: i64,
    n_max: u64,
    budget: &FactorBudget,
) -> Result<Vec<(u64, BigInt, Option<Factorization>)>> {
    lucas_sequence(m, n_max)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, v)| {
            let f = if v.is_zero() { None } else { Some(factorize(&v, budget)?) };
            Ok((n as u64, v, f))
        })
        .collect()
}

/// `L_n mod 8 == 0` for some odd index `<= max_index`.
pub fn eight_divides_some_odd_term(m: i64, max_index: u64) -> bool {
    lucas_sequence(m, max_index)
        .iter()
        .skip(1)
        .step_by(2)
        .any(|v| (v % BigInt::from(8)).is_zero())
}
