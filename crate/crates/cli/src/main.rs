mod knot_spec;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;

use liminal::covers::{r_n, remark64_scan, verify_main_theorem, CoverRecord, TwoAdicTrigger};
use liminal::knots::{
    alexander_double_twist, fox_alexander, riley_polynomial, riley_polynomial_general,
    DoubleTwistKnot,
};
use liminal::liminal::{construct_liminal_character, general_criterion, liminal_character_exists};
use liminal::numtheory::{factorize, is_prime, primes_up_to, FactorBudget};
use liminal::padic::{hensel_lift_root, implicit_series, PAdicInt, DEFAULT_PRECISION};
use liminal::poly::UniPoly;
use liminal::sequences::{check_printed, lucas_table, theorem5_verify, Theorem5Violation};
use liminal::Error as LibError;

use knot_spec::KnotSpec;
use output::{emit, Cell, Format, Row};

#[derive(Parser)]
#[command(name = "liminal", version)]
#[command(about = "Liminal SL2(Z_p)-characters of two-bridge knots: criteria, covers and scans")]
struct Cli {
    /// Largest cover degree or sequence index
    #[arg(long, global = true, default_value_t = 21)]
    nmax: u64,

    /// Largest prime to test
    #[arg(long, global = true, default_value_t = 10_000)]
    pmax: u64,

    /// p-adic digits for liminal points
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: u32,

    /// Pollard rho iterations per composite cofactor
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for scans (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Seed for randomized factoring
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TwoAdic {
    /// Test p = 2 when 2^3 divides r_n
    Rn,
    /// Test p = 2 when 2^3 divides L_n, i.e. 2^6 divides r_n
    Ln,
}

#[derive(Subcommand)]
enum Command {
    /// Liminal character test for one knot and prime
    Criterion { knot: String, p: BigInt },
    /// Riley polynomial and its specialization at y = 2
    Riley { knot: String },
    /// L_n for n = 1..NMAX with factorizations
    Lucas {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        nmax: Option<u64>,
    },
    /// r_n = |H_1| of the n-fold cyclic branched cover, n = 1..NMAX
    Rn { knot: String },
    /// Liminal character test at every prime up to PMAX
    Scan { knot: String },
    /// Check odd-index cover divisors against the criterion for J(2k,2l)
    VerifyThm1 {
        knot: String,
        #[arg(long, value_enum, default_value_t = TwoAdic::Rn)]
        two_adic: TwoAdic,
    },
    /// Check prime divisors of odd-index L_n
    VerifyThm5 {
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    /// Riley-criterion scan over cover divisors for a two-bridge knot
    Remark64 {
        knot: String,
        /// Exceptions that do not make the exit code nonzero
        #[arg(long, value_delimiter = ',')]
        allow: Vec<u64>,
    },
    /// p-adic liminal point, optionally with the implicit series through it
    LiminalPoint {
        knot: String,
        p: u64,
        /// Order of the series x(y) in (y - 2)
        #[arg(long)]
        order: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<LibError> for Failure {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Domain(_) | LibError::NotPrime(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type Outcome<T> = Result<T, Failure>;

struct Report {
    rows: Vec<Row>,
    consistent: bool,
    notes: Vec<String>,
}

impl Report {
    fn ok(rows: Vec<Row>) -> Self {
        Self {
            rows,
            consistent: true,
            notes: Vec::new(),
        }
    }
}

fn knot(raw: &str) -> Outcome<KnotSpec> {
    KnotSpec::parse(raw).map_err(Failure::Usage)
}

fn double_twist(raw: &str) -> Outcome<DoubleTwistKnot> {
    match knot(raw)? {
        KnotSpec::DoubleTwist(k) => Ok(k),
        other => Err(Failure::Usage(format!("{other}: this command needs J(2k,2l)"))),
    }
}

fn resolution_note(spec: &KnotSpec) -> Option<String> {
    match spec {
        KnotSpec::TwoBridge {
            knot,
            resolved_from: Some(name),
        } => Some(format!("{name} resolved to {knot} by Alexander polynomial")),
        _ => None,
    }
}

fn alexander(spec: &KnotSpec) -> Outcome<UniPoly> {
    Ok(match spec {
        KnotSpec::DoubleTwist(k) => alexander_double_twist(k),
        KnotSpec::TwoBridge { knot, .. } => fox_alexander(knot)?,
    })
}

fn verdict_row(spec: &KnotSpec, k: &DoubleTwistKnot, p: &BigInt) -> Outcome<Row> {
    let v = liminal_character_exists(k, p)?;
    Ok(Row::new()
        .with("knot", spec.to_string())
        .with("p", p)
        .with("exists", v.exists)
        .with("reason", v.reason.as_str())
        .with("r", v.r)
        .with("symbol", v.symbol))
}

fn general_row(spec: &KnotSpec, f: &liminal::BiPoly, p: u64) -> Outcome<Row> {
    let c = general_criterion(f, p)?;
    let roots = c.roots.iter().map(|r| Cell::from(r.root)).collect();
    Ok(Row::new()
        .with("knot", spec.to_string())
        .with("p", p)
        .with("exists", c.holds)
        .with("witnesses", Cell::List(c.witnesses.iter().map(|&w| w.into()).collect()))
        .with("roots", Cell::List(roots))
        .with("multiple_witnesses", c.multiple_witnesses()))
}

fn criterion(raw: &str, p: &BigInt) -> Outcome<Report> {
    let spec = knot(raw)?;
    let row = match &spec {
        KnotSpec::DoubleTwist(k) => verdict_row(&spec, k, p)?,
        KnotSpec::TwoBridge { knot, .. } => {
            let p = u64::try_from(p)
                .ok()
                .filter(|&p| is_prime(&BigInt::from(p)))
                .ok_or_else(|| Failure::Usage(format!("{p} is not a prime below 2^64")))?;
            general_row(&spec, &riley_polynomial_general(knot)?, p)?
        }
    };
    let mut report = Report::ok(vec![row]);
    report.notes.extend(resolution_note(&spec));
    Ok(report)
}

fn riley(raw: &str) -> Outcome<Report> {
    let spec = knot(raw)?;
    let (f, cross_check) = match &spec {
        KnotSpec::DoubleTwist(k) => (riley_polynomial(k), None),
        KnotSpec::TwoBridge { knot, .. } => {
            let f = riley_polynomial_general(knot)?;
            let delta = fox_alexander(knot)?;
            // A genus one two-bridge knot has Delta = m t^2 + (1 - 2m) t + m;
            // compare with the twist knot J(2, 2m) when the shapes match.
            let note = (delta.degree() == Some(2))
                .then(|| {
                    let lead = i64::try_from(delta.coeff(2)).ok()?;
                    [lead, -lead].into_iter().find_map(|m| {
                        let twist = DoubleTwistKnot::new(1, m).ok()?;
                        let g = riley_polynomial(&twist);
                        (f == g || f == -&g).then(|| format!("equals +-Riley of {twist}"))
                    })
                })
                .flatten();
            (f, note)
        }
    };
    let row = Row::new()
        .with("knot", spec.to_string())
        .with("riley", f.to_string())
        .with("at_y2", f.specialize_y(&BigInt::from(2)).to_string())
        .with("cross_check", cross_check);
    let mut report = Report::ok(vec![row]);
    report.notes.extend(resolution_note(&spec));
    Ok(report)
}

fn lucas(m: i64, n_max: u64, budget: &FactorBudget) -> Outcome<Report> {
    let mut report = Report::ok(Vec::new());
    for (n, value, fact) in lucas_table(m, n_max, budget)? {
        let printed = check_printed(m, n);
        let flag = printed.as_ref().and_then(|c| {
            if !c.value_matches {
                Some(format!("printed value {} differs", c.printed_value))
            } else if !c.non_prime_bases.is_empty() {
                let bases: Vec<String> = c.non_prime_bases.iter().map(|b| b.to_string()).collect();
                Some(format!("printed factor {} is not prime", bases.join(", ")))
            } else {
                None
            }
        });
        if let Some(f) = &flag {
            report.notes.push(format!("m={m} n={n}: {f}"));
        }
        report.rows.push(
            Row::new()
                .with("m", m)
                .with("n", n)
                .with("L_n", value)
                .with("factors", fact.map(|f| f.to_string()))
                .with("printed", printed.map(|c| c.printed))
                .with("flag", flag),
        );
    }
    Ok(report)
}

fn rn(raw: &str, n_max: u64, budget: &FactorBudget) -> Outcome<Report> {
    let spec = knot(raw)?;
    let delta = alexander(&spec)?;
    let cells: Vec<Outcome<Row>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let r = r_n(&delta, n)?;
            let factors = if r == BigInt::from(0) {
                "INFINITE".to_owned()
            } else {
                factorize(&r, budget)?.to_string()
            };
            Ok(Row::new()
                .with("knot", spec.to_string())
                .with("n", n)
                .with("r_n", r)
                .with("r_n_factors", factors))
        })
        .collect();
    let mut report = Report::ok(cells.into_iter().collect::<Outcome<_>>()?);
    report.notes.extend(resolution_note(&spec));
    Ok(report)
}

fn scan(raw: &str, p_max: u64) -> Outcome<Report> {
    let spec = knot(raw)?;
    let general = match &spec {
        KnotSpec::TwoBridge { knot, .. } => Some(riley_polynomial_general(knot)?),
        KnotSpec::DoubleTwist(_) => None,
    };
    let rows: Vec<Outcome<Row>> = primes_up_to(p_max)
        .into_par_iter()
        .map(|p| match (&spec, &general) {
            (KnotSpec::DoubleTwist(k), _) => verdict_row(&spec, k, &BigInt::from(p)),
            (_, Some(f)) => general_row(&spec, f, p),
            _ => unreachable!("two-bridge knots carry a Riley polynomial"),
        })
        .collect();
    let mut report = Report::ok(rows.into_iter().collect::<Outcome<_>>()?);
    report.notes.extend(resolution_note(&spec));
    Ok(report)
}

/// One row per checked prime, or a single row with `p = null` when `r_n` has
/// no divisor to check.
fn cover_rows(label: &str, rec: &CoverRecord) -> Vec<Row> {
    let factors = match &rec.factorization {
        Some(f) => Cell::from(f.to_string()),
        None if rec.is_infinite() => Cell::from("INFINITE"),
        None => Cell::Null,
    };
    let base = || {
        Row::new()
            .with("knot", label)
            .with("n", rec.n)
            .with("r_n", &rec.r_n)
            .with("r_n_factors", factors.clone())
    };
    if rec.checks.is_empty() {
        return vec![base()
            .with("p", Cell::Null)
            .with("criterion", Cell::Null)
            .with("consistent", rec.oracle_agrees)];
    }
    rec.checks
        .iter()
        .map(|c| {
            base()
                .with("p", &c.p)
                .with("criterion", c.criterion)
                .with("consistent", c.consistent && rec.oracle_agrees)
        })
        .collect()
}

fn verify_thm1(raw: &str, two_adic: TwoAdic, cli: &Cli, budget: &FactorBudget) -> Outcome<Report> {
    let k = double_twist(raw)?;
    let trigger = match two_adic {
        TwoAdic::Rn => TwoAdicTrigger::EightDividesRn,
        TwoAdic::Ln => TwoAdicTrigger::EightDividesLn,
    };
    let records = verify_main_theorem(&k, cli.nmax, Some(cli.pmax), budget, trigger)?;
    let label = k.to_string();
    let mut report = Report::ok(records.iter().flat_map(|r| cover_rows(&label, r)).collect());
    report.consistent = records.iter().all(CoverRecord::consistent);
    for rec in &records {
        if rec.skipped_large > 0 {
            report.notes.push(format!(
                "n={}: {} prime divisor(s) above --pmax not checked",
                rec.n, rec.skipped_large
            ));
        }
        if rec.partial {
            report.notes.push(format!("n={}: factorization incomplete within budget", rec.n));
        }
    }
    Ok(report)
}

fn verify_thm5(m: i64, cli: &Cli, budget: &FactorBudget) -> Outcome<Report> {
    let rep = theorem5_verify(m, cli.nmax, cli.pmax, budget)?;
    let bad_index = |index: u64| {
        rep.violations.iter().any(|v| match v {
            Theorem5Violation::Symbol { index: i, .. } | Theorem5Violation::Mod8 { index: i } => {
                *i == index
            }
        })
    };
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            Row::new()
                .with("m", m)
                .with("n", r.index)
                .with("L_n", &r.value)
                .with("factors", r.factorization.as_ref().map(|f| f.to_string()))
                .with("checked", Cell::List(r.checked.iter().map(Cell::from).collect()))
                .with("consistent", !bad_index(r.index))
        })
        .collect();
    let mut report = Report::ok(rows);
    report.consistent = rep.violations.is_empty();
    if rep.skipped_large > 0 {
        report
            .notes
            .push(format!("{} prime divisor(s) above --pmax not checked", rep.skipped_large));
    }
    if rep.partial {
        report.notes.push("some values were not fully factored within budget".to_owned());
    }
    Ok(report)
}

fn remark64(raw: &str, allow: &[u64], cli: &Cli) -> Outcome<Report> {
    let spec = knot(raw)?;
    let KnotSpec::TwoBridge { knot: k, .. } = &spec else {
        return Err(Failure::Usage(format!("{spec}: remark64 needs b(alpha,beta)")));
    };
    let rep = remark64_scan(k, cli.nmax, cli.pmax)?;
    let label = spec.to_string();
    let mut report = Report::ok(rep.records.iter().flat_map(|r| cover_rows(&label, r)).collect());
    report.notes.extend(resolution_note(&spec));
    let fmt_set = |s: &std::collections::BTreeSet<u64>| {
        s.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    };
    report.notes.push(format!("alexander: {}", rep.alexander));
    report.notes.push(format!("exceptions: {{{}}}", fmt_set(&rep.exceptions)));
    report
        .notes
        .push(format!("empty intersections: {{{}}}", fmt_set(&rep.empty_intersections)));
    report.consistent = rep.exceptions.iter().all(|p| allow.contains(p))
        && rep.records.iter().all(|r| r.oracle_agrees);
    Ok(report)
}

fn liminal_point(raw: &str, p: u64, order: Option<usize>, precision: u32) -> Outcome<Report> {
    let spec = knot(raw)?;
    let (f, points): (liminal::BiPoly, Vec<PAdicInt>) = match &spec {
        KnotSpec::DoubleTwist(k) => {
            (riley_polynomial(k), vec![construct_liminal_character(k, p, precision)?])
        }
        KnotSpec::TwoBridge { knot, .. } => {
            let f = riley_polynomial_general(knot)?;
            let at2 = f.specialize_y(&BigInt::from(2));
            let c = general_criterion(&f, p)?;
            if !c.holds {
                return Err(Failure::Usage(format!("{spec} has no simple root of f(x,2) mod {p}")));
            }
            let points = c
                .witnesses
                .iter()
                .map(|&w| hensel_lift_root(&at2, &BigInt::from(w), p, precision))
                .collect::<Result<_, _>>()?;
            (f, points)
        }
    };
    let mut report = Report::ok(Vec::new());
    report.notes.extend(resolution_note(&spec));
    for x in points {
        let series = match order {
            Some(d) => match implicit_series(&f, &x, d) {
                Ok(s) => Cell::List(s.coefficients().iter().map(|c| c.residue().into()).collect()),
                Err(e) => {
                    report.notes.push(format!("series through {x}: {e}"));
                    Cell::Null
                }
            },
            None => Cell::Null,
        };
        report.rows.push(
            Row::new()
                .with("knot", spec.to_string())
                .with("p", p)
                .with("precision", precision)
                .with("x", x.residue())
                .with("y", 2u64)
                .with("series", series),
        );
    }
    Ok(report)
}

fn run(cli: &Cli) -> Outcome<Report> {
    let mut budget = FactorBudget::default();
    if let Some(b) = cli.budget {
        budget.rho_iterations = b;
    }
    if let Some(s) = cli.seed {
        budget.seed = s;
    }
    match &cli.command {
        Command::Criterion { knot, p } => criterion(knot, p),
        Command::Riley { knot } => riley(knot),
        Command::Lucas { m, nmax } => lucas(*m, nmax.unwrap_or(cli.nmax), &budget),
        Command::Rn { knot } => rn(knot, cli.nmax, &budget),
        Command::Scan { knot } => scan(knot, cli.pmax),
        Command::VerifyThm1 { knot, two_adic } => verify_thm1(knot, *two_adic, cli, &budget),
        Command::VerifyThm5 { m } => verify_thm5(*m, cli, &budget),
        Command::Remark64 { knot, allow } => remark64(knot, allow, cli),
        Command::LiminalPoint { knot, p, order } => liminal_point(knot, *p, *order, cli.precision),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start {} worker threads: {e}", cli.jobs);
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli)).and_then(|report| {
        let stdout = io::stdout();
        let mut out = BufWriter::new(stdout.lock());
        emit(&report.rows, cli.format, &mut out)?;
        out.flush()?;
        Ok(report)
    });
    match result {
        Ok(report) => {
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            if report.consistent {
                ExitCode::SUCCESS
            } else {
                eprintln!("inconsistency found");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
