use std::fmt;

use liminal::knots::{DoubleTwistKnot, NamedKnot, TwoBridgeKnot};

/// A knot named on the command line: `J(2k,2l)`, `b(alpha,beta)` or
/// `b(auto:6_2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotSpec {
    DoubleTwist(DoubleTwistKnot),
    TwoBridge {
        knot: TwoBridgeKnot,
        resolved_from: Option<&'static str>,
    },
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotSpec::DoubleTwist(k) => write!(f, "{k}"),
            KnotSpec::TwoBridge { knot, .. } => write!(f, "{knot}"),
        }
    }
}

fn args_of<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

fn pair(inner: &str) -> Result<(i64, i64), String> {
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated integers, got `{inner}`"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|e| format!("`{}`: {e}", t.trim()))
    };
    Ok((parse(a)?, parse(b)?))
}

impl KnotSpec {
    pub fn parse(raw: &str) -> Result<Self, String> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = args_of(&s, "J") {
            let (a, b) = pair(inner)?;
            if a % 2 != 0 || b % 2 != 0 {
                return Err(format!("J({a},{b}): both twist counts must be even"));
            }
            let knot = DoubleTwistKnot::new(a / 2, b / 2).map_err(|e| e.to_string())?;
            if knot.m() == 0 {
                return Err(format!("{knot} has kl = 0"));
            }
            return Ok(KnotSpec::DoubleTwist(knot));
        }
        if let Some(inner) = args_of(&s, "b") {
            if let Some(name) = inner.strip_prefix("auto:") {
                let named = NamedKnot::parse(name)
                    .ok_or_else(|| format!("unknown knot `{name}` (known: 6_2, 6_3)"))?;
                let knot = named.resolve().map_err(|e| e.to_string())?;
                return Ok(KnotSpec::TwoBridge {
                    knot,
                    resolved_from: Some(named.name()),
                });
            }
            let (a, b) = pair(inner)?;
            let (a, b) = (
                u64::try_from(a).map_err(|_| format!("alpha = {a} is negative"))?,
                u64::try_from(b).map_err(|_| format!("beta = {b} is negative"))?,
            );
            let knot = TwoBridgeKnot::new(a, b).map_err(|e| e.to_string())?;
            return Ok(KnotSpec::TwoBridge {
                knot,
                resolved_from: None,
            });
        }
        Err(format!(
            "cannot parse knot `{raw}`; expected J(2k,2l), b(alpha,beta) or b(auto:6_2)"
        ))
    }
}
