//! Index lists: `k`, `a:b` (inclusive), `a:b:step`, or comma-separated items of those.

use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexList {
    pub items: Vec<u64>,
    /// The text as given, echoed into run manifests.
    pub source: String,
}

/// Longest list a single range may expand to.
pub const MAX_ITEMS: u64 = 10_000_000;

impl FromStr for IndexList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for item in s.split(',') {
            let parts: Vec<&str> = item.trim().split(':').collect();
            let num = |t: &str| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| format!("bad index {t:?} in {s:?}: {e}"))
            };
            match parts.as_slice() {
                [k] => out.push(num(k)?),
                [a, b] | [a, b, _] => {
                    let (a, b) = (num(a)?, num(b)?);
                    let step = match parts.get(2) {
                        Some(st) => num(st)?,
                        None => 1,
                    };
                    if step == 0 {
                        return Err(format!("zero step in {item:?}"));
                    }
                    if a > b {
                        return Err(format!("empty range {item:?}"));
                    }
                    if (b - a) / step + 1 > MAX_ITEMS {
                        return Err(format!("range {item:?} has more than {MAX_ITEMS} items"));
                    }
                    out.extend((a..=b).step_by(step as usize));
                }
                _ => return Err(format!("bad range {item:?}")),
            }
        }
        Ok(IndexList {
            items: out,
            source: s.to_string(),
        })
    }
}

/// Comma-separated reals.
pub fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}")))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reals(pub Vec<f64>);

impl FromStr for Reals {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_reals(s).map(Reals)
    }
}
