//! MCODE v1, a line-oriented text form of a single code:
//!
//! ```text
//! MCODE 1 direction=<non-decreasing|non-increasing> baseline=<value>
//! r <key> <value>
//! d <key> <value>
//! ```
//!
//! `r` lines are rational samples, `d` lines discontinuity samples; values
//! may be `-inf` or `+inf`.

use std::collections::BTreeMap;

use super::{Direction, MonotoneCode};
use crate::rational::{format_rational, parse_rational, ExtRational};

pub fn write_code_text(code: &MonotoneCode) -> String {
    let mut out = format!("MCODE 1 direction={} baseline={}\n", code.direction(), code.baseline());
    for (tag, samples) in [("r", code.rational_samples()), ("d", code.discontinuity_samples())] {
        for (k, v) in samples {
            out.push_str(&format!("{tag} {} {v}\n", format_rational(k)));
        }
    }
    out
}

pub fn parse_code_text(text: &str) -> Result<MonotoneCode, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty input")?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("MCODE") || tokens.next() != Some("1") {
        return Err("missing `MCODE 1` magic".into());
    }
    let direction: Direction = tokens
        .next()
        .and_then(|t| t.strip_prefix("direction="))
        .ok_or("expected `direction=` field")?
        .parse()?;
    let baseline: ExtRational = tokens
        .next()
        .and_then(|t| t.strip_prefix("baseline="))
        .ok_or("expected `baseline=` field")?
        .parse()
        .map_err(|e| format!("baseline: {e}"))?;
    if tokens.next().is_some() {
        return Err("trailing header fields".into());
    }
    let mut rational_samples = BTreeMap::new();
    let mut discontinuity_samples = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [tag, key, value] = fields[..] else {
            return Err(format!("line {}: expected `<r|d> <key> <value>`", i + 2));
        };
        let key = parse_rational(key).map_err(|e| format!("line {}: {e}", i + 2))?;
        let value: ExtRational = value.parse().map_err(|e| format!("line {}: {e}", i + 2))?;
        let target = match tag {
            "r" => &mut rational_samples,
            "d" => &mut discontinuity_samples,
            other => return Err(format!("line {}: unknown sample kind `{other}`", i + 2)),
        };
        if target.insert(key.clone(), value).is_some() {
            return Err(format!("line {}: key {} repeated", i + 2, format_rational(&key)));
        }
    }
    MonotoneCode::with_baseline(direction, baseline, rational_samples, discontinuity_samples).map_err(|e| e.to_string())
}
