//! DREAL v1, the two-line text format for digit streams:
//!
//! ```text
//! DREAL 1 base=<B> sign=<+|-> int=<n> len=<k>
//! <d1> <d2> ... <dk>
//! ```
//!
//! Digits after the `k`-th are zero.

use std::str::FromStr;

use num_bigint::BigUint;

use super::{DigitStream, RealError, Sign};

/// Serializes the first `len` digits, or every stored digit of a finite
/// stream when `len` is `None`.
pub fn write_dreal(stream: &DigitStream, len: Option<usize>) -> Result<String, RealError> {
    let len = match (len, stream.known_prefix_len()) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(RealError::Dreal(
                "non-terminating stream needs an explicit prefix length".into(),
            ))
        }
    };
    let digits: Vec<String> = stream.digits(len).iter().map(u32::to_string).collect();
    Ok(format!(
        "DREAL 1 base={} sign={} int={} len={}\n{}\n",
        stream.base(),
        stream.sign().symbol(),
        stream.int_part(),
        len,
        digits.join(" ")
    ))
}

fn field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str, RealError> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| RealError::Dreal(format!("expected `{key}=` field")))
}

pub fn parse_dreal(text: &str) -> Result<DigitStream, RealError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| RealError::Dreal("empty input".into()))?;
    let mut tokens = header.split(' ');
    if tokens.next() != Some("DREAL") || tokens.next() != Some("1") {
        return Err(RealError::Dreal("missing `DREAL 1` magic".into()));
    }
    let bad = |what: &str| RealError::Dreal(format!("bad {what}"));
    let base: u32 = field(tokens.next(), "base")?.parse().map_err(|_| bad("base"))?;
    let sign = match field(tokens.next(), "sign")? {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        _ => return Err(bad("sign")),
    };
    let int_text = field(tokens.next(), "int")?;
    if int_text.is_empty() || !int_text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("int"));
    }
    let int_part = BigUint::from_str(int_text).map_err(|_| bad("int"))?;
    let len: usize = field(tokens.next(), "len")?.parse().map_err(|_| bad("len"))?;
    if tokens.next().is_some() {
        return Err(RealError::Dreal("trailing header fields".into()));
    }
    let digit_line = lines.next().unwrap_or("");
    let digits = digit_line
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| bad("digit")))
        .collect::<Result<Vec<_>, _>>()?;
    if digits.len() != len {
        return Err(RealError::Dreal(format!(
            "header declares {len} digits, found {}",
            digits.len()
        )));
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(RealError::Dreal("unexpected content after digit line".into()));
    }
    DigitStream::new(base, sign, int_part, digits)
}
