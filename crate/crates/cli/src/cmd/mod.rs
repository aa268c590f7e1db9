pub mod bitswap;
pub mod cantor;
pub mod codec;
pub mod mono;
pub mod rcf;
pub mod real;

use std::path::Path;

use num_bigint::BigUint;
use turing_reals::reals::{write_dreal, DigitStream, Sign};

use crate::error::CliError;

/// Digits after the radix point, concatenated (bracketed above base 10).
pub fn digit_text(stream: &DigitStream, len: usize) -> String {
    stream
        .digits(len)
        .iter()
        .map(|d| {
            if stream.base() <= 10 {
                d.to_string()
            } else {
                format!("[{d}]")
            }
        })
        .collect()
}

/// The prefix of length `len` as an unreduced fraction `m/B^len`.
pub fn positional(stream: &DigitStream, len: usize) -> String {
    let base = BigUint::from(stream.base());
    let scale = num_traits::pow(base.clone(), len);
    let mut num = stream.int_part() * &scale;
    let mut frac = BigUint::from(0u32);
    for d in stream.digits(len) {
        frac = frac * &base + BigUint::from(d);
    }
    num += frac;
    let sign = if stream.sign() == Sign::Minus && num != BigUint::from(0u32) {
        "-"
    } else {
        ""
    };
    format!("{sign}{num}/{scale}")
}

/// Serializes `stream` and, if requested, writes it to `path`.
pub fn dreal_artifact(stream: &DigitStream, len: Option<usize>, path: Option<&Path>) -> Result<String, CliError> {
    let text = write_dreal(stream, len).map_err(CliError::domain)?;
    if let Some(path) = path {
        std::fs::write(path, &text)?;
    }
    Ok(text)
}
