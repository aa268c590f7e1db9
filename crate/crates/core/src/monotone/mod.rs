//! Countable codes for monotone functions.
//!
//! A monotone function is recovered from its values on the rationals and
//! at its (countably many) discontinuities: for a non-decreasing `f`,
//! `f(x)` is the supremum of the sampled values at keys `<= x`. Finite
//! codes keep finitely many such samples; a family record packs many codes
//! into one byte string and degrades to the constant-0 function whenever
//! it fails to parse.

mod code;
mod family;
mod text;

pub use code::{encode_monotone, eval_code, member_check, Direction, MonotoneCode};
pub use family::{pack_family, unpack_family, MonotoneFamilyCode};
pub use text::{parse_code_text, write_code_text};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonotoneError {
    #[error("samples at {left} and {right} break {direction} order")]
    Inconsistent {
        left: String,
        right: String,
        direction: &'static str,
    },
    #[error("key {0} appears both as a rational sample and as a discontinuity")]
    DuplicateKey(String),
    #[error("baseline value {0} is not an extremum for the direction")]
    BadBaseline(String),
}
