use std::path::PathBuf;

use clap::Subcommand;
use num_rational::BigRational;
use turing_reals::rational::{format_rational, inv_pow};
use turing_reals::reals::{add, from_rational, mul, to_digits, CauchyReal, DigitStream};

use super::{digit_text, dreal_artifact};
use crate::error::{rational_arg, read_dreal, CliError};
use crate::report::Report;
use crate::Ctx;

/// Refinement steps allowed per committed digit.
const DIGIT_FUEL: u32 = 64;

#[derive(Debug, Subcommand)]
pub enum RealCmd {
    /// Expand an exact rational into a DREAL digit stream.
    Encode {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        value: BigRational,
        #[arg(long, default_value_t = 10)]
        base: u32,
        /// Digits to emit; defaults to the whole terminating expansion, or 32.
        #[arg(long)]
        len: Option<usize>,
        /// Also write the DREAL text to this file.
        #[arg(long)]
        dreal_out: Option<PathBuf>,
    },
    /// Exact value of a DREAL file's stored prefix.
    Value {
        #[arg(long)]
        dreal: PathBuf,
    },
    /// Add two DREAL streams and commit `len` digits of the sum.
    Add {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 32)]
        len: usize,
        #[arg(long)]
        dreal_out: Option<PathBuf>,
    },
    /// Multiply two DREAL streams and commit `len` digits of the product.
    Mul {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 32)]
        len: usize,
        #[arg(long)]
        dreal_out: Option<PathBuf>,
    },
}

fn exact(stream: &DigitStream) -> BigRational {
    stream.exact_value().expect("DREAL files hold finite streams")
}

/// `digits` is the truncation of `value`: `|value - prefix| < base^-len`
/// with the prefix between zero and the value.
fn is_truncation(digits: &DigitStream, value: &BigRational, len: usize) -> bool {
    let prefix = digits.prefix_value(len);
    let gap = value - &prefix;
    let abs_ok = num_traits::Signed::abs(&gap) < inv_pow(digits.base(), len as u32);
    let toward_zero = num_traits::Signed::abs(&prefix) <= num_traits::Signed::abs(value);
    abs_ok && toward_zero
}

fn binary(
    name: &str,
    a: PathBuf,
    b: PathBuf,
    len: usize,
    dreal_out: Option<PathBuf>,
    op: fn(&CauchyReal, &CauchyReal) -> CauchyReal,
    exact_op: fn(&BigRational, &BigRational) -> BigRational,
) -> Result<Report, CliError> {
    let (sa, sb) = (read_dreal(&a)?, read_dreal(&b)?);
    if sa.base() != sb.base() {
        return Err(CliError::Domain(format!(
            "bases differ: {} and {}",
            sa.base(),
            sb.base()
        )));
    }
    let base = sa.base();
    let result = op(&CauchyReal::from_digits(&sa), &CauchyReal::from_digits(&sb));
    let digits = to_digits(&result, base, len, DIGIT_FUEL).map_err(CliError::domain)?;
    let expected = exact_op(&exact(&sa), &exact(&sb));
    let mut report = Report::new(&format!("real {name}"));
    report
        .param("a", a.display())
        .param("b", b.display())
        .param("len", len)
        .result("a", format_rational(&exact(&sa)))
        .result("b", format_rational(&exact(&sb)))
        .result("exact", format_rational(&expected))
        .result("sign", digits.sign().symbol())
        .result("int", digits.int_part())
        .result("digits", digit_text(&digits, len))
        .result("dreal", dreal_artifact(&digits, Some(len), dreal_out.as_deref())?)
        .check("digits_truncate_exact_value", is_truncation(&digits, &expected, len));
    Ok(report)
}

pub fn run(cmd: RealCmd, _ctx: &Ctx) -> Result<Report, CliError> {
    match cmd {
        RealCmd::Encode {
            value,
            base,
            len,
            dreal_out,
        } => {
            let stream = from_rational(&value, base).map_err(CliError::domain)?;
            let len = len.or(stream.known_prefix_len()).unwrap_or(32);
            let mut report = Report::new("real encode");
            report
                .param("value", format_rational(&value))
                .param("base", base)
                .param("len", len)
                .result("terminating", stream.known_prefix_len().is_some())
                .result("sign", stream.sign().symbol())
                .result("int", stream.int_part())
                .result("digits", digit_text(&stream, len))
                .result("dreal", dreal_artifact(&stream, Some(len), dreal_out.as_deref())?)
                .check("stream_equals_value", stream.exact_value().as_ref() == Some(&value))
                .check("prefix_truncates_value", is_truncation(&stream, &value, len));
            Ok(report)
        }
        RealCmd::Value { dreal } => {
            let stream = read_dreal(&dreal)?;
            let len = stream.known_prefix_len().unwrap_or(0);
            let mut report = Report::new("real value");
            report
                .param("dreal", dreal.display())
                .result("base", stream.base())
                .result("len", len)
                .result("value", format_rational(&exact(&stream)))
                .result("positional", super::positional(&stream, len));
            Ok(report)
        }
        RealCmd::Add { a, b, len, dreal_out } => binary("add", a, b, len, dreal_out, add, |x, y| x + y),
        RealCmd::Mul { a, b, len, dreal_out } => binary("mul", a, b, len, dreal_out, mul, |x, y| x * y),
    }
}
