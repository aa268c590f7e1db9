use std::path::PathBuf;

use clap::Subcommand;
use turing_reals::bits::BitString;
use turing_reals::cantor::{from_cantor, to_cantor};
use turing_reals::rational::format_rational;

use super::{digit_text, dreal_artifact};
use crate::error::{read_dreal, CliError};
use crate::report::Report;
use crate::Ctx;

#[derive(Debug, Subcommand)]
pub enum CantorCmd {
    /// Bit string to the ternary point with digits 2*b.
    Encode {
        #[arg(long)]
        bits: String,
        #[arg(long)]
        dreal_out: Option<PathBuf>,
    },
    /// Ternary DREAL stream back to its bit string.
    Decode {
        #[arg(long)]
        dreal: PathBuf,
        /// Digits to read; defaults to the stored prefix.
        #[arg(long)]
        len: Option<usize>,
    },
}

pub fn run(cmd: CantorCmd, _ctx: &Ctx) -> Result<Report, CliError> {
    match cmd {
        CantorCmd::Encode { bits, dreal_out } => {
            let b: BitString = bits.parse().map_err(CliError::usage)?;
            let point = to_cantor(&b);
            let stream = point.stream();
            let mut report = Report::new("cantor encode");
            report
                .param("bits", &b)
                .result("ternary", digit_text(stream, b.len()))
                .result("value", format_rational(&stream.exact_value().expect("finite")))
                .result("dreal", dreal_artifact(stream, Some(b.len()), dreal_out.as_deref())?)
                .check(
                    "round_trip",
                    from_cantor(stream, Some(b.len())).ok().as_ref() == Some(&b),
                );
            Ok(report)
        }
        CantorCmd::Decode { dreal, len } => {
            let stream = read_dreal(&dreal)?;
            let bits = from_cantor(&stream, len).map_err(CliError::domain)?;
            let mut report = Report::new("cantor decode");
            report
                .param("dreal", dreal.display())
                .param("len", len.map_or("stored".to_string(), |n| n.to_string()))
                .result("bits", &bits)
                .result("len", bits.len());
            Ok(report)
        }
    }
}
