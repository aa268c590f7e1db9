use std::path::PathBuf;

use clap::Subcommand;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turing_reals::codec::{
    encode_pair, join_encode, spread, sum_representation, supports_disjoint, unspread, SpreadSpec,
};
use turing_reals::rational::format_rational;
use turing_reals::reals::DigitStream;

use super::{digit_text, dreal_artifact, positional};
use crate::error::{read_dreal, CliError};
use crate::report::Report;
use crate::Ctx;

#[derive(Debug, Subcommand)]
pub enum CodecCmd {
    /// z = -spread(x), w = spread(x) + spread(y), so z + w = spread(y).
    Pair {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// Digits of each input to use; defaults to the longer stored prefix.
        #[arg(long)]
        len: Option<usize>,
    },
    /// The join w, from which both inputs are read back.
    Join {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        dreal_out: Option<PathBuf>,
    },
    /// Eight streams summing to y, each carrying the digits of x.
    Sumrep {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        len: Option<usize>,
    },
    /// Read digits back from positions stride*i + offset.
    Unspread {
        #[arg(long)]
        dreal: PathBuf,
        #[arg(long)]
        offset: u32,
        #[arg(long, default_value_t = 4)]
        stride: u32,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        dreal_out: Option<PathBuf>,
    },
    /// Randomized round-trip checks of the pair codec and sum representation.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 64)]
        max_len: usize,
    },
}

fn prefix_len(x: &DigitStream, y: &DigitStream, len: Option<usize>) -> usize {
    len.unwrap_or_else(|| x.known_prefix_len().unwrap_or(0).max(y.known_prefix_len().unwrap_or(0)))
}

fn value(s: &DigitStream) -> BigRational {
    s.exact_value().expect("finite stream")
}

fn pair_checks(x: &DigitStream, y: &DigitStream, len: usize) -> Result<Vec<(&'static str, bool)>, CliError> {
    let base = x.base();
    let carrier = SpreadSpec::carrier(base).map_err(CliError::domain)?;
    let payload = SpreadSpec::payload(base).map_err(CliError::domain)?;
    let pair = encode_pair(x, y, len).map_err(CliError::domain)?;
    let s = spread(x, &carrier, len).map_err(CliError::domain)?;
    let t = spread(y, &payload, len).map_err(CliError::domain)?;
    let decoded_x = unspread(&pair.w, &carrier, len).map_err(CliError::domain)?;
    let decoded_y = unspread(&pair.w, &payload, len).map_err(CliError::domain)?;
    Ok(vec![
        ("z_plus_w_equals_spread_y", value(&pair.z) + value(&pair.w) == value(&t)),
        ("w_decodes_x", decoded_x.digits(len) == x.digits(len)),
        ("w_decodes_y", decoded_y.digits(len) == y.digits(len)),
        (
            "supports_disjoint",
            supports_disjoint(&s, &t, carrier.spread_len(len).max(payload.spread_len(len))),
        ),
    ])
}

fn sumrep_checks(x: &DigitStream, y: &DigitStream, len: usize) -> Result<Vec<(&'static str, bool)>, CliError> {
    let rep = sum_representation(x, y, len).map_err(CliError::domain)?;
    let total = rep.terms.iter().fold(BigRational::zero(), |acc, t| acc + value(t));
    let mut decodes = true;
    for (i, term) in rep.terms.iter().enumerate() {
        let d = unspread(term, &rep.carrier_spec_for(i), len).map_err(CliError::domain)?;
        decodes &= d.digits(len) == x.digits(len);
    }
    Ok(vec![
        ("terms_sum_to_y", total == value(&y.truncated(len))),
        ("every_term_decodes_x", decodes),
    ])
}

fn random_fraction(rng: &mut ChaCha8Rng, base: u32, max_len: usize) -> DigitStream {
    let len = rng.gen_range(0..=max_len);
    DigitStream::fraction(base, (0..len).map(|_| rng.gen_range(0..base)).collect()).expect("digits below base")
}

pub fn run(cmd: CodecCmd, ctx: &Ctx) -> Result<Report, CliError> {
    match cmd {
        CodecCmd::Pair { x, y, len } => {
            let (sx, sy) = (read_dreal(&x)?, read_dreal(&y)?);
            let n = prefix_len(&sx, &sy, len);
            let pair = encode_pair(&sx, &sy, n).map_err(CliError::domain)?;
            let width = pair.spec_x.spread_len(n).max(pair.spec_y.spread_len(n));
            let mut report = Report::new("codec pair");
            report
                .param("x", x.display())
                .param("y", y.display())
                .param("len", n)
                .param("stride", pair.spec_x.stride())
                .param("offset_x", pair.spec_x.offset())
                .param("offset_y", pair.spec_y.offset())
                .result("z", format_rational(&value(&pair.z)))
                .result("w", format_rational(&value(&pair.w)))
                .result("z_positional", positional(&pair.z, width))
                .result("w_positional", positional(&pair.w, width))
                .result("w_digits", digit_text(&pair.w, width));
            for (name, ok) in pair_checks(&sx, &sy, n)? {
                report.check(name, ok);
            }
            Ok(report)
        }
        CodecCmd::Join { x, y, len, dreal_out } => {
            let (sx, sy) = (read_dreal(&x)?, read_dreal(&y)?);
            let n = prefix_len(&sx, &sy, len);
            let w = join_encode(&sx, &sy, n).map_err(CliError::domain)?;
            let mut report = Report::new("codec join");
            report
                .param("x", x.display())
                .param("y", y.display())
                .param("len", n)
                .result("w", format_rational(&value(&w)))
                .result("dreal", dreal_artifact(&w, None, dreal_out.as_deref())?);
            for (name, ok) in pair_checks(&sx, &sy, n)? {
                report.check(name, ok);
            }
            Ok(report)
        }
        CodecCmd::Sumrep { x, y, len } => {
            let (sx, sy) = (read_dreal(&x)?, read_dreal(&y)?);
            let n = prefix_len(&sx, &sy, len);
            let rep = sum_representation(&sx, &sy, n).map_err(CliError::domain)?;
            let rows = rep
                .terms
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let k = i / 2 + 1;
                    vec![
                        (i + 1).to_string(),
                        if i % 2 == 0 { format!("z{k}") } else { format!("w{k}") },
                        rep.carrier_spec_for(i).offset().to_string(),
                        rep.component_specs[i / 2].offset().to_string(),
                        format_rational(&value(t)),
                    ]
                })
                .collect();
            let mut report = Report::new("codec sumrep");
            report
                .param("x", x.display())
                .param("y", y.display())
                .param("len", n)
                .result("y", format_rational(&value(&sy.truncated(n))))
                .table(
                    "terms",
                    &["index", "role", "carrier_offset", "component_offset", "value"],
                    rows,
                );
            for (name, ok) in sumrep_checks(&sx, &sy, n)? {
                report.check(name, ok);
            }
            Ok(report)
        }
        CodecCmd::Unspread {
            dreal,
            offset,
            stride,
            len,
            dreal_out,
        } => {
            let stream = read_dreal(&dreal)?;
            let spec = SpreadSpec::new(stride, offset, stream.base()).map_err(CliError::domain)?;
            let out = unspread(&stream, &spec, len).map_err(CliError::domain)?;
            let mut report = Report::new("codec unspread");
            report
                .param("dreal", dreal.display())
                .param("stride", stride)
                .param("offset", offset)
                .param("len", len)
                .result("digits", digit_text(&out, len))
                .result("value", format_rational(&value(&out)))
                .result("dreal", dreal_artifact(&out, Some(len), dreal_out.as_deref())?);
            Ok(report)
        }
        CodecCmd::Selftest { cases, max_len } => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let names = [
                "z_plus_w_equals_spread_y",
                "w_decodes_x",
                "w_decodes_y",
                "supports_disjoint",
                "terms_sum_to_y",
                "every_term_decodes_x",
            ];
            let mut failures = vec![0usize; names.len()];
            for _ in 0..cases {
                let x = random_fraction(&mut rng, 10, max_len);
                let y = random_fraction(&mut rng, 10, max_len);
                let n = prefix_len(&x, &y, None);
                let checks = pair_checks(&x, &y, n)?.into_iter().chain(sumrep_checks(&x, &y, n)?);
                for (i, (_, ok)) in checks.enumerate() {
                    failures[i] += usize::from(!ok);
                }
            }
            let mut report = Report::new("codec selftest");
            report
                .param("seed", ctx.seed)
                .param("cases", cases)
                .param("max_len", max_len)
                .param("base", 10);
            let rows = names
                .iter()
                .zip(&failures)
                .map(|(n, f)| vec![n.to_string(), (cases - f).to_string(), f.to_string()])
                .collect();
            report.table("checks", &["check", "passed", "failed"], rows);
            for (name, f) in names.iter().zip(failures) {
                report.check(name, f == 0);
            }
            Ok(report)
        }
    }
}
