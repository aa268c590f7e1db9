use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Subcommand;
use num_rational::BigRational;
use turing_reals::cover::{
    cover_with, greedy_monotone_cover, min_cover_oracle, CoverError, CoverRegistry, FinitePointSet, PointPiece,
    DEFAULT_MAX_POINTS,
};
use turing_reals::monotone::{eval_code, member_check, parse_code_text, write_code_text, Direction, MonotoneCode};
use turing_reals::rational::{format_rational, ExtRational};

use crate::error::{rational_arg, read_rational_rows, read_text, CliError};
use crate::report::Report;
use crate::Ctx;

#[derive(Debug, Subcommand)]
pub enum MonoCmd {
    /// Build a code from CSV samples `key,value[,kind]` (kind `r` or `d`).
    Encode {
        #[arg(long)]
        samples: PathBuf,
        #[arg(long, default_value = "non-decreasing")]
        direction: Direction,
        /// Also write the MCODE text to this file.
        #[arg(long)]
        code_out: Option<PathBuf>,
    },
    /// Decode the function at x.
    Eval {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        x: BigRational,
    },
    /// Apply the membership formula to (x, y).
    Member {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        x: BigRational,
        /// A rational, `-inf` or `+inf`.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Cover CSV points `x,y` by strictly monotone pieces.
    Cover {
        #[arg(long)]
        points: PathBuf,
        /// Registered cover strategy.
        #[arg(long, default_value = "greedy")]
        strategy: String,
    },
    /// Exact minimum number of monotone pieces, next to the greedy count.
    Mincover {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
}

type Samples = BTreeMap<BigRational, ExtRational>;

/// Rational and discontinuity samples, in that order.
fn read_samples(path: &Path) -> Result<(Samples, Samples), CliError> {
    let text = read_text(path)?;
    let mut rational_samples = BTreeMap::new();
    let mut discontinuity_samples = BTreeMap::new();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let bad = |what: &str| CliError::Usage(format!("{}: row {}: {what}", path.display(), i + 1));
        let key = match record.get(0).map(rational_arg) {
            Some(Ok(k)) => k,
            _ if i == 0 => continue,
            _ => return Err(bad("bad key")),
        };
        let value: ExtRational = record
            .get(1)
            .ok_or_else(|| bad("missing value"))?
            .parse()
            .map_err(|_| bad("bad value"))?;
        let target = match record.get(2).unwrap_or("r") {
            "r" | "" => &mut rational_samples,
            "d" => &mut discontinuity_samples,
            _ => return Err(bad("kind must be `r` or `d`")),
        };
        if target.insert(key, value).is_some() {
            return Err(bad("repeated key"));
        }
    }
    Ok((rational_samples, discontinuity_samples))
}

fn read_code(path: &Path) -> Result<MonotoneCode, CliError> {
    parse_code_text(&read_text(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_points(path: &Path) -> Result<FinitePointSet, CliError> {
    let rows = read_rational_rows(path, 2)?;
    FinitePointSet::new(rows.into_iter().map(|r| (r[0].clone(), r[1].clone())).collect()).map_err(CliError::domain)
}

fn piece_rows(pieces: &[PointPiece]) -> Vec<Vec<String>> {
    pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let points: Vec<String> = p
                .points
                .iter()
                .map(|(x, y)| format!("{}:{}", format_rational(x), format_rational(y)))
                .collect();
            vec![
                i.to_string(),
                p.direction.to_string(),
                p.points.len().to_string(),
                points.join(" "),
            ]
        })
        .collect()
}

fn covers_exactly(pts: &FinitePointSet, pieces: &[PointPiece]) -> bool {
    let mut covered: Vec<&(BigRational, BigRational)> = pieces.iter().flat_map(|p| &p.points).collect();
    covered.sort();
    covered.len() == pts.len() && covered.into_iter().eq(pts.points().iter())
}

pub fn run(cmd: MonoCmd, _ctx: &Ctx) -> Result<Report, CliError> {
    match cmd {
        MonoCmd::Encode {
            samples,
            direction,
            code_out,
        } => {
            let (rational_samples, discontinuity_samples) = read_samples(&samples)?;
            let code =
                MonotoneCode::new(direction, rational_samples, discontinuity_samples).map_err(CliError::domain)?;
            let text = write_code_text(&code);
            if let Some(path) = &code_out {
                std::fs::write(path, &text)?;
            }
            let reproduces = code.samples().all(|(k, v)| &eval_code(&code, k) == v);
            let mut report = Report::new("mono encode");
            report
                .param("samples", samples.display())
                .param("direction", direction)
                .result("rational_samples", code.rational_samples().len())
                .result("discontinuity_samples", code.discontinuity_samples().len())
                .result("code", text)
                .check("decoder_reproduces_samples", reproduces);
            Ok(report)
        }
        MonoCmd::Eval { code, x } => {
            let c = read_code(&code)?;
            let mut report = Report::new("mono eval");
            report
                .param("code", code.display())
                .param("x", format_rational(&x))
                .result("value", eval_code(&c, &x));
            Ok(report)
        }
        MonoCmd::Member { code, x, y } => {
            let c = read_code(&code)?;
            let y: ExtRational = y.parse().map_err(CliError::usage)?;
            let mut report = Report::new("mono member");
            report
                .param("code", code.display())
                .param("x", format_rational(&x))
                .param("y", &y)
                .result("member", member_check(&c, &x, &y))
                .result("decoded", eval_code(&c, &x));
            Ok(report)
        }
        MonoCmd::Cover { points, strategy } => {
            let pts = read_points(&points)?;
            let registry = CoverRegistry::with_builtins();
            let chosen = registry.get(&strategy).map_err(|e| match e {
                CoverError::UnknownStrategy(_) => CliError::Usage(format!(
                    "{e}; registered: {}",
                    registry.names().collect::<Vec<_>>().join(", ")
                )),
                other => CliError::domain(other),
            })?;
            let pieces = cover_with(chosen.as_ref(), &pts).map_err(CliError::domain)?;
            let mut report = Report::new("mono cover");
            report
                .param("points", points.display())
                .param("strategy", chosen.name())
                .result("point_count", pts.len())
                .result("pieces", pieces.len())
                .check(
                    "pieces_strictly_monotone",
                    pieces.iter().all(PointPiece::is_strictly_monotone),
                )
                .check("pieces_partition_input", covers_exactly(&pts, &pieces))
                .table("pieces", &["piece", "direction", "size", "points"], piece_rows(&pieces))
                .as_json_lines();
            Ok(report)
        }
        MonoCmd::Mincover { points, max_points } => {
            let pts = read_points(&points)?;
            let minimum = min_cover_oracle(&pts, max_points).map_err(CliError::domain)?;
            let greedy = greedy_monotone_cover(&pts).len();
            let mut report = Report::new("mono mincover");
            report
                .param("points", points.display())
                .param("max_points", max_points)
                .result("point_count", pts.len())
                .result("minimum", minimum)
                .result("greedy", greedy)
                .check("greedy_at_least_minimum", greedy >= minimum);
            Ok(report)
        }
    }
}
