use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use thiserror::Error;
use turing_reals::rational::parse_rational;
use turing_reals::reals::{parse_dreal, DigitStream};

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or malformed input files.
    #[error("usage: {0}")]
    Usage(String),
    /// Inputs parsed but lie outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    pub fn domain(e: impl fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    pub fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_dreal(path: &Path) -> Result<DigitStream, CliError> {
    parse_dreal(&read_text(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn rational_arg(text: &str) -> Result<BigRational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Rows of exact rationals from a CSV file. A first row that does not
/// parse is taken as a header; `#` starts a comment line.
pub fn read_rational_rows(path: &Path, min_cols: usize) -> Result<Vec<Vec<BigRational>>, CliError> {
    let text = read_text(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if record.len() < min_cols {
            return Err(CliError::Usage(format!(
                "{}: row {} has {} fields, expected {min_cols}",
                path.display(),
                i + 1,
                record.len()
            )));
        }
        let parsed: Result<Vec<BigRational>, _> = record.iter().take(min_cols).map(parse_rational).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(CliError::Usage(format!("{}: row {}: {e}", path.display(), i + 1))),
        }
    }
    Ok(rows)
}
