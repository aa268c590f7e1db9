use clap::Subcommand;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use turing_reals::rational::{format_rational, parse_rational};
use turing_reals::rcf::{isolate_odd_root, Polynomial};
use turing_reals::reals::{CauchyReal, SeparationWitness, DEFAULT_BASE};

use crate::error::{rational_arg, CliError};
use crate::report::Report;
use crate::Ctx;

#[derive(Debug, Subcommand)]
pub enum RcfCmd {
    /// Bracket a root of an odd-degree polynomial to width eps.
    Root {
        /// Coefficients, constant term first, comma separated: `-2,0,0,1` is x^3 - 2.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_parser = rational_arg, default_value = "1/1000000000000")]
        eps: BigRational,
        /// Lower bound on |leading coefficient|; by default taken from the
        /// exact coefficient.
        #[arg(long, value_parser = rational_arg)]
        lead_gap: Option<BigRational>,
    },
}

fn exact_eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn run(cmd: RcfCmd, _ctx: &Ctx) -> Result<Report, CliError> {
    let RcfCmd::Root { coeffs, eps, lead_gap } = cmd;
    let parsed = coeffs
        .split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::usage)?;
    let poly = match &lead_gap {
        None => Polynomial::from_rationals(&parsed),
        Some(gap) => {
            let witness = SeparationWitness::new(gap.clone()).map_err(CliError::domain)?;
            let reals = parsed
                .iter()
                .map(|c| CauchyReal::from_rational(c.clone(), DEFAULT_BASE))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::domain)?;
            Polynomial::new(reals, witness)
        }
    }
    .map_err(CliError::domain)?;
    let bracket = isolate_odd_root(&poly, &eps).map_err(CliError::domain)?;
    let (pa, pb) = (exact_eval(&parsed, bracket.lo()), exact_eval(&parsed, bracket.hi()));
    let mut report = Report::new("rcf root");
    report
        .param(
            "coeffs",
            parsed.iter().map(format_rational).collect::<Vec<_>>().join(","),
        )
        .param("eps", format_rational(&eps))
        .param(
            "lead_gap",
            lead_gap.as_ref().map_or("exact".to_string(), format_rational),
        )
        .result("degree", poly.degree())
        .result("lo", format_rational(bracket.lo()))
        .result("hi", format_rational(bracket.hi()))
        .result("width", format_rational(&bracket.width()))
        .result("p_lo", format_rational(&pa))
        .result("p_hi", format_rational(&pb))
        .check("width_within_eps", bracket.width() <= eps)
        .check("endpoint_signs_differ", !(&pa * &pb).is_positive());
    Ok(report)
}
