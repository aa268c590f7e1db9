use clap::Subcommand;
use num_rational::BigRational;
use num_traits::Zero;
use turing_reals::bits::BitString;
use turing_reals::bitswap::{
    base4_remap, bitswap, density_bound, density_profile, even_prefixes, greedy_pieces, obstruction_check,
    quadruple_order_check, BitSwapView,
};
use turing_reals::cover::{min_cover_size, verify_cover, GreedyLongestChain};
use turing_reals::rational::format_rational;

use crate::error::CliError;
use crate::report::Report;
use crate::Ctx;

#[derive(Debug, Subcommand)]
pub enum BitswapCmd {
    /// Swap bits 2n and 2n+1 of a bit string.
    Map {
        #[arg(long)]
        bits: String,
    },
    /// Check the permutation's invariants at depth L and tabulate densities
    /// and cover sizes.
    Analyze {
        #[arg(long)]
        depth: usize,
        /// Deepest graph handed to the exact minimum-cover search.
        #[arg(long, default_value_t = 6)]
        max_exact_depth: usize,
    },
}

pub fn run(cmd: BitswapCmd, _ctx: &Ctx) -> Result<Report, CliError> {
    match cmd {
        BitswapCmd::Map { bits } => {
            let b: BitString = bits.parse().map_err(CliError::usage)?;
            let image = bitswap(&b);
            let mut report = Report::new("bitswap map");
            report
                .param("bits", &b)
                .result("image", &image)
                .result("fixed", image == b)
                .check("involution", bitswap(&image) == b);
            Ok(report)
        }
        BitswapCmd::Analyze { depth, max_exact_depth } => analyze(depth, max_exact_depth),
    }
}

fn analyze(depth: usize, max_exact_depth: usize) -> Result<Report, CliError> {
    let view = BitSwapView::new(depth).map_err(CliError::domain)?;
    if depth > 20 {
        return Err(CliError::Domain(format!(
            "depth {depth} is too large to analyze (at most 20)"
        )));
    }
    let size = view.size();
    let involution = (0..size).all(|v| view.image(view.image(v)) == v);
    let base4 = (0..size).all(|v| view.image(v) == base4_remap(v, depth));
    let fixed = view.fixed_points();
    let fixed_ok = fixed.len() as u64 == 1u64 << (depth / 2)
        && fixed
            .iter()
            .all(|&v| BitString::from_index(v, depth).bits().chunks(2).all(|p| p[0] == p[1]));

    let quad_sigmas: Vec<BitString> = if depth >= 2 {
        even_prefixes(depth - 2).collect()
    } else {
        Vec::new()
    };
    let quad_failures = quad_sigmas
        .iter()
        .filter(|s| !quadruple_order_check(s, depth).map(|r| r.passed).unwrap_or(false))
        .count();

    let seq = view.permutation();
    let greedy = GreedyLongestChain.cover_sequence(&seq);
    let greedy_ok = verify_cover(&seq, &greedy);
    let pieces = greedy_pieces(&view);
    let prefixes: Vec<BitString> = even_prefixes(depth).collect();
    let obstruction_ok = pieces.iter().all(|p| prefixes.iter().all(|s| obstruction_check(p, s)));

    let mut worst = vec![BigRational::zero(); depth / 2 + 1];
    for piece in &pieces {
        for (level, fraction) in density_profile(piece, depth) {
            if fraction > worst[level / 2] {
                worst[level / 2] = fraction;
            }
        }
    }
    let density_ok = worst.iter().enumerate().all(|(k, f)| *f <= density_bound(2 * k));
    let density_rows = worst
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let bound = density_bound(2 * k);
            vec![
                (2 * k).to_string(),
                format_rational(f),
                format_rational(&bound),
                if *f <= bound { "pass" } else { "fail" }.to_string(),
            ]
        })
        .collect();

    let mut growth = Vec::new();
    let mut cover_rows = Vec::new();
    for d in (2..=depth.min(max_exact_depth)).step_by(2) {
        let v = BitSwapView::new(d).map_err(CliError::domain)?;
        let s = v.permutation();
        let exact = min_cover_size(&s, s.len()).map_err(CliError::domain)?;
        growth.push(exact);
        cover_rows.push(vec![
            d.to_string(),
            s.len().to_string(),
            GreedyLongestChain.cover_sequence(&s).len().to_string(),
            exact.to_string(),
        ]);
    }

    let mut report = Report::new("bitswap analyze");
    report
        .param("depth", depth)
        .param("max_exact_depth", max_exact_depth)
        .result("strings", size)
        .result("fixed_points", fixed.len())
        .result("quadruple_prefixes", quad_sigmas.len())
        .result("greedy_pieces", greedy.len())
        .check("involution", involution)
        .check("base4_remap_agrees", base4)
        .check("fixed_points_are_doubled_pairs", fixed_ok)
        .check("quadruple_order", quad_failures == 0)
        .check("greedy_cover_valid", greedy_ok)
        .check("obstruction", obstruction_ok)
        .check("density_bound", density_ok)
        .table("density", &["level", "max_fraction", "bound", "status"], density_rows)
        .table("cover_sizes", &["depth", "points", "greedy", "minimum"], cover_rows);
    if growth.len() >= 2 {
        report.check(
            "minimum_cover_strictly_increasing",
            growth.windows(2).all(|w| w[0] < w[1]),
        );
    }
    Ok(report)
}
