//! Grid search over (α, β, m) for the largest violation of the bipartite
//! criterion on one state.
//!
//!     cargo run --release --example parameter_search

use hwsep::analysis::optimize_params;
use hwsep::states::StateFamily;
use hwsep::Normalization;

fn main() -> hwsep::Result<()> {
    let grid: Vec<f64> = (0..=40).map(|i| i as f64 * 0.05).collect();
    let family = StateFamily::horodecki_mix(0.9)?;
    for x in [0.22, 0.225, 0.25] {
        let best = optimize_params(&family.at(x)?, &grid, &grid, &[1, 2, 3], Normalization::Standard)?;
        println!(
            "x = {x:<6} best alpha = {:.2}, beta = {:.2}, m = {}: value - bound = {:+.6} ({})",
            best.alpha,
            best.beta,
            best.m,
            best.excess(),
            best.verdict.verdict
        );
    }
    Ok(())
}
