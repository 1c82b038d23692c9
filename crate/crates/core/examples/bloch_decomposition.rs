//! Bloch vectors and correlation matrix of a bipartite state, and the
//! reconstruction back to a density matrix.
//!
//!     cargo run --example bloch_decomposition

use hwsep::bloch::{decompose_bipartite, decompose_single, purity_from_bloch, reconstruct_bipartite};
use hwsep::states::{horodecki_2x4, random_pure};
use hwsep::Normalization;

fn main() -> hwsep::Result<()> {
    let psi = random_pure(&[4], 7)?;
    let r = decompose_single(&psi, Normalization::Standard)?;
    println!("random qudit (d=4): ‖r‖ = {:.12}, √(d-1) = {:.12}", r.norm(), 3f64.sqrt());
    println!("purity from Bloch vector {:.12}, direct {:.12}", purity_from_bloch(&r)?, psi.purity());

    let rho = horodecki_2x4(0.9)?;
    for norm in [Normalization::Standard, Normalization::Rescaled] {
        let dec = decompose_bipartite(&rho, norm)?;
        println!("\n{norm} basis on the 2x4 state, b = 0.9");
        println!("  r = {:?}", round(&dec.r.coeffs));
        println!("  s = {:?}", round(&dec.s.coeffs));
        println!("  ‖T‖_tr = {:.6}, ‖T‖_F = {:.6}", dec.t.trace_norm()?, dec.t.frobenius_norm());
        let back = reconstruct_bipartite(&dec)?;
        println!("  reconstruction error {:.2e}", (rho.matrix() - back.matrix()).frobenius_norm());
    }
    Ok(())
}

fn round(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}
