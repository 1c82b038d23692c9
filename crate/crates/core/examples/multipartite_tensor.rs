//! The coefficient tensor W of a three-qubit state and the trace norms of
//! its matricizations across every bipartition.
//!
//!     cargo run --example multipartite_tensor

use hwsep::bloch::build_w;
use hwsep::criteria::{check_theorem2, matricize, Partitions};
use hwsep::states::{ghz, random_pure_product_with, rng_from_seed};
use hwsep::{DensityMatrix, Normalization};

fn report(name: &str, rho: &DensityMatrix, alphas: &[f64], m: usize) -> hwsep::Result<()> {
    println!("{name}");
    for v in check_theorem2(rho, alphas, m, &Partitions::All)? {
        let side: Vec<usize> = v.params.partition.clone().unwrap_or_default().iter().map(|p| p + 1).collect();
        println!("  cut {side:?}: {:.6} vs bound {:.6}  {}", v.value, v.bound, v.verdict);
    }
    Ok(())
}

fn main() -> hwsep::Result<()> {
    let alphas = [1.0, 1.0, 1.0];
    let g = ghz(3)?;
    let w = build_w(&g, &alphas, 1, Normalization::Standard)?;
    println!("W has shape {:?}", w.shape());
    let unfolded = matricize(&w, &[0])?;
    println!("W_(1|23) is {}x{}", unfolded.rows(), unfolded.cols());

    report("GHZ", &g, &alphas, 1)?;
    let product = random_pure_product_with(&[2, 2, 2], &mut rng_from_seed(3))?;
    report("random pure product (equality on every cut)", &product, &alphas, 1)?;
    Ok(())
}
