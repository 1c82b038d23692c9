//! Heisenberg-Weyl observables for a qutrit and their orthogonality.
//!
//!     cargo run --example hw_basis -- 3

use hwsep::hw_basis::{observable_unphased, HwBasis, Normalization};

fn main() -> hwsep::Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let basis = HwBasis::new(d, Normalization::Standard)?;

    for (&(l, m), q) in basis.iter() {
        println!("Q({l},{m}) =");
        for i in 0..d {
            let row: Vec<String> = q.row(i).iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect();
            println!("  [{}]", row.join(", "));
        }
    }
    println!("max |Tr(Q Q') - d δ| = {:.2e}", basis.orthogonality_deviation());

    let rescaled = HwBasis::new(d, Normalization::Rescaled)?;
    println!("rescaled basis: max |Tr(Q Q') - 2 δ| = {:.2e}", rescaled.orthogonality_deviation());

    // Without the e^{iπlm/d} phase the operators with l·m ≠ 0 are not orthogonal.
    if d >= 3 {
        let a = observable_unphased(d, 1, 1)?;
        let b = observable_unphased(d, d - 1, d - 1)?;
        println!("unphased Tr(Q(1,1) Q({0},{0})) = {1:.6}", d - 1, a.trace_product(&b).re);
    }
    Ok(())
}
