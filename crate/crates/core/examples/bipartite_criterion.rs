//! The S-matrix criterion on the mixture x|ξ⟩⟨ξ| + (1-x)ρ_b and its
//! detection threshold.
//!
//!     cargo run --release --example bipartite_criterion

use hwsep::analysis::{scan_threshold, ScanOptions};
use hwsep::bloch::decompose_bipartite;
use hwsep::criteria::{build_s, check_theorem1, Criterion};
use hwsep::states::StateFamily;
use hwsep::Normalization;

fn main() -> hwsep::Result<()> {
    let (alpha, beta, m) = (0.5, (2.0f64 / 11.0).sqrt(), 1);
    let family = StateFamily::horodecki_mix(0.9)?;

    let rho = family.at(0.3)?;
    let s = build_s(&decompose_bipartite(&rho, Normalization::Standard)?, alpha, beta, m)?;
    println!("S is {}x{} with {} padding row(s)", s.matrix.rows(), s.matrix.cols(), s.pad);

    println!("{:>6} {:>10} {:>10}  verdict", "x", "‖S‖_tr", "bound");
    for x in [0.0, 0.1, 0.2, 0.22, 0.23, 0.25, 0.3, 0.5, 1.0] {
        let v = check_theorem1(&family.at(x)?, alpha, beta, m, Normalization::Standard)?;
        println!("{x:>6.2} {:>10.6} {:>10.6}  {}", v.value, v.bound, v.verdict);
    }

    let criterion = Criterion::Hw { alpha, beta, m, normalization: Normalization::Standard };
    let t = scan_threshold(&family, &criterion, ScanOptions::default())?;
    match t.threshold {
        Some(x) => println!("detected for x ≥ {x:.6} (bracket {:.1e}, {} evaluations)", t.interval, t.evaluations),
        None => println!("never detected"),
    }
    Ok(())
}
