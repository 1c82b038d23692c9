//! The 2x4 family ρ_b has a positive partial transpose for every b, yet
//! mixing in a little |ξ⟩ makes it detectable by the trace-norm criteria.
//!
//!     cargo run --example bound_entanglement

use hwsep::criteria::{check_ppt, check_theorem1, check_vb};
use hwsep::states::{horodecki_2x4, StateFamily};
use hwsep::Normalization;

fn main() -> hwsep::Result<()> {
    println!("{:>4} {:>14} {:>8}", "b", "min eig(ρ^T_B)", "PPT");
    for k in 1..=9 {
        let b = k as f64 / 10.0;
        let v = check_ppt(&horodecki_2x4(b)?)?;
        println!("{b:>4.1} {:>14.2e} {:>8}", -v.value, v.verdict);
    }

    let family = StateFamily::horodecki_mix(0.9)?;
    let beta = (2.0f64 / 11.0).sqrt();
    println!("\n{:>5} {:>13} {:>13} {:>13}", "x", "PPT", "V-B", "HW");
    for x in [0.0, 0.1, 0.2, 0.25, 0.3] {
        let rho = family.at(x)?;
        let ppt = check_ppt(&rho)?;
        let vb = check_vb(&rho)?;
        let hw = check_theorem1(&rho, 0.5, beta, 1, Normalization::Standard)?;
        println!("{x:>5.2} {:>13} {:>13} {:>13}", ppt.verdict, vb.verdict, hw.verdict);
    }
    Ok(())
}
