//! Random separable ensembles never violate any of the criteria. Prints the
//! smallest slack seen per criterion.
//!
//!     cargo run --release --example separability_fuzz -- 2000

use hwsep::criteria::{check_isc, check_lb, check_theorem1, check_vb};
use hwsep::states::{random_separable_with, rng_from_seed};
use hwsep::Normalization;
use rand::Rng;

fn main() -> hwsep::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let mut rng = rng_from_seed(2024);
    let mut slack = [f64::INFINITY; 4];
    for i in 0..n {
        let dims = [[2, 2], [2, 4], [3, 3]][i % 3];
        let terms = rng.random_range(1..=20);
        let (_, rho) = random_separable_with(&dims, terms, &mut rng)?;
        let (a, b, m) = (rng.random_range(0.0..2.0), rng.random_range(0.0..2.0), rng.random_range(1..=3));
        let verdicts = [
            check_theorem1(&rho, a, b, m, Normalization::Standard)?,
            check_isc(&rho, a, b, m)?,
            check_vb(&rho)?,
            check_lb(&rho)?,
        ];
        for (s, v) in slack.iter_mut().zip(&verdicts) {
            *s = s.min(v.bound - v.value);
        }
    }
    for (name, s) in ["hw", "isc", "vb", "lb"].iter().zip(slack) {
        println!("{name:<4} min(bound - value) = {s:.3e}");
    }
    Ok(())
}
