//! Detection thresholds of the HW criterion against the correlation-matrix
//! criteria on the same family, as JSON and CSV.
//!
//!     cargo run --release --example baseline_comparison

use hwsep::analysis::{compare, ScanOptions, Subject};
use hwsep::criteria::Criterion;
use hwsep::states::{bell, StateFamily};
use hwsep::Normalization;

fn main() -> hwsep::Result<()> {
    let beta = (2.0f64 / 11.0).sqrt();
    let criteria = [
        Criterion::Hw { alpha: 0.5, beta, m: 1, normalization: Normalization::Standard },
        Criterion::Isc { alpha: 0.5, beta, m: 1 },
        Criterion::Vb,
        Criterion::Lb,
    ];
    let family = StateFamily::horodecki_mix(0.9)?;
    let report = compare(Subject::Family(&family), &criteria, ScanOptions::default())?;
    for row in &report.rows {
        let x = row.threshold.map_or("none".to_string(), |x| format!("{x:.4}"));
        println!("{:<4} x* = {x}", row.criterion);
    }
    println!("\n{}", report.to_csv()?);

    let mut all = criteria.to_vec();
    all.push(Criterion::Ppt);
    let bell_report = compare(Subject::State(&bell()), &all, ScanOptions::default())?;
    println!("{}", bell_report.to_json()?);
    Ok(())
}
