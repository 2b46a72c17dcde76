//! Spread of individual clone-pipeline errors for M = 10, including the
//! low-shot regime where extrapolation can land on the wrong hemisphere.

use qubit_fanout::experiments::{default_message, error_distribution, Metric};
use qubit_fanout::stats::quantile_sorted;
use qubit_fanout::Result;

fn main() -> Result<()> {
    let shots = [10u64, 100, 1_000, 10_000, 100_000];
    let rows = error_distribution(10, &shots, 10_000, 3, &default_message())?;
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "S", "p05", "p50", "p95", "max"
    );
    for s in shots {
        let mut v: Vec<f64> = rows
            .iter()
            .filter(|r| r.shots_per_basis == s)
            .map(|r| r.sample.get(Metric::Geodesic))
            .collect();
        v.sort_by(f64::total_cmp);
        println!(
            "{s:>8} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e}",
            quantile_sorted(&v, 0.05),
            quantile_sorted(&v, 0.5),
            quantile_sorted(&v, 0.95),
            v[v.len() - 1]
        );
    }
    Ok(())
}
