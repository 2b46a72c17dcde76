//! At a fixed shot budget the clone error stops depending on M once the
//! shrinking factor has settled near 1/3.

use qubit_fanout::cloning::shrinking_factor;
use qubit_fanout::experiments::{converge_in_m, default_message, Metric};
use qubit_fanout::Result;

fn main() -> Result<()> {
    let m_grid = [2, 3, 10, 100, 1_000, 10_000, 100_000, 1_000_000];
    let records = converge_in_m(&m_grid, 1_000_000, 200, 5, &default_message())?;
    println!(
        "{:>9} {:>9} {:>12} {:>12}",
        "M", "eta", "geodesic", "infidelity"
    );
    for r in &records {
        println!(
            "{:>9} {:>9.6} {:>12.4e} {:>12.4e}",
            r.m_out,
            shrinking_factor(1, r.m_out)?,
            r.mean(Metric::Geodesic),
            r.mean(Metric::Infidelity)
        );
    }
    Ok(())
}
