//! Where cloning starts to pay off: the receiver count M* at which Alice
//! prepares the same number of qubits either way for a given error target.

use qubit_fanout::experiments::{compute_breakeven, sweep, Method, SweepConfig};
use qubit_fanout::io::breakeven_targets;
use qubit_fanout::io::config::{default_shots_grid, DEFAULT_CLONE_GRID};
use qubit_fanout::Result;

fn main() -> Result<()> {
    let seed = 11;
    let shots = default_shots_grid();
    let direct = sweep(&SweepConfig::new(
        Method::Direct,
        vec![],
        shots.clone(),
        200,
        seed,
    ))?;
    let clone = sweep(&SweepConfig::new(
        Method::Clone,
        DEFAULT_CLONE_GRID.to_vec(),
        shots,
        200,
        seed,
    ))?;

    let targets = breakeven_targets(&direct, &clone, 8)?;
    println!(
        "{:<11} {:>11} {:>9} {:>12} {:>12}",
        "metric", "error", "M*", "S direct", "S clone"
    );
    for r in compute_breakeven(&direct, &clone, &targets)? {
        let fmt = |v: Option<f64>, p: usize| v.map_or("unreachable".into(), |x| format!("{x:.p$}"));
        println!(
            "{:<11} {:>11.3e} {:>9} {:>12} {:>12}",
            r.metric.to_string(),
            r.target_error,
            fmt(r.breakeven_m, 2),
            fmt(r.shots_direct_at_eps, 0),
            fmt(r.shots_clone_at_eps, 0)
        );
    }
    Ok(())
}
