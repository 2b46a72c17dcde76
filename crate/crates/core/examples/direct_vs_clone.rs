//! Direct tomography against tomography on clones, over a grid of shots per
//! basis. Writes a CSV and an SVG chart under `target/examples-out/`.

use qubit_fanout::experiments::{sweep, Method, Metric, SweepConfig};
use qubit_fanout::io::config::{default_shots_grid, ExperimentKind, RunConfig};
use qubit_fanout::io::output::{write_results, RunResults};
use qubit_fanout::Result;

fn main() -> Result<()> {
    let seed = 2024;
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
        vec![2, 10, 100],
        shots,
        200,
        seed,
    ))?;

    println!(
        "{:>9} {:>11} {:>11} {:>11} {:>11}",
        "S", "direct", "M=2", "M=10", "M=100"
    );
    for (i, d) in direct.iter().enumerate().step_by(4) {
        let per_m: Vec<String> = clone
            .chunks(direct.len())
            .map(|c| format!("{:>11.3e}", c[i].mean(Metric::Geodesic)))
            .collect();
        println!(
            "{:>9} {:>11.3e} {}",
            d.shots_per_basis,
            d.mean(Metric::Geodesic),
            per_m.join(" ")
        );
    }

    let mut cfg = RunConfig::defaults(ExperimentKind::SweepClone, seed);
    cfg.m_values = vec![2, 10, 100];
    cfg.output_path = "target/examples-out/direct_vs_clone".into();
    cfg.emit_plot = true;
    let mut records = direct;
    records.extend(clone);
    let files = write_results(&RunResults::Sweep(records), &cfg)?;
    println!("wrote {}", files.csv.display());
    Ok(())
}
