//! The optimal 1 -> M cloner as a Bloch-vector shrink, checked against the
//! symmetric-subspace construction of the clone's reduced state.

use qubit_fanout::cloning::{
    emulate_clone_state, gisin_massar_single_clone_marginal, optimal_fidelity, CloneParams,
};
use qubit_fanout::experiments::default_message;
use qubit_fanout::verify::{verify_oracle, OracleConfig};
use qubit_fanout::Result;

fn main() -> Result<()> {
    let message = default_message();
    println!(
        "{:>8} {:>10} {:>10} {:>12}",
        "M", "eta", "fidelity", "oracle diff"
    );
    for m in [2u64, 3, 10, 100, 1_000, 100_000] {
        let params = CloneParams::one_to(m)?;
        let emulated = emulate_clone_state(&message, &params)?;
        let oracle = gisin_massar_single_clone_marginal(&message, m)?;
        println!(
            "{m:>8} {:>10.6} {:>10.6} {:>12.2e}",
            params.eta(),
            optimal_fidelity(1, m)?,
            emulated.max_abs_diff(&oracle)
        );
    }

    // Full check: exact agreement on random messages plus a shot-noise
    // comparison of the two states through tomography.
    let report = verify_oracle(&OracleConfig::new(vec![2, 3, 16], 100, 7))?;
    println!("{report}");
    Ok(())
}
