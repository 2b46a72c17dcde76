//! Pauli-basis tomography of a single qubit: sampling, linear inversion and
//! the projection back into the Bloch ball.

use qubit_fanout::qstate::{bloch_to_density, geodesic_distance};
use qubit_fanout::rng::{ExperimentId, StreamFactory};
use qubit_fanout::tomography::{reconstruct_state, sample_pauli_counts, PauliBasis, PauliCounts};
use qubit_fanout::{BlochVector, Result};

fn main() -> Result<()> {
    let truth = BlochVector::new(0.6, 0.0, 0.8);
    let rho = bloch_to_density(&truth)?;
    let streams = StreamFactory::new(1, ExperimentId::Custom(0));

    for (i, shots) in [10u64, 100, 10_000, 1_000_000].into_iter().enumerate() {
        let counts = sample_pauli_counts(&rho, shots, &mut streams.stream(i as u64))?;
        let est = reconstruct_state(&counts);
        println!(
            "S={shots:>8} Z counts {:?} raw {} projected={} error {:.2e} rad",
            counts.get(PauliBasis::Z),
            est.raw,
            est.was_projected,
            geodesic_distance(&truth, &est.projected)?
        );
    }

    // Noise-free counts reconstruct the state up to rounding.
    let ideal = reconstruct_state(&PauliCounts::expected(&rho, 1_000_000)?);
    println!("expected counts -> {}", ideal.projected);
    Ok(())
}
