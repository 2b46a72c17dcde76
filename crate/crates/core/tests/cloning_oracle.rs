use qubit_fanout::cloning::{
    emulate_clone_state, gisin_massar_single_clone_marginal, optimal_fidelity, shrinking_factor,
    CloneParams,
};
use qubit_fanout::qstate::{bloch_to_density, density_to_bloch, fidelity};
use qubit_fanout::rng::{ExperimentId, StreamFactory};
use qubit_fanout::verify::random_pure_state;

#[test]
fn shrinking_factor_and_fidelity_agree_exhaustively() {
    let mut worst = 0.0f64;
    for m in 1..=1000u64 {
        for n in 1..=m {
            let lhs = (1.0 + shrinking_factor(n, m).unwrap()) / 2.0;
            worst = worst.max((lhs - optimal_fidelity(n, m).unwrap()).abs());
        }
    }
    assert!(worst <= 1e-12, "{worst:e}");
}

#[test]
fn oracle_matches_emulation_for_random_messages() {
    let mut rng = StreamFactory::new(11, ExperimentId::Custom(2)).stream(0);
    let messages: Vec<_> = (0..100).map(|_| random_pure_state(&mut rng)).collect();
    for m in 2..=64u64 {
        let params = CloneParams::one_to(m).unwrap();
        for msg in &messages {
            let a = emulate_clone_state(msg, &params).unwrap();
            let b = gisin_massar_single_clone_marginal(msg, m).unwrap();
            assert!(a.max_abs_diff(&b) <= 1e-12, "M={m} msg={msg}");
        }
    }
}

#[test]
fn emulated_clones_are_valid_states() {
    let mut rng = StreamFactory::new(12, ExperimentId::Custom(2)).stream(0);
    for _ in 0..200 {
        let msg = random_pure_state(&mut rng);
        for (n, m) in [(1, 2), (1, 1000), (3, 7), (5, 5)] {
            let rho = emulate_clone_state(&msg, &CloneParams::new(n, m).unwrap()).unwrap();
            let [lo, hi] = rho.eigenvalues();
            assert!(lo >= -1e-12 && hi <= 1.0 + 1e-12);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            let r = density_to_bloch(&rho).unwrap();
            let f = fidelity(&bloch_to_density(&msg).unwrap(), &rho).unwrap();
            // the message is pure, so its determinant is rounding noise that the
            // square root in the closed form amplifies to ~1e-9
            assert!((f - optimal_fidelity(n, m).unwrap()).abs() < 1e-7);
            assert!(r.cross(&msg).norm() < 1e-12);
        }
    }
}

#[test]
fn oracle_holds_at_large_m() {
    let msg = qubit_fanout::BlochVector::from_angles(2.2, 0.9);
    for m in [1000u64, 100_000] {
        let a = emulate_clone_state(&msg, &CloneParams::one_to(m).unwrap()).unwrap();
        let b = gisin_massar_single_clone_marginal(&msg, m).unwrap();
        assert!(
            a.max_abs_diff(&b) < 1e-10,
            "M={m}: {:e}",
            a.max_abs_diff(&b)
        );
    }
}
