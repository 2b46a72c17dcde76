use qubit_fanout::qstate::{bloch_to_density, geodesic_distance, BlochVector};
use qubit_fanout::rng::{ExperimentId, StreamFactory};
use qubit_fanout::stats::{loglog_fit, mean};
use qubit_fanout::tomography::{estimate_bloch, reconstruct_state, sample_pauli_counts};

#[test]
fn linear_inversion_is_unbiased() {
    let truth = BlochVector::new(0.4, -0.3, 0.6);
    let rho = bloch_to_density(&truth).unwrap();
    let shots = 10_000u64;
    let trials = 2000;
    let streams = StreamFactory::new(31, ExperimentId::Custom(10));
    let mut sum = [0.0f64; 3];
    for i in 0..trials {
        let est =
            estimate_bloch(&sample_pauli_counts(&rho, shots, &mut streams.stream(i)).unwrap());
        for (acc, c) in sum.iter_mut().zip(est.components()) {
            *acc += c;
        }
    }
    for (acc, r) in sum.iter().zip(truth.components()) {
        let se = ((1.0 - r * r) / shots as f64).sqrt() / (trials as f64).sqrt();
        let m = acc / trials as f64;
        assert!((m - r).abs() < 4.0 * se, "mean {m} vs {r} (se {se:e})");
    }
}

#[test]
fn reconstruction_error_scales_as_inverse_sqrt_shots() {
    let truth = BlochVector::from_angles(1.1, 0.3).scale(1.0 / 3.0);
    let rho = bloch_to_density(&truth).unwrap();
    let streams = StreamFactory::new(32, ExperimentId::Custom(11));
    let shots = [100u64, 1_000, 10_000, 100_000];
    let errs: Vec<f64> = shots
        .iter()
        .map(|&s| {
            let e: Vec<f64> = (0..400)
                .map(|i| {
                    let c = sample_pauli_counts(&rho, s, &mut streams.stream(i)).unwrap();
                    geodesic_distance(&truth, &reconstruct_state(&c).projected).unwrap()
                })
                .collect();
            mean(&e)
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    let xs: Vec<f64> = shots.iter().map(|&s| s as f64).collect();
    let (slope, _) = loglog_fit(&xs, &errs);
    assert!((slope + 0.5).abs() <= 0.1, "slope {slope}");
}

#[test]
fn counts_are_bit_identical_for_same_seed() {
    let rho = bloch_to_density(&BlochVector::new(0.1, 0.2, 0.3)).unwrap();
    for seed in [0u64, 1, u64::MAX] {
        let a = sample_pauli_counts(
            &rho,
            777,
            &mut StreamFactory::new(seed, ExperimentId::Sweep).stream(4),
        )
        .unwrap();
        let b = sample_pauli_counts(
            &rho,
            777,
            &mut StreamFactory::new(seed, ExperimentId::Sweep).stream(4),
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
