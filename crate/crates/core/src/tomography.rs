//! Pauli-basis tomography of a single qubit.
//!
//! Each of the X, Y and Z bases is measured `S` times. Counts are drawn as one
//! binomial per basis, which is distributionally identical to simulating the
//! individual shots. The Bloch vector is recovered by linear inversion and, if
//! that lands outside the ball, pulled back by the maximum-likelihood
//! physicality projection.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::qstate::{density_to_bloch, BlochVector, DensityMatrix2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl PauliBasis {
    pub const ALL: [PauliBasis; 3] = [PauliBasis::X, PauliBasis::Y, PauliBasis::Z];

    fn index(self) -> usize {
        match self {
            PauliBasis::X => 0,
            PauliBasis::Y => 1,
            PauliBasis::Z => 2,
        }
    }
}

/// Outcome tallies `(n_plus, n_minus)` for each Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliCounts {
    shots_per_basis: u64,
    counts: [(u64, u64); 3],
}

impl PauliCounts {
    /// Builds counts from the number of `+1` outcomes in X, Y and Z.
    pub fn from_plus_counts(shots_per_basis: u64, plus: [u64; 3]) -> Result<Self> {
        if shots_per_basis == 0 {
            return Err(Error::domain("shots per basis must be positive"));
        }
        if plus.iter().any(|&p| p > shots_per_basis) {
            return Err(Error::domain(format!(
                "plus counts {plus:?} exceed {shots_per_basis} shots"
            )));
        }
        Ok(Self {
            shots_per_basis,
            counts: plus.map(|p| (p, shots_per_basis - p)),
        })
    }

    /// Noise-free counts: each basis gets `round(S (1 + r_k) / 2)` plus outcomes.
    pub fn expected(state: &DensityMatrix2, shots_per_basis: u64) -> Result<Self> {
        let r = density_to_bloch(state)?.components();
        let s = shots_per_basis as f64;
        let plus = r.map(|rk| ((0.5 * (1.0 + rk) * s).round() as u64).min(shots_per_basis));
        Self::from_plus_counts(shots_per_basis, plus)
    }

    pub fn shots_per_basis(&self) -> u64 {
        self.shots_per_basis
    }

    pub fn get(&self, basis: PauliBasis) -> (u64, u64) {
        self.counts[basis.index()]
    }

    /// Qubits consumed by the whole measurement, `3 S`.
    pub fn total_shots(&self) -> u64 {
        3 * self.shots_per_basis
    }
}

/// Linear-inversion estimate together with its physical projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomographyEstimate {
    pub raw: BlochVector,
    pub projected: BlochVector,
    pub was_projected: bool,
}

/// Draws `S` shots in each Pauli basis. `p_k = (1 + r_k) / 2`.
pub fn sample_pauli_counts<R: Rng + ?Sized>(
    state: &DensityMatrix2,
    shots_per_basis: u64,
    rng: &mut R,
) -> Result<PauliCounts> {
    if shots_per_basis == 0 {
        return Err(Error::domain("shots per basis must be positive"));
    }
    let r = density_to_bloch(state)?.components();
    let mut plus = [0u64; 3];
    for (slot, rk) in plus.iter_mut().zip(r) {
        let p = (0.5 * (1.0 + rk)).clamp(0.0, 1.0);
        let dist = Binomial::new(shots_per_basis, p)
            .map_err(|e| Error::domain(format!("binomial({shots_per_basis}, {p}): {e}")))?;
        *slot = dist.sample(rng);
    }
    PauliCounts::from_plus_counts(shots_per_basis, plus)
}

/// `r_k = (n_plus - n_minus) / S`.
pub fn estimate_bloch(counts: &PauliCounts) -> BlochVector {
    let s = counts.shots_per_basis as f64;
    let [x, y, z] = counts
        .counts
        .map(|(plus, minus)| (plus as f64 - minus as f64) / s);
    BlochVector::new(x, y, z)
}

/// Maximum-likelihood physicality projection.
///
/// For a qubit, clipping the negative eigenvalue of the reconstructed matrix
/// and renormalising is the same as pulling the Bloch vector radially back
/// onto the sphere, so estimates inside the ball are returned unchanged.
pub fn project_physical(raw: &BlochVector) -> TomographyEstimate {
    let n = raw.norm();
    if n <= 1.0 {
        TomographyEstimate {
            raw: *raw,
            projected: *raw,
            was_projected: false,
        }
    } else {
        TomographyEstimate {
            raw: *raw,
            projected: raw.scale(1.0 / n),
            was_projected: true,
        }
    }
}

pub fn reconstruct_state(counts: &PauliCounts) -> TomographyEstimate {
    project_physical(&estimate_bloch(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::bloch_to_density;
    use crate::rng::{ExperimentId, StreamFactory};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn streams() -> StreamFactory {
        StreamFactory::new(7, ExperimentId::Custom(99))
    }

    #[test]
    fn pure_z_state_always_measures_plus_in_z() {
        let rho = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        for (i, s) in [1u64, 10, 1000, 1_000_000].into_iter().enumerate() {
            let c = sample_pauli_counts(&rho, s, &mut streams().stream(i as u64)).unwrap();
            assert_eq!(c.get(PauliBasis::Z), (s, 0));
            for b in PauliBasis::ALL {
                let (p, m) = c.get(b);
                assert_eq!(p + m, s);
            }
        }
    }

    #[test]
    fn maximally_mixed_state_is_a_fair_coin() {
        let rho = bloch_to_density(&BlochVector::ORIGIN).unwrap();
        let s = 1000u64;
        let trials = 400;
        let mut sum = [0f64; 3];
        for i in 0..trials {
            let c = sample_pauli_counts(&rho, s, &mut streams().stream(i)).unwrap();
            for (acc, b) in sum.iter_mut().zip(PauliBasis::ALL) {
                *acc += c.get(b).0 as f64;
            }
        }
        // mean of n_plus is S/2 with standard error sqrt(S/4 / trials)
        let se = (s as f64 / 4.0 / trials as f64).sqrt();
        for acc in sum {
            assert!((acc / trials as f64 - 500.0).abs() < 4.0 * se);
        }
    }

    #[test]
    fn mean_z_expectation_for_shrunk_state() {
        let rho = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0 / 3.0)).unwrap();
        let s = 1_000_000u64;
        let mean: f64 = (0..1000)
            .map(|i| {
                let c = sample_pauli_counts(&rho, s, &mut streams().stream(i)).unwrap();
                estimate_bloch(&c).z
            })
            .sum::<f64>()
            / 1000.0;
        assert!((mean - 1.0 / 3.0).abs() < 3e-3);
    }

    #[test]
    fn sampling_is_deterministic() {
        let rho = bloch_to_density(&BlochVector::new(0.3, -0.2, 0.5)).unwrap();
        let a = sample_pauli_counts(&rho, 12_345, &mut streams().stream(5)).unwrap();
        let b = sample_pauli_counts(&rho, 12_345, &mut streams().stream(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_shots_rejected() {
        let rho = bloch_to_density(&BlochVector::ORIGIN).unwrap();
        assert!(sample_pauli_counts(&rho, 0, &mut streams().stream(0)).is_err());
        assert!(PauliCounts::from_plus_counts(0, [0, 0, 0]).is_err());
        assert!(PauliCounts::from_plus_counts(4, [5, 0, 0]).is_err());
    }

    #[test]
    fn linear_inversion_examples() {
        let s = 400;
        let all_plus = PauliCounts::from_plus_counts(s, [s, s, s]).unwrap();
        assert_eq!(estimate_bloch(&all_plus), BlochVector::new(1.0, 1.0, 1.0));
        assert_eq!(all_plus.total_shots(), 1200);

        let balanced = PauliCounts::from_plus_counts(s, [s / 2; 3]).unwrap();
        assert_eq!(estimate_bloch(&balanced), BlochVector::ORIGIN);

        let z_half = PauliCounts::from_plus_counts(s, [s / 2, s / 2, 3 * s / 4]).unwrap();
        assert_eq!(estimate_bloch(&z_half), BlochVector::new(0.0, 0.0, 0.5));
    }

    #[test]
    fn projection_examples() {
        let inside = project_physical(&BlochVector::new(0.2, 0.0, 0.0));
        assert!(!inside.was_projected);
        assert_eq!(inside.projected, inside.raw);

        let outside = project_physical(&BlochVector::new(1.0, 1.0, 1.0));
        assert!(outside.was_projected);
        let k = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(outside.projected.x, k, epsilon = 1e-15);
        assert_abs_diff_eq!(outside.projected.y, k, epsilon = 1e-15);
        assert_abs_diff_eq!(outside.projected.z, k, epsilon = 1e-15);

        let boundary = project_physical(&BlochVector::new(0.0, 0.0, 1.0));
        assert!(!boundary.was_projected);
        assert_eq!(boundary.projected, BlochVector::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn reconstruct_composes_inversion_and_projection() {
        let c = PauliCounts::from_plus_counts(10, [10, 10, 10]).unwrap();
        let est = reconstruct_state(&c);
        assert!(est.was_projected);
        assert_abs_diff_eq!(est.projected.norm(), 1.0, epsilon = 1e-15);

        let c = PauliCounts::from_plus_counts(8, [4, 4, 6]).unwrap();
        let est = reconstruct_state(&c);
        assert!(!est.was_projected);
        assert_eq!(est.projected, BlochVector::new(0.0, 0.0, 0.5));
    }

    #[test]
    fn expected_counts_round_probabilities() {
        let rho = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0 / 3.0)).unwrap();
        let c = PauliCounts::expected(&rho, 300).unwrap();
        assert_eq!(c.get(PauliBasis::Z), (200, 100));
        assert_eq!(c.get(PauliBasis::X), (150, 150));
    }

    proptest! {
        #[test]
        fn projection_is_idempotent_and_never_grows(
            x in -2.0f64..2.0, y in -2.0f64..2.0, z in -2.0f64..2.0
        ) {
            let v = BlochVector::new(x, y, z);
            let once = project_physical(&v);
            let twice = project_physical(&once.projected);
            prop_assert!(once.projected.norm() <= 1.0 + 1e-12);
            prop_assert!(once.projected.norm() <= v.norm() + 1e-15);
            prop_assert!((twice.projected - once.projected).norm() < 1e-15);
            if once.was_projected {
                prop_assert!(v.norm() > 1.0);
            } else {
                prop_assert_eq!(once.projected, v);
            }
        }
    }
}
