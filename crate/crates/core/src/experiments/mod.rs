//! End-to-end protocol instances and the experiments built on them.
//!
//! One instance is: prepare the state a receiver gets (the message itself for
//! direct transmission, an emulated clone otherwise), run Pauli tomography
//! with shot noise, extrapolate the reconstruction onto the sphere and score
//! it against the message.

mod breakeven;
mod sweep;

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cloning::{emulate_clone_state, CloneParams, PURE_TOL};
use crate::error::{Error, Result};
use crate::qstate::{
    bloch_to_density, extrapolate_to_sphere, fidelity, geodesic_distance, BlochVector,
    DensityMatrix2,
};
use crate::tomography::{reconstruct_state, sample_pauli_counts, PauliCounts, TomographyEstimate};

pub use breakeven::{achievable_range, compute_breakeven, BreakevenRecord};
pub use sweep::{
    converge_in_m, error_distribution, sweep, DistributionRow, SweepConfig, SweepRecord,
    DEFAULT_BATCH_SIZE,
};

/// Message used when none is given: equal weight on all three Pauli axes.
pub fn default_message() -> BlochVector {
    let k = 1.0 / 3f64.sqrt();
    BlochVector::new(k, k, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Clone,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Clone => "clone",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Geodesic,
    Infidelity,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Geodesic, Metric::Infidelity];

    /// Largest value the metric can take.
    pub fn maximum(self) -> f64 {
        match self {
            Metric::Geodesic => PI,
            Metric::Infidelity => 1.0,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Geodesic => "geodesic",
            Metric::Infidelity => "infidelity",
        })
    }
}

/// Error of one reconstructed message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    /// Radians on the Bloch sphere.
    pub geodesic: f64,
    pub infidelity: f64,
    /// Reconstruction had no direction; the sample carries the maximal error.
    pub degenerate: bool,
}

impl ErrorSample {
    pub const MAXIMAL: ErrorSample = ErrorSample {
        geodesic: PI,
        infidelity: 1.0,
        degenerate: true,
    };

    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Geodesic => self.geodesic,
            Metric::Infidelity => self.infidelity,
        }
    }
}

fn require_pure(message: &BlochVector) -> Result<()> {
    if !message.is_finite() || !message.is_pure(PURE_TOL) {
        return Err(Error::domain(format!(
            "message {message} must be a pure state (norm 1)"
        )));
    }
    Ok(())
}

/// Scores a tomography estimate: extrapolate to the sphere, then compare with
/// the message by geodesic distance and by infidelity of the two pure states.
pub fn score_estimate(message: &BlochVector, estimate: &TomographyEstimate) -> Result<ErrorSample> {
    let ext = extrapolate_to_sphere(&estimate.projected);
    let Some(point) = ext.surface_point() else {
        return Ok(ErrorSample::MAXIMAL);
    };
    let geodesic = geodesic_distance(message, &point)?;
    let f = fidelity(&bloch_to_density(message)?, &bloch_to_density(&point)?)?;
    Ok(ErrorSample {
        geodesic,
        infidelity: (1.0 - f).clamp(0.0, 1.0),
        degenerate: false,
    })
}

/// Reconstructs from `counts` and scores against `message`.
pub fn score_counts(message: &BlochVector, counts: &PauliCounts) -> Result<ErrorSample> {
    score_estimate(message, &reconstruct_state(counts))
}

/// One instance of the pipeline for a receiver holding copies of `received`.
pub fn run_instance<R: Rng + ?Sized>(
    message: &BlochVector,
    received: &DensityMatrix2,
    shots_per_basis: u64,
    rng: &mut R,
) -> Result<ErrorSample> {
    let counts = sample_pauli_counts(received, shots_per_basis, rng)?;
    score_counts(message, &counts)
}

/// Direct transmission: the receiver measures `S` copies of the message per basis.
pub fn run_direct_instance<R: Rng + ?Sized>(
    message: &BlochVector,
    shots_per_basis: u64,
    rng: &mut R,
) -> Result<ErrorSample> {
    require_pure(message)?;
    run_instance(message, &bloch_to_density(message)?, shots_per_basis, rng)
}

/// Transmission through a 1 -> M cloner: the receiver measures `S` clones per
/// basis, each from a separate cloning run. Alice prepares `3 S` qubits in
/// total for the whole network.
pub fn run_clone_instance<R: Rng + ?Sized>(
    message: &BlochVector,
    m_out: u64,
    shots_per_basis: u64,
    rng: &mut R,
) -> Result<ErrorSample> {
    if m_out < 2 {
        return Err(Error::domain(format!(
            "clone pipeline needs M >= 2, got {m_out}"
        )));
    }
    require_pure(message)?;
    let clone = emulate_clone_state(message, &CloneParams::one_to(m_out)?)?;
    run_instance(message, &clone, shots_per_basis, rng)
}
