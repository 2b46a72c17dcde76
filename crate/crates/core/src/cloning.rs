//! Universal symmetric optimal N -> M cloning of a qubit.
//!
//! A single clone of the optimal cloner is the input state with its Bloch
//! vector contracted by the shrinking factor `eta(N, M)`. [`emulate_clone_state`]
//! uses that directly; [`gisin_massar_single_clone_marginal`] rebuilds the
//! same marginal term by term from the symmetric-subspace form of the 1 -> M
//! output and serves as an independent check.

use crate::error::{Error, Result};
use crate::qstate::{bloch_to_density, BlochVector, DensityMatrix2};

/// Largest clone count accepted by the symmetric-subspace oracle.
pub const ORACLE_MAX_M: u64 = 1_000_000;

/// Tolerance on the message norm for pure-state inputs.
pub const PURE_TOL: f64 = 1e-9;

/// Parameters of a universal symmetric N -> M cloner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CloneParams {
    n_in: u64,
    m_out: u64,
    eta: f64,
}

impl CloneParams {
    pub fn new(n_in: u64, m_out: u64) -> Result<Self> {
        let eta = shrinking_factor(n_in, m_out)?;
        Ok(Self { n_in, m_out, eta })
    }

    /// The 1 -> M cloner used throughout the distribution protocol.
    pub fn one_to(m_out: u64) -> Result<Self> {
        Self::new(1, m_out)
    }

    pub fn n_in(&self) -> u64 {
        self.n_in
    }

    pub fn m_out(&self) -> u64 {
        self.m_out
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Copy with `eta` shifted by `delta`. Exists only so oracle checks can be
    /// exercised against a deliberately wrong emulation.
    #[doc(hidden)]
    pub fn with_eta_offset(&self, delta: f64) -> Self {
        Self {
            eta: self.eta + delta,
            ..*self
        }
    }
}

fn check_counts(n_in: u64, m_out: u64) -> Result<()> {
    if n_in < 1 || n_in > m_out {
        return Err(Error::domain(format!(
            "cloning requires 1 <= N <= M, got N = {n_in}, M = {m_out}"
        )));
    }
    Ok(())
}

/// `eta(N, M) = (N/M) (M+2)/(N+2)`.
pub fn shrinking_factor(n_in: u64, m_out: u64) -> Result<f64> {
    check_counts(n_in, m_out)?;
    let (n, m) = (n_in as f64, m_out as f64);
    Ok((n / m) * ((m + 2.0) / (n + 2.0)))
}

/// Optimal single-clone fidelity `(MN + M + N) / (M (N+2))`.
pub fn optimal_fidelity(n_in: u64, m_out: u64) -> Result<f64> {
    check_counts(n_in, m_out)?;
    let (n, m) = (n_in as f64, m_out as f64);
    Ok((m * n + m + n) / (m * (n + 2.0)))
}

fn require_pure(message: &BlochVector) -> Result<()> {
    if !message.is_finite() || !message.is_pure(PURE_TOL) {
        return Err(Error::domain(format!(
            "message {message} must be a pure state (norm 1), norm is {}",
            message.norm()
        )));
    }
    Ok(())
}

/// Reduced state of one clone: the message with its Bloch vector scaled by eta.
pub fn emulate_clone_state(message: &BlochVector, params: &CloneParams) -> Result<DensityMatrix2> {
    require_pure(message)?;
    bloch_to_density(&message.scale(params.eta()))
}

/// Squared amplitudes of the 1 -> M optimal cloner output over the
/// symmetric-subspace basis, `alpha_j^2 = 2 (M - j) / (M (M + 1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GisinMassarWeights {
    m_out: u64,
    weights: Vec<f64>,
}

impl GisinMassarWeights {
    pub fn new(m_out: u64) -> Result<Self> {
        if m_out < 1 {
            return Err(Error::domain("clone count must be positive"));
        }
        let m = m_out as f64;
        let norm = m * (m + 1.0);
        let weights = (0..m_out).map(|j| 2.0 * (m - j as f64) / norm).collect();
        Ok(Self { m_out, weights })
    }

    pub fn m_out(&self) -> u64 {
        self.m_out
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Single-clone marginal of the optimal 1 -> M cloner, summed explicitly over
/// the symmetric-subspace components.
///
/// Component `j` has `M - j` clones in the message state and `j` in its
/// orthogonal complement, so a single clone sees `|psi><psi|` with weight
/// `(M - j)/M` and `|psi_perp><psi_perp|` with weight `j/M`.
pub fn gisin_massar_single_clone_marginal(
    message: &BlochVector,
    m_out: u64,
) -> Result<DensityMatrix2> {
    require_pure(message)?;
    if !(2..=ORACLE_MAX_M).contains(&m_out) {
        return Err(Error::domain(format!(
            "oracle supports 2 <= M <= {ORACLE_MAX_M}, got {m_out}"
        )));
    }
    let psi = bloch_to_density(message)?.entries();
    let perp = bloch_to_density(&-*message)?.entries();
    let weights = GisinMassarWeights::new(m_out)?;
    let m = m_out as f64;

    let mut acc = [num_complex::Complex64::new(0.0, 0.0); 4];
    for (j, w) in weights.weights().iter().enumerate() {
        let keep = w * (m - j as f64) / m;
        let flip = w * (j as f64) / m;
        for k in 0..4 {
            acc[k] += psi[k] * keep + perp[k] * flip;
        }
    }
    DensityMatrix2::new(acc[0], acc[1], acc[2], acc[3])
}
