//! Checks the clone emulation against the symmetric-subspace oracle.
//!
//! Two levels: the exact single-clone marginals must agree entrywise, and the
//! full tomography pipeline run on each of them (with independent streams)
//! must give statistically indistinguishable mean geodesic errors.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;

use crate::cloning::{emulate_clone_state, gisin_massar_single_clone_marginal, CloneParams};
use crate::error::{Error, Result};
use crate::experiments::run_instance;
use crate::qstate::{BlochVector, DensityMatrix2};
use crate::rng::{ExperimentId, StreamFactory};
use crate::stats::{mean, std_dev};

/// Largest entrywise deviation tolerated between emulation and oracle.
pub const EXACT_TOL: f64 = 1e-12;

/// Two-sided threshold, in standard errors, for the sampling comparison.
pub const Z_THRESHOLD: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub m_list: Vec<u64>,
    /// Random pure messages checked per M in the exact comparison.
    pub trials: usize,
    pub master_seed: u64,
    pub stat_shots: Vec<u64>,
    pub stat_instances: usize,
    /// Added to eta on the emulation side; non-zero only as a negative control.
    pub eta_offset: f64,
}

impl OracleConfig {
    pub fn new(m_list: Vec<u64>, trials: usize, master_seed: u64) -> Self {
        Self {
            m_list,
            trials,
            master_seed,
            stat_shots: vec![100, 10_000],
            stat_instances: 1000,
            eta_offset: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCheck {
    pub m_out: u64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticalCheck {
    pub m_out: u64,
    pub shots_per_basis: u64,
    pub mean_emulated: f64,
    pub mean_oracle: f64,
    pub z_score: f64,
}

impl StatisticalCheck {
    pub fn passed(&self) -> bool {
        self.z_score.abs() <= Z_THRESHOLD
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub exact: Vec<ExactCheck>,
    pub statistical: Vec<StatisticalCheck>,
}

impl OracleReport {
    pub fn max_deviation(&self) -> f64 {
        self.exact
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn exact_passed(&self) -> bool {
        self.max_deviation() <= EXACT_TOL
    }

    pub fn passed(&self) -> bool {
        self.exact_passed() && self.statistical.iter().all(StatisticalCheck::passed)
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.exact {
            writeln!(
                f,
                "exact   M={:<8} max deviation {:.3e}",
                c.m_out, c.max_deviation
            )?;
        }
        for c in &self.statistical {
            writeln!(
                f,
                "sampled M={:<8} S={:<8} emulated {:.6e} oracle {:.6e} z={:+.2} {}",
                c.m_out,
                c.shots_per_basis,
                c.mean_emulated,
                c.mean_oracle,
                c.z_score,
                if c.passed() { "pass" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "max deviation {:.3e} (tolerance {:.0e}): {}",
            self.max_deviation(),
            EXACT_TOL,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Uniformly distributed pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let rho = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::new(rho * phi.cos(), rho * phi.sin(), z)
}

fn mean_geodesic(
    message: &BlochVector,
    state: &DensityMatrix2,
    shots: u64,
    instances: usize,
    streams: &StreamFactory,
) -> Result<(f64, f64)> {
    let errs = (0..instances)
        .map(|i| {
            run_instance(message, state, shots, &mut streams.stream(i as u64)).map(|e| e.geodesic)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((mean(&errs), std_dev(&errs) / (instances as f64).sqrt()))
}

pub fn verify_oracle(cfg: &OracleConfig) -> Result<OracleReport> {
    if cfg.m_list.is_empty() {
        return Err(Error::config("oracle check needs at least one M"));
    }
    if cfg.trials == 0 || cfg.stat_instances < 2 {
        return Err(Error::config(
            "oracle check needs trials >= 1 and at least 2 sampled instances",
        ));
    }
    let mut msg_rng = StreamFactory::new(cfg.master_seed, ExperimentId::Custom(0x0AC1E)).stream(0);
    let messages: Vec<BlochVector> = (0..cfg.trials)
        .map(|_| random_pure_state(&mut msg_rng))
        .collect();

    let mut exact = Vec::with_capacity(cfg.m_list.len());
    for &m in &cfg.m_list {
        let params = CloneParams::one_to(m)?.with_eta_offset(cfg.eta_offset);
        let mut worst = 0.0f64;
        for msg in &messages {
            let emulated = emulate_clone_state(msg, &params)?;
            let oracle = gisin_massar_single_clone_marginal(msg, m)?;
            worst = worst.max(emulated.max_abs_diff(&oracle));
        }
        exact.push(ExactCheck {
            m_out: m,
            max_deviation: worst,
        });
    }

    let emu_streams = StreamFactory::new(cfg.master_seed, ExperimentId::OracleEmulated);
    let orc_streams = StreamFactory::new(cfg.master_seed, ExperimentId::OracleMarginal);
    let message = messages[0];
    let mut statistical = Vec::new();
    for &m in &cfg.m_list {
        let params = CloneParams::one_to(m)?.with_eta_offset(cfg.eta_offset);
        let emulated = emulate_clone_state(&message, &params)?;
        let oracle = gisin_massar_single_clone_marginal(&message, m)?;
        for &s in &cfg.stat_shots {
            let (me, se) = mean_geodesic(&message, &emulated, s, cfg.stat_instances, &emu_streams)?;
            let (mo, so) = mean_geodesic(&message, &oracle, s, cfg.stat_instances, &orc_streams)?;
            let denom = (se * se + so * so).sqrt();
            let z_score = if denom > 0.0 { (me - mo) / denom } else { 0.0 };
            statistical.push(StatisticalCheck {
                m_out: m,
                shots_per_basis: s,
                mean_emulated: me,
                mean_oracle: mo,
                z_score,
            });
        }
    }
    Ok(OracleReport { exact, statistical })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_m_values_pass() {
        let r = verify_oracle(&OracleConfig::new(vec![2, 3], 20, 1)).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.max_deviation() < 1e-12);
        assert_eq!(r.statistical.len(), 4);
    }

    #[test]
    fn large_m_passes() {
        let mut cfg = OracleConfig::new(vec![64], 10, 2);
        cfg.stat_instances = 200;
        assert!(verify_oracle(&cfg).unwrap().passed());
    }

    #[test]
    fn corrupted_eta_fails() {
        let mut cfg = OracleConfig::new(vec![2, 3], 5, 3);
        cfg.eta_offset = 1e-3;
        cfg.stat_instances = 50;
        let r = verify_oracle(&cfg).unwrap();
        assert!(!r.exact_passed());
        assert!(!r.passed());
    }

    #[test]
    fn random_states_are_pure() {
        let mut rng = StreamFactory::new(0, ExperimentId::Custom(5)).stream(0);
        for _ in 0..100 {
            assert!(random_pure_state(&mut rng).is_pure(1e-12));
        }
    }

    #[test]
    fn empty_config_rejected() {
        assert!(verify_oracle(&OracleConfig::new(vec![], 5, 0)).is_err());
        assert!(verify_oracle(&OracleConfig::new(vec![2], 0, 0)).is_err());
    }
}
