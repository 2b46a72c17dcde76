use rayon::prelude::*;

use super::{require_pure, run_instance, ErrorSample, Method, Metric};
use crate::cloning::{emulate_clone_state, CloneParams};
use crate::error::{Error, Result};
use crate::qstate::{bloch_to_density, BlochVector, DensityMatrix2};
use crate::rng::{ExperimentId, StreamFactory};
use crate::stats::{mean, quantile_sorted};

/// Instances per unit of parallel work.
pub const DEFAULT_BATCH_SIZE: usize = 10_000;

/// Mean and 5/50/95 % quantiles of one metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSummary {
    pub mean: f64,
    pub p05: f64,
    pub p50: f64,
    pub p95: f64,
}

impl MetricSummary {
    fn from_values(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self {
            mean: mean(values),
            p05: quantile_sorted(&sorted, 0.05),
            p50: quantile_sorted(&sorted, 0.50),
            p95: quantile_sorted(&sorted, 0.95),
        }
    }
}

/// Aggregated errors at one `(method, M, S)` grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub method: Method,
    /// 1 for direct transmission.
    pub m_out: u64,
    pub shots_per_basis: u64,
    pub instances: usize,
    pub geodesic: MetricSummary,
    pub infidelity: MetricSummary,
}

impl SweepRecord {
    fn from_samples(method: Method, m_out: u64, shots: u64, samples: &[ErrorSample]) -> Self {
        let geo: Vec<f64> = samples.iter().map(|s| s.geodesic).collect();
        let inf: Vec<f64> = samples.iter().map(|s| s.infidelity).collect();
        Self {
            method,
            m_out,
            shots_per_basis: shots,
            instances: samples.len(),
            geodesic: MetricSummary::from_values(&geo),
            infidelity: MetricSummary::from_values(&inf),
        }
    }

    pub fn summary(&self, metric: Metric) -> &MetricSummary {
        match metric {
            Metric::Geodesic => &self.geodesic,
            Metric::Infidelity => &self.infidelity,
        }
    }

    pub fn mean(&self, metric: Metric) -> f64 {
        self.summary(metric).mean
    }
}

/// One raw sample of the error distribution experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionRow {
    pub m_out: u64,
    pub shots_per_basis: u64,
    pub instance: u64,
    pub sample: ErrorSample,
}

/// Settings for an error-vs-shots sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub method: Method,
    /// Clone counts; ignored for direct transmission.
    pub m_values: Vec<u64>,
    pub shots_grid: Vec<u64>,
    pub instances: usize,
    pub master_seed: u64,
    pub message: BlochVector,
    pub batch_size: usize,
}

impl SweepConfig {
    pub fn new(
        method: Method,
        m_values: Vec<u64>,
        shots_grid: Vec<u64>,
        instances: usize,
        master_seed: u64,
    ) -> Self {
        Self {
            method,
            m_values,
            shots_grid,
            instances,
            master_seed,
            message: super::default_message(),
            batch_size: DEFAULT_BATCH_SIZE,
        }
    }

    pub fn with_message(mut self, message: BlochVector) -> Self {
        self.message = message;
        self
    }

    pub fn with_batch_size(mut self, batch_size: usize) -> Self {
        self.batch_size = batch_size;
        self
    }
}

struct GridPoint {
    method: Method,
    m_out: u64,
    shots: u64,
    received: DensityMatrix2,
}

fn check_grid(m_values: Option<&[u64]>, shots_grid: &[u64], instances: usize) -> Result<()> {
    if shots_grid.is_empty() {
        return Err(Error::config("shots grid is empty"));
    }
    if shots_grid.contains(&0) {
        return Err(Error::config("shots grid entries must be positive"));
    }
    if instances == 0 {
        return Err(Error::config("instances must be at least 1"));
    }
    if let Some(ms) = m_values {
        if ms.is_empty() {
            return Err(Error::config("M grid is empty"));
        }
        if let Some(m) = ms.iter().find(|&&m| m < 2) {
            return Err(Error::config(format!("clone runs need M >= 2, got {m}")));
        }
    }
    Ok(())
}

fn grid_points(
    method: Method,
    message: &BlochVector,
    m_values: &[u64],
    shots_grid: &[u64],
) -> Result<Vec<GridPoint>> {
    require_pure(message)?;
    let mut points = Vec::new();
    match method {
        Method::Direct => {
            let received = bloch_to_density(message)?;
            for &shots in shots_grid {
                points.push(GridPoint {
                    method,
                    m_out: 1,
                    shots,
                    received,
                });
            }
        }
        Method::Clone => {
            for &m_out in m_values {
                let received = emulate_clone_state(message, &CloneParams::one_to(m_out)?)?;
                for &shots in shots_grid {
                    points.push(GridPoint {
                        method,
                        m_out,
                        shots,
                        received,
                    });
                }
            }
        }
    }
    Ok(points)
}

/// Runs `instances` samples at every point. Instance `i` of every point uses
/// stream `i`; work is split into `(point, batch)` jobs run in parallel and
/// reassembled in index order.
fn run_points(
    message: &BlochVector,
    points: &[GridPoint],
    instances: usize,
    streams: &StreamFactory,
    batch_size: usize,
) -> Result<Vec<Vec<ErrorSample>>> {
    let batch = batch_size.max(1);
    let jobs: Vec<(usize, usize, usize)> = (0..points.len())
        .flat_map(|p| {
            (0..instances)
                .step_by(batch)
                .map(move |start| (p, start, (start + batch).min(instances)))
        })
        .collect();

    let results: Vec<(usize, Vec<ErrorSample>)> = jobs
        .into_par_iter()
        .map(|(p, start, end)| {
            let point = &points[p];
            let samples = (start..end)
                .map(|i| {
                    let mut rng = streams.stream(i as u64);
                    run_instance(message, &point.received, point.shots, &mut rng)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((p, samples))
        })
        .collect::<Result<_>>()?;

    let mut grouped: Vec<Vec<ErrorSample>> = (0..points.len())
        .map(|_| Vec::with_capacity(instances))
        .collect();
    for (p, samples) in results {
        grouped[p].extend(samples);
    }
    Ok(grouped)
}

fn aggregate(points: &[GridPoint], samples: &[Vec<ErrorSample>]) -> Vec<SweepRecord> {
    points
        .iter()
        .zip(samples)
        .map(|(pt, s)| SweepRecord::from_samples(pt.method, pt.m_out, pt.shots, s))
        .collect()
}

/// Mean and quantile errors over a grid of shot counts (and clone counts).
///
/// Records come out in grid order: for each M, for each S.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let ms = (cfg.method == Method::Clone).then_some(cfg.m_values.as_slice());
    check_grid(ms, &cfg.shots_grid, cfg.instances)?;
    let points = grid_points(cfg.method, &cfg.message, &cfg.m_values, &cfg.shots_grid)?;
    let streams = StreamFactory::new(cfg.master_seed, ExperimentId::Sweep);
    let samples = run_points(
        &cfg.message,
        &points,
        cfg.instances,
        &streams,
        cfg.batch_size,
    )?;
    Ok(aggregate(&points, &samples))
}

/// Clone-pipeline error at a fixed `S` as the clone count grows.
pub fn converge_in_m(
    m_grid: &[u64],
    shots_per_basis: u64,
    instances: usize,
    master_seed: u64,
    message: &BlochVector,
) -> Result<Vec<SweepRecord>> {
    check_grid(Some(m_grid), &[shots_per_basis], instances)?;
    let points = grid_points(Method::Clone, message, m_grid, &[shots_per_basis])?;
    let streams = StreamFactory::new(master_seed, ExperimentId::ConvergeInM);
    let samples = run_points(message, &points, instances, &streams, DEFAULT_BATCH_SIZE)?;
    Ok(aggregate(&points, &samples))
}

/// Every individual clone-pipeline sample at each shot count, for one `M`.
pub fn error_distribution(
    m_out: u64,
    shots_grid: &[u64],
    instances_per_point: usize,
    master_seed: u64,
    message: &BlochVector,
) -> Result<Vec<DistributionRow>> {
    check_grid(Some(&[m_out]), shots_grid, instances_per_point)?;
    let points = grid_points(Method::Clone, message, &[m_out], shots_grid)?;
    let streams = StreamFactory::new(master_seed, ExperimentId::Distribution);
    let samples = run_points(
        message,
        &points,
        instances_per_point,
        &streams,
        DEFAULT_BATCH_SIZE,
    )?;
    Ok(points
        .iter()
        .zip(samples)
        .flat_map(|(pt, s)| {
            s.into_iter()
                .enumerate()
                .map(move |(i, sample)| DistributionRow {
                    m_out: pt.m_out,
                    shots_per_basis: pt.shots,
                    instance: i as u64,
                    sample,
                })
        })
        .collect())
}
