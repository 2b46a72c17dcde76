//! Configuration, result files and the command-line driver.

pub mod cli;
pub mod config;
pub mod output;
pub mod svg;

pub use config::{parse_config, ExperimentKind, RunConfig, RunOptions};
pub use output::{render_csv, render_json, write_results, RunResults, WrittenFiles};

use crate::error::{Error, Result};
use crate::experiments::{
    achievable_range, compute_breakeven, converge_in_m, error_distribution, sweep, Method, Metric,
    SweepConfig,
};
use crate::stats::log_space;
use crate::verify::{verify_oracle, OracleConfig};

/// Target errors for the breakeven: `points` log-spaced values spanning the
/// error range reached by the direct curve and every clone curve.
pub fn breakeven_targets(
    direct: &[crate::experiments::SweepRecord],
    clone: &[crate::experiments::SweepRecord],
    points: usize,
) -> Result<Vec<(Metric, f64)>> {
    let mut grid = Vec::new();
    for metric in Metric::ALL {
        let (lo, hi) = achievable_range(direct, clone, metric)?.ok_or_else(|| {
            Error::config(format!("direct and clone {metric} curves do not overlap"))
        })?;
        grid.extend(log_space(lo, hi, points).into_iter().map(|e| (metric, e)));
    }
    Ok(grid)
}

/// Runs the configured experiment on the current rayon pool.
pub fn run_experiment(cfg: &RunConfig, opts: &RunOptions) -> Result<RunResults> {
    cfg.validate()?;
    let sweep_cfg = |method| {
        SweepConfig::new(
            method,
            cfg.m_values.clone(),
            cfg.shots_grid.clone(),
            cfg.instances,
            cfg.master_seed,
        )
        .with_message(cfg.message)
    };
    Ok(match cfg.experiment {
        ExperimentKind::SweepDirect => RunResults::Sweep(sweep(&sweep_cfg(Method::Direct))?),
        ExperimentKind::SweepClone => RunResults::Sweep(sweep(&sweep_cfg(Method::Clone))?),
        ExperimentKind::ConvergeM => RunResults::Sweep(converge_in_m(
            &cfg.m_values,
            cfg.shots_grid[0],
            cfg.instances,
            cfg.master_seed,
            &cfg.message,
        )?),
        ExperimentKind::Breakeven => {
            let direct = sweep(&sweep_cfg(Method::Direct))?;
            let clone = sweep(&sweep_cfg(Method::Clone))?;
            let targets = breakeven_targets(&direct, &clone, cfg.error_points)?;
            let records = compute_breakeven(&direct, &clone, &targets)?;
            RunResults::Breakeven {
                direct,
                clone,
                records,
            }
        }
        ExperimentKind::Distribution => RunResults::Distribution(error_distribution(
            cfg.m_values[0],
            &cfg.shots_grid,
            cfg.instances,
            cfg.master_seed,
            &cfg.message,
        )?),
        ExperimentKind::VerifyOracle => {
            let mut oc = OracleConfig::new(cfg.m_values.clone(), cfg.instances, cfg.master_seed);
            oc.stat_shots = cfg.shots_grid.clone();
            oc.eta_offset = opts.eta_offset;
            RunResults::Oracle(verify_oracle(&oc)?)
        }
    })
}
