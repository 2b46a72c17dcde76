//! Result files: CSV (canonical), JSON config sidecar, optional SVG chart.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::RunConfig;
use super::svg::{self, Panel, Series};
use crate::error::{Error, Result};
use crate::experiments::{BreakevenRecord, DistributionRow, Method, Metric, SweepRecord};
use crate::stats::quantile_sorted;
use crate::verify::OracleReport;

pub const SCHEMA_VERSION: u32 = 1;

pub const SWEEP_HEADER: &str =
    "experiment,method,metric,m,shots_per_basis,instances,mean,p05,p50,p95,seed";
pub const BREAKEVEN_HEADER: &str =
    "metric,target_error,breakeven_m,shots_direct,shots_clone,seed,breakeven_m_ceil";
pub const DISTRIBUTION_HEADER: &str =
    "experiment,m,shots_per_basis,instance,geodesic,infidelity,degenerate,seed";
pub const ORACLE_HEADER: &str =
    "check,m,shots_per_basis,max_deviation,mean_emulated,mean_oracle,z_score,passed,seed";

/// Output of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub enum RunResults {
    Sweep(Vec<SweepRecord>),
    Breakeven {
        direct: Vec<SweepRecord>,
        clone: Vec<SweepRecord>,
        records: Vec<BreakevenRecord>,
    },
    Distribution(Vec<DistributionRow>),
    Oracle(OracleReport),
}

impl RunResults {
    pub fn is_empty(&self) -> bool {
        match self {
            RunResults::Sweep(r) => r.is_empty(),
            RunResults::Breakeven { records, .. } => records.is_empty(),
            RunResults::Distribution(r) => r.is_empty(),
            RunResults::Oracle(r) => r.exact.is_empty(),
        }
    }
}

/// Paths written by [`write_results`].
#[derive(Debug, Clone, PartialEq)]
pub struct WrittenFiles {
    pub csv: PathBuf,
    pub json: PathBuf,
    pub svg: Option<PathBuf>,
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn opt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "unreachable".to_string(), num)
}

fn config_json(cfg: &RunConfig) -> String {
    serde_json::to_string(cfg).expect("RunConfig serializes")
}

/// Renders the CSV for `results`. Starts with `# schema=1` and a `# config=`
/// line holding the complete run configuration.
pub fn render_csv(results: &RunResults, cfg: &RunConfig) -> String {
    let seed = cfg.master_seed;
    let exp = cfg.experiment.name();
    let mut out = String::new();
    let _ = writeln!(out, "# schema={SCHEMA_VERSION}");
    let _ = writeln!(out, "# config={}", config_json(cfg));
    match results {
        RunResults::Sweep(records) => {
            let _ = writeln!(out, "{SWEEP_HEADER}");
            for r in records {
                for metric in Metric::ALL {
                    let s = r.summary(metric);
                    let _ = writeln!(
                        out,
                        "{exp},{},{metric},{},{},{},{},{},{},{},{seed}",
                        r.method,
                        r.m_out,
                        r.shots_per_basis,
                        r.instances,
                        num(s.mean),
                        num(s.p05),
                        num(s.p50),
                        num(s.p95)
                    );
                }
            }
        }
        RunResults::Breakeven { records, .. } => {
            let _ = writeln!(out, "{BREAKEVEN_HEADER}");
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{seed},{}",
                    r.metric,
                    num(r.target_error),
                    opt_num(r.breakeven_m),
                    opt_num(r.shots_direct_at_eps),
                    opt_num(r.shots_clone_at_eps),
                    r.breakeven_m_ceil()
                        .map_or_else(|| "unreachable".to_string(), |m| m.to_string())
                );
            }
        }
        RunResults::Distribution(rows) => {
            let _ = writeln!(out, "{DISTRIBUTION_HEADER}");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{exp},{},{},{},{},{},{},{seed}",
                    r.m_out,
                    r.shots_per_basis,
                    r.instance,
                    num(r.sample.geodesic),
                    num(r.sample.infidelity),
                    r.sample.degenerate
                );
            }
        }
        RunResults::Oracle(report) => {
            let _ = writeln!(out, "{ORACLE_HEADER}");
            for c in &report.exact {
                let _ = writeln!(
                    out,
                    "exact,{},,{},,,,{},{seed}",
                    c.m_out,
                    num(c.max_deviation),
                    c.max_deviation <= crate::verify::EXACT_TOL
                );
            }
            for c in &report.statistical {
                let _ = writeln!(
                    out,
                    "sampled,{},{},,{},{},{},{},{seed}",
                    c.m_out,
                    c.shots_per_basis,
                    num(c.mean_emulated),
                    num(c.mean_oracle),
                    num(c.z_score),
                    c.passed()
                );
            }
        }
    }
    out
}

#[derive(Serialize)]
struct Sidecar<'a> {
    schema: u32,
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
}

/// JSON sidecar echoing the complete configuration.
pub fn render_json(cfg: &RunConfig) -> String {
    let sidecar = Sidecar {
        schema: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: cfg,
    };
    let mut s = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    s.push('\n');
    s
}

fn sweep_series(records: &[SweepRecord], metric: Metric) -> Vec<Series> {
    let mut keys: Vec<(Method, u64)> = records.iter().map(|r| (r.method, r.m_out)).collect();
    keys.dedup();
    keys.into_iter()
        .map(|(method, m)| Series {
            name: match method {
                Method::Direct => "direct QST".to_string(),
                Method::Clone => format!("clone M={m}"),
            },
            points: records
                .iter()
                .filter(|r| r.method == method && r.m_out == m)
                .map(|r| (r.shots_per_basis as f64, r.mean(metric)))
                .collect(),
        })
        .collect()
}

fn metric_label(metric: Metric) -> &'static str {
    match metric {
        Metric::Geodesic => "mean geodesic distance (rad)",
        Metric::Infidelity => "mean infidelity",
    }
}

fn max_line(metric: Metric) -> Vec<(String, f64)> {
    vec![("maximum error".to_string(), metric.maximum())]
}

/// Log-log chart panels for each experiment.
pub fn plot_panels(results: &RunResults, cfg: &RunConfig) -> Vec<Panel> {
    let converge = cfg.experiment == super::config::ExperimentKind::ConvergeM;
    Metric::ALL
        .iter()
        .map(|&metric| match results {
            RunResults::Sweep(records) if converge => Panel {
                title: format!("{metric} vs M at S={}", cfg.shots_grid[0]),
                x_label: "M (clones)".into(),
                y_label: metric_label(metric).into(),
                log_x: true,
                log_y: true,
                series: vec![Series {
                    name: "clone".into(),
                    points: records
                        .iter()
                        .map(|r| (r.m_out as f64, r.mean(metric)))
                        .collect(),
                }],
                hlines: vec![],
            },
            RunResults::Sweep(records) => Panel {
                title: format!("{metric} vs shots"),
                x_label: "shots per Pauli basis".into(),
                y_label: metric_label(metric).into(),
                log_x: true,
                log_y: true,
                series: sweep_series(records, metric),
                hlines: max_line(metric),
            },
            RunResults::Breakeven { records, .. } => Panel {
                title: format!("breakeven M* ({metric})"),
                x_label: metric_label(metric).into(),
                y_label: "breakeven M*".into(),
                log_x: true,
                log_y: false,
                series: vec![Series {
                    name: "M*".into(),
                    points: records
                        .iter()
                        .filter(|r| r.metric == metric)
                        .filter_map(|r| Some((r.target_error, r.breakeven_m?)))
                        .collect(),
                }],
                hlines: vec![],
            },
            RunResults::Distribution(rows) => {
                let mut shots: Vec<u64> = rows.iter().map(|r| r.shots_per_basis).collect();
                shots.dedup();
                let mut series: Vec<Series> = ["p05", "p50", "p95"]
                    .iter()
                    .map(|n| Series {
                        name: n.to_string(),
                        points: vec![],
                    })
                    .collect();
                for s in shots {
                    let mut v: Vec<f64> = rows
                        .iter()
                        .filter(|r| r.shots_per_basis == s)
                        .map(|r| r.sample.get(metric))
                        .collect();
                    v.sort_by(f64::total_cmp);
                    for (ser, q) in series.iter_mut().zip([0.05, 0.5, 0.95]) {
                        ser.points.push((s as f64, quantile_sorted(&v, q)));
                    }
                }
                Panel {
                    title: format!("{metric} distribution, M={}", cfg.m_values[0]),
                    x_label: "shots per Pauli basis".into(),
                    y_label: metric.to_string(),
                    log_x: true,
                    log_y: true,
                    series,
                    hlines: max_line(metric),
                }
            }
            RunResults::Oracle(report) => Panel {
                title: "emulation vs oracle (mean geodesic)".into(),
                x_label: "shots per Pauli basis".into(),
                y_label: "mean geodesic distance (rad)".into(),
                log_x: true,
                log_y: true,
                series: {
                    let mut ms: Vec<u64> = report.statistical.iter().map(|c| c.m_out).collect();
                    ms.dedup();
                    ms.into_iter()
                        .flat_map(|m| {
                            let pts = |emu: bool| -> Vec<(f64, f64)> {
                                report
                                    .statistical
                                    .iter()
                                    .filter(|c| c.m_out == m)
                                    .map(|c| {
                                        let y = if emu { c.mean_emulated } else { c.mean_oracle };
                                        (c.shots_per_basis as f64, y)
                                    })
                                    .collect()
                            };
                            [
                                Series {
                                    name: format!("emulated M={m}"),
                                    points: pts(true),
                                },
                                Series {
                                    name: format!("oracle M={m}"),
                                    points: pts(false),
                                },
                            ]
                        })
                        .collect()
                },
                hlines: vec![("maximum error".into(), PI)],
            },
        })
        .take(if matches!(results, RunResults::Oracle(_)) {
            1
        } else {
            2
        })
        .collect()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the CSV, the JSON sidecar and, if requested, the SVG chart.
pub fn write_results(results: &RunResults, cfg: &RunConfig) -> Result<WrittenFiles> {
    if results.is_empty() {
        return Err(Error::config("no records to write"));
    }
    let csv = cfg.csv_path();
    write_file(&csv, &render_csv(results, cfg))?;
    let json = cfg.json_path();
    write_file(&json, &render_json(cfg))?;
    let svg = if cfg.emit_plot {
        let path = cfg.svg_path();
        let chart = svg::render(
            &plot_panels(results, cfg),
            &format!("config={}", config_json(cfg)),
        );
        write_file(&path, &chart)?;
        Some(path)
    } else {
        None
    };
    Ok(WrittenFiles { csv, json, svg })
}
