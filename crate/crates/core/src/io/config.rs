//! Run configuration: defaults, optional TOML file, command-line overrides.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::cloning::ORACLE_MAX_M;
use crate::error::{Error, Result};
use crate::experiments::default_message;
use crate::qstate::BlochVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    SweepDirect,
    SweepClone,
    ConvergeM,
    Breakeven,
    Distribution,
    VerifyOracle,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SweepDirect => "sweep-direct",
            ExperimentKind::SweepClone => "sweep-clone",
            ExperimentKind::ConvergeM => "converge-m",
            ExperimentKind::Breakeven => "breakeven",
            ExperimentKind::Distribution => "distribution",
            ExperimentKind::VerifyOracle => "verify-oracle",
        }
    }

    fn uses_clones(self) -> bool {
        !matches!(self, ExperimentKind::SweepDirect)
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Self as clap::ValueEnum>::from_str(s, false)
            .map_err(|_| Error::config(format!("unknown experiment '{s}'")))
    }
}

/// Shots grid `10^1 .. 10^6` with four points per decade.
pub fn default_shots_grid() -> Vec<u64> {
    (0..=20)
        .map(|i| 10f64.powf(1.0 + i as f64 / 4.0).round() as u64)
        .collect()
}

pub const DEFAULT_CLONE_GRID: [u64; 6] = [2, 3, 10, 100, 1_000, 100_000];
pub const DEFAULT_CONVERGE_GRID: [u64; 5] = [2, 10, 100, 10_000, 1_000_000];
pub const DEFAULT_INSTANCES: usize = 200;
pub const DEFAULT_ORACLE_TRIALS: usize = 100;
pub const DEFAULT_ERROR_POINTS: usize = 10;

/// Everything needed to reproduce one run. Echoed into every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub experiment: ExperimentKind,
    pub master_seed: u64,
    pub m_values: Vec<u64>,
    pub shots_grid: Vec<u64>,
    /// Instances per grid point (random messages per M for `verify-oracle`).
    pub instances: usize,
    /// Output stem; `.csv`, `.json` and `.svg` are appended.
    pub output_path: PathBuf,
    pub emit_plot: bool,
    pub message: BlochVector,
    /// Target errors per metric for `breakeven`.
    pub error_points: usize,
}

impl RunConfig {
    /// Defaults for `experiment` with the given seed.
    pub fn defaults(experiment: ExperimentKind, master_seed: u64) -> Self {
        let (m_values, shots_grid, instances) = match experiment {
            ExperimentKind::SweepDirect => (vec![], default_shots_grid(), DEFAULT_INSTANCES),
            ExperimentKind::SweepClone | ExperimentKind::Breakeven => (
                DEFAULT_CLONE_GRID.to_vec(),
                default_shots_grid(),
                DEFAULT_INSTANCES,
            ),
            ExperimentKind::ConvergeM => (
                DEFAULT_CONVERGE_GRID.to_vec(),
                vec![1_000_000],
                DEFAULT_INSTANCES,
            ),
            ExperimentKind::Distribution => (
                vec![10],
                vec![10, 100, 1_000, 10_000, 100_000, 1_000_000],
                10 * 1000,
            ),
            ExperimentKind::VerifyOracle => (vec![2, 3], vec![100, 10_000], DEFAULT_ORACLE_TRIALS),
        };
        Self {
            experiment,
            master_seed,
            m_values,
            shots_grid,
            instances,
            output_path: PathBuf::from("results").join(experiment.name()),
            emit_plot: false,
            message: default_message(),
            error_points: DEFAULT_ERROR_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let kind = self.experiment;
        if !self.message.is_finite() || !self.message.is_pure(1e-9) {
            return Err(Error::config("message must be a unit Bloch vector"));
        }
        if self.shots_grid.is_empty() {
            return Err(Error::config("--shots: grid is empty"));
        }
        if self.shots_grid.contains(&0) {
            return Err(Error::config("--shots: entries must be positive"));
        }
        if self.instances == 0 {
            return Err(Error::config("--instances must be at least 1"));
        }
        if kind.uses_clones() {
            if self.m_values.is_empty() {
                return Err(Error::config(format!(
                    "--m: {kind} needs at least one clone count"
                )));
            }
            if let Some(m) = self.m_values.iter().find(|&&m| m < 2) {
                return Err(Error::config(format!(
                    "--m: clone counts must be >= 2, got {m}"
                )));
            }
        }
        match kind {
            ExperimentKind::ConvergeM if self.shots_grid.len() != 1 => Err(Error::config(
                "--shots: converge-m runs at a single shot count, e.g. --shots 1000000",
            )),
            ExperimentKind::Distribution if self.m_values.len() != 1 => Err(Error::config(
                "--m: distribution runs for a single clone count, e.g. --m 10",
            )),
            ExperimentKind::Breakeven if self.error_points == 0 => {
                Err(Error::config("error_points must be at least 1"))
            }
            ExperimentKind::VerifyOracle if self.m_values.iter().any(|&m| m > ORACLE_MAX_M) => Err(
                Error::config(format!("--m: oracle supports M <= {ORACLE_MAX_M}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn csv_path(&self) -> PathBuf {
        with_suffix(&self.output_path, "csv")
    }

    pub fn json_path(&self) -> PathBuf {
        with_suffix(&self.output_path, "json")
    }

    pub fn svg_path(&self) -> PathBuf {
        with_suffix(&self.output_path, "svg")
    }
}

fn with_suffix(stem: &Path, ext: &str) -> PathBuf {
    let stem = match stem.extension().and_then(|e| e.to_str()) {
        Some("csv" | "json" | "svg") => stem.with_extension(""),
        _ => stem.to_path_buf(),
    };
    let mut s = stem.into_os_string();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Values read from a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub experiment: Option<ExperimentKind>,
    pub master_seed: Option<u64>,
    pub m_values: Option<Vec<u64>>,
    pub shots_grid: Option<Vec<u64>>,
    pub instances: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub emit_plot: Option<bool>,
    pub message: Option<[f64; 3]>,
    pub error_points: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text)
            .map_err(|e| Error::config(format!("malformed config file {}: {e}", path.display())))
    }
}

/// Command-line flags.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "qubit-fanout",
    version,
    about = "Direct vs cloned single-qubit distribution: sweeps, convergence, breakeven"
)]
pub struct Cli {
    /// Experiment to run
    #[arg(long, value_enum)]
    pub experiment: Option<ExperimentKind>,

    /// Master seed (required, here or in the config file)
    #[arg(long)]
    pub seed: Option<u64>,

    /// Clone counts, comma separated
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u64>>,

    /// Shots per Pauli basis, comma separated
    #[arg(long, value_delimiter = ',')]
    pub shots: Option<Vec<u64>>,

    /// Instances per grid point
    #[arg(long)]
    pub instances: Option<usize>,

    /// Output path stem
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write an SVG chart
    #[arg(long)]
    pub plot: bool,

    /// TOML file with run settings; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Worker threads (default: all cores). Does not affect results.
    #[arg(long)]
    pub threads: Option<usize>,

    #[arg(long, hide = true, default_value_t = 0.0)]
    pub corrupt_eta: f64,
}

/// Settings that steer execution but are not part of the reproducible config.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    pub threads: Option<usize>,
    pub eta_offset: f64,
}

/// Merges defaults, the optional config file and flags (flags win).
pub fn resolve_config(cli: &Cli) -> Result<(RunConfig, RunOptions)> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let experiment = cli
        .experiment
        .or(file.experiment)
        .unwrap_or(ExperimentKind::SweepClone);
    let seed = cli.seed.or(file.master_seed).ok_or_else(|| {
        Error::config("a master seed is required: pass --seed <u64> or set master_seed in --config")
    })?;

    let mut cfg = RunConfig::defaults(experiment, seed);
    if let Some(v) = file.m_values {
        cfg.m_values = v;
    }
    if let Some(v) = file.shots_grid {
        cfg.shots_grid = v;
    }
    if let Some(v) = file.instances {
        cfg.instances = v;
    }
    if let Some(v) = file.output_path {
        cfg.output_path = v;
    }
    if let Some(v) = file.emit_plot {
        cfg.emit_plot = v;
    }
    if let Some([x, y, z]) = file.message {
        cfg.message = BlochVector::new(x, y, z);
    }
    if let Some(v) = file.error_points {
        cfg.error_points = v;
    }

    if let Some(v) = &cli.m {
        cfg.m_values = v.clone();
    }
    if let Some(v) = &cli.shots {
        cfg.shots_grid = v.clone();
    }
    if let Some(v) = cli.instances {
        cfg.instances = v;
    }
    if let Some(v) = &cli.out {
        cfg.output_path = v.clone();
    }
    cfg.emit_plot |= cli.plot;

    if cli.threads == Some(0) {
        return Err(Error::config("--threads must be at least 1"));
    }
    cfg.validate()?;
    Ok((
        cfg,
        RunOptions {
            threads: cli.threads,
            eta_offset: cli.corrupt_eta,
        },
    ))
}

/// Parses arguments (including the program name) into a validated config.
pub fn parse_config<I, T>(args: I) -> std::result::Result<(RunConfig, RunOptions), ParseError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(ParseError::Clap)?;
    resolve_config(&cli).map_err(ParseError::Config)
}

#[derive(Debug)]
pub enum ParseError {
    /// Includes `--help` and `--version`, which are not failures.
    Clap(clap::Error),
    Config(Error),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Clap(e) => write!(f, "{e}"),
            ParseError::Config(e) => write!(f, "{e}"),
        }
    }
}
