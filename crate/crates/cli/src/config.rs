//! Resolved run configuration and the manifest written next to every run.

use std::fs;
use std::path::{Path, PathBuf};

use chiralwalk_core::experiments::{GraphSpec, Measure, StateSpec, TimeGrid};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::parse::GridSpec;

pub const VERSION: &str = env!("CHIRALWALK_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    /// CSV plus an SVG rendering.
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Chiral walk, optimising θ over the candidates.
    Cqw,
    /// Real walk, θ = 0.
    Ctqw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    Trace { graph: GraphSpec, state: StateSpec, measure: Measure, grid: GridSpec },
    Table { mode: Mode, sizes: Vec<usize>, phi: f64, horizon: f64, dt: f64, refine: bool, thetas: Vec<f64> },
    Scaling { sizes: Vec<usize>, theta: f64, state: StateSpec, grid: GridSpec },
    Snapshots { graph: GraphSpec, state: StateSpec, times: Vec<f64> },
    GraphExport { graph: GraphSpec },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Trace { .. } => "trace",
            Self::Table { .. } => "table",
            Self::Scaling { .. } => "scaling",
            Self::Snapshots { .. } => "snapshots",
            Self::GraphExport { .. } => "graph-export",
        }
    }
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub out: PathBuf,
    pub format: Format,
    /// Stem for output file names.
    pub name: String,
}

impl RunConfig {
    /// Checks phases, sizes and grids before any work is done.
    pub fn validate(&self) -> CliResult<()> {
        let finite = |x: f64, what: &str| if x.is_finite() { Ok(()) } else { Err(CliError::usage(format!("{what} must be finite"))) };
        match &self.command {
            Command::Trace { graph, state, measure, grid } => {
                finite(graph.theta, "theta")?;
                let g = grid_of(grid)?;
                chiralwalk_core::experiments::Probe::new(graph, state, *measure).map_err(CliError::usage)?;
                if matches!(measure, Measure::PtsBures) && g.t_start() < 0.0 {
                    return Err(CliError::usage("the time-asymmetry measure needs t >= 0"));
                }
            }
            Command::Table { mode, sizes, phi, horizon, dt, thetas, .. } => {
                finite(*phi, "phi")?;
                for t in thetas {
                    finite(*t, "theta")?;
                }
                if *mode == Mode::Cqw && thetas.is_empty() {
                    return Err(CliError::usage("no theta candidates"));
                }
                TimeGrid::new(0.0, *horizon, *dt).map_err(CliError::usage)?;
                for &n in sizes {
                    GraphSpec::triangular(n, 0.0).build().map_err(CliError::usage)?;
                    StateSpec::pair(*phi).build(n).map_err(CliError::usage)?;
                }
            }
            Command::Scaling { sizes, theta, state, grid } => {
                finite(*theta, "theta")?;
                grid_of(grid)?;
                if sizes.len() < 2 {
                    return Err(CliError::usage("scaling needs at least two chain sizes"));
                }
                for &n in sizes {
                    GraphSpec::triangular(n, *theta).build().map_err(CliError::usage)?;
                    state.build(n).map_err(CliError::usage)?;
                }
            }
            Command::Snapshots { graph, state, times } => {
                finite(graph.theta, "theta")?;
                graph.build().map_err(CliError::usage)?;
                state.build(graph.n).map_err(CliError::usage)?;
                for t in times {
                    finite(*t, "time")?;
                }
            }
            Command::GraphExport { graph } => {
                finite(graph.theta, "theta")?;
                graph.build().map_err(CliError::usage)?;
            }
        }
        Ok(())
    }
}

pub fn grid_of(g: &GridSpec) -> CliResult<TimeGrid> {
    TimeGrid::new(g.t_start, g.t_end, g.dt).map_err(CliError::usage)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub outputs: Vec<String>,
    pub threads: usize,
    pub wall_time_seconds: f64,
}

impl Manifest {
    pub fn file_name(config: &RunConfig) -> String {
        format!("{}.manifest.json", config.name)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))
    }
}
