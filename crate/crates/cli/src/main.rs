//! `chiralwalk`: traces, long-time tables, scaling sweeps, concurrence
//! snapshots and graph exports for chiral quantum walks.
//!
//! Every run writes its outputs atomically into `--out` together with a JSON
//! manifest that `chiralwalk rerun --manifest` replays exactly. The worker
//! count is taken from `CHIRALWALK_THREADS` (default: all cores).
//!
//! Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error.

mod commands;
mod config;
mod error;
mod output;
mod parse;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use chiralwalk_core::experiments::{GraphSpec, Measure, StateSpec};
use clap::{Args, Parser, Subcommand};

use config::{Command, Format, Manifest, Mode, RunConfig, VERSION};
use error::{CliError, CliResult};
use parse::GridSpec;

const THREADS_VAR: &str = "CHIRALWALK_THREADS";

#[derive(Parser)]
#[command(name = "chiralwalk", version = VERSION, about = "Chiral quantum walk transfer experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Output {
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file stem; defaults to the subcommand name.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Time series of one observable.
    Trace(TraceArgs),
    /// Long-time maximum end-pair concurrence for several chain sizes.
    Table(TableArgs),
    /// First-peak transfer time against chain size, with a linear fit.
    Scaling(ScalingArgs),
    /// Pairwise concurrence matrices at chosen times.
    Snapshots(SnapshotArgs),
    /// Graph as JSON and its Hamiltonian as CSV.
    GraphExport(GraphArgs),
    /// Replays a run from its manifest.
    Rerun(RerunArgs),
}

#[derive(Args)]
struct TraceArgs {
    /// `tri:N`, `cycle:N`, `complete:N` or `pentagram:5`.
    #[arg(long, default_value = "tri:5", value_parser = parse::graph)]
    graph: GraphSpec,
    /// Chiral phase, in radians or as `0.5pi`, `3pi/4`, ...
    #[arg(long, default_value = "0", value_parser = parse::phase, allow_hyphen_values = true)]
    theta: f64,
    /// `pair:i,j:phi`, `localized:i`, `werner:b` or JSON. `pair:1,2:pi` is
    /// `(|1> + |2>)/sqrt 2`.
    #[arg(long, default_value = "pair:1,2:pi", value_parser = parse::state)]
    state: StateSpec,
    /// Overrides the relative phase of a pair state.
    #[arg(long, value_parser = parse::phase, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// `concurrence[:i,j]`, `occupation:i`, `pts-bures` or `fidelity`.
    #[arg(long, default_value = "concurrence", value_parser = parse::measure)]
    measure: Measure,
    /// `start:end:dt`
    #[arg(long = "t", default_value = "0:10:0.005", value_parser = parse::grid, allow_hyphen_values = true)]
    grid: GridSpec,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = Mode::Cqw)]
    mode: Mode,
    /// Chain sizes: `5`, `5,7,9` or `5:33:2`.
    #[arg(long = "n", default_value = "5:33:2", value_parser = parse::sizes)]
    sizes: ::std::vec::Vec<usize>,
    #[arg(long, default_value = "pi", value_parser = parse::phase, allow_hyphen_values = true)]
    phi: f64,
    #[arg(long, default_value_t = 500.0)]
    horizon: f64,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    /// Parabolic refinement of the grid maximum.
    #[arg(long)]
    refine: bool,
    /// Candidate chiral phases for `--mode cqw`.
    #[arg(long, default_value = "-0.5pi,0.5pi", value_parser = parse::phases, allow_hyphen_values = true)]
    thetas: ::std::vec::Vec<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ScalingArgs {
    #[arg(long, default_value = "0.5pi", value_parser = parse::phase, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long = "n", default_value = "5:71:2", value_parser = parse::sizes)]
    sizes: ::std::vec::Vec<usize>,
    #[arg(long, default_value = "pair:1,2:pi", value_parser = parse::state)]
    state: StateSpec,
    #[arg(long = "t", default_value = "0:25:0.005", value_parser = parse::grid)]
    grid: GridSpec,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SnapshotArgs {
    #[arg(long, default_value = "tri:5", value_parser = parse::graph)]
    graph: GraphSpec,
    #[arg(long, default_value = "0.5pi", value_parser = parse::phase, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, default_value = "pair:1,2:pi", value_parser = parse::state)]
    state: StateSpec,
    #[arg(long, default_value = "0,0.2,0.4,0.6,0.8,1", value_parser = parse::times)]
    times: ::std::vec::Vec<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, default_value = "tri:5", value_parser = parse::graph)]
    graph: GraphSpec,
    #[arg(long, default_value = "0", value_parser = parse::phase, allow_hyphen_values = true)]
    theta: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct RerunArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Writes into this directory instead of the recorded one.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn with_phi(state: StateSpec, phi: Option<f64>) -> CliResult<StateSpec> {
    match (state, phi) {
        (s, None) => Ok(s),
        (StateSpec::Pair { sites, .. }, Some(phi)) => Ok(StateSpec::Pair { sites, phi }),
        _ => Err(CliError::usage("--phi applies to pair states only")),
    }
}

fn config(command: Command, output: Output) -> RunConfig {
    let name = output.name.unwrap_or_else(|| command.name().to_string());
    RunConfig { command, out: output.out, format: output.format, name }
}

fn resolve(cmd: Cmd) -> CliResult<RunConfig> {
    Ok(match cmd {
        Cmd::Trace(a) => config(
            Command::Trace {
                graph: a.graph.with_theta(a.theta),
                state: with_phi(a.state, a.phi)?,
                measure: a.measure,
                grid: a.grid,
            },
            a.output,
        ),
        Cmd::Table(a) => config(
            Command::Table {
                mode: a.mode,
                sizes: a.sizes,
                phi: a.phi,
                horizon: a.horizon,
                dt: a.dt,
                refine: a.refine,
                thetas: a.thetas,
            },
            a.output,
        ),
        Cmd::Scaling(a) => {
            config(Command::Scaling { sizes: a.sizes, theta: a.theta, state: a.state, grid: a.grid }, a.output)
        }
        Cmd::Snapshots(a) => config(
            Command::Snapshots { graph: a.graph.with_theta(a.theta), state: a.state, times: a.times },
            a.output,
        ),
        Cmd::GraphExport(a) => config(Command::GraphExport { graph: a.graph.with_theta(a.theta) }, a.output),
        Cmd::Rerun(a) => {
            let mut c = Manifest::load(&a.manifest)?.config;
            if let Some(out) = a.out {
                c.out = out;
            }
            c
        }
    })
}

fn configure_threads() -> CliResult<usize> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.trim().parse().map_err(|_| CliError::usage(format!("{THREADS_VAR} must be a positive integer")))?;
        if n == 0 {
            return Err(CliError::usage(format!("{THREADS_VAR} must be a positive integer")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("cannot configure {n} threads: {e}")))?;
    }
    Ok(rayon::current_num_threads())
}

fn execute(cmd: Cmd) -> CliResult<()> {
    let config = resolve(cmd)?;
    config.validate()?;
    let threads = configure_threads()?;
    output::prepare_dir(&config.out)?;
    let start = Instant::now();
    let outputs = commands::run(&config)?;
    let manifest = Manifest {
        tool: "chiralwalk".into(),
        version: VERSION.into(),
        config: config.clone(),
        outputs,
        threads,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("serializable manifest") + "\n";
    let name = Manifest::file_name(&config);
    output::write_atomic(&config.out, &name, &text)?;
    for f in manifest.outputs.iter().chain(std::iter::once(&name)) {
        println!("wrote {}", config.out.join(f).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chiralwalk: {e}");
            e.exit_code()
        }
    }
}
