//! Subcommand execution. Each command returns the files it wrote.

use std::fmt::Write;
use std::path::Path;

use chiralwalk_core::experiments::{
    concurrence_matrix_snapshots, first_peak, global_max, measure_trace, scaling_sweep, transfer_table, GraphSpec,
    LongTimeSearch, SweepRecord,
};
use chiralwalk_core::export::{complex_matrix_to_csv, format_g, metadata_lines, real_matrix_to_csv, traces_to_csv};
use serde_json::json;

use crate::config::{grid_of, Command, Format, Mode, RunConfig, VERSION};
use crate::error::{CliError, CliResult};
use crate::output::write_atomic;
use crate::svg::{heatmap_grid, line_plot, Line};

/// Chain sizes covered by the published long-time tables.
fn tabulated(n: usize) -> bool {
    n % 2 == 1 && (5..=33).contains(&n)
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn meta(config: &RunConfig) -> Vec<(String, String)> {
    vec![
        ("tool".into(), format!("chiralwalk {VERSION}")),
        ("command".into(), config.command.name().into()),
        ("config".into(), serde_json::to_string(&config.command).expect("serializable config")),
    ]
}

struct Writer<'a> {
    dir: &'a Path,
    written: Vec<String>,
}

impl Writer<'_> {
    fn put(&mut self, name: String, contents: &str) -> CliResult<()> {
        write_atomic(self.dir, &name, contents)?;
        self.written.push(name);
        Ok(())
    }
}

pub fn run(config: &RunConfig) -> CliResult<Vec<String>> {
    let mut w = Writer { dir: &config.out, written: Vec::new() };
    let stem = config.name.as_str();
    let meta = meta(config);
    match &config.command {
        Command::Trace { graph, state, measure, grid } => {
            let series = measure_trace(graph, state, *measure, &grid_of(grid)?)?;
            let gm = global_max(&series)?;
            println!("global max {} at t = {}", format_g(gm.value), format_g(gm.t_peak));
            if series.len() >= 3 {
                if let Some(fp) = first_peak(&series)? {
                    println!("first peak {} at t = {}", format_g(fp.value), format_g(fp.t_peak));
                }
            }
            match config.format {
                Format::Json => w.put(format!("{stem}.json"), &to_json(&json!({ "config": config.command, "series": series })))?,
                Format::Csv | Format::Svg => w.put(format!("{stem}.csv"), &traces_to_csv(std::slice::from_ref(&series), &meta)?)?,
            }
            if config.format == Format::Svg {
                let title = format!("{} / {graph} / {state}", series.label.measure);
                let line = Line { label: &series.label.measure, x: series.times(), y: series.values() };
                w.put(format!("{stem}.svg"), &line_plot(&title, "t", &series.label.measure, &[line]))?;
            }
        }
        Command::Table { mode, sizes, phi, horizon, dt, refine, thetas } => {
            let candidates = match mode {
                Mode::Cqw => thetas.clone(),
                Mode::Ctqw => vec![0.0],
            };
            let search = LongTimeSearch { horizon: *horizon, dt: *dt, refine: *refine };
            let records = transfer_table(sizes, *phi, &candidates, &search)?;
            for r in &records {
                println!("N={} t={} C={} theta={}", r.n, format_g(r.t), format_g(r.concurrence), format_g(r.theta));
            }
            match config.format {
                Format::Json => {
                    let rows: Vec<_> = records
                        .iter()
                        .map(|r| json!({ "record": r, "coverage": coverage(r.n) }))
                        .collect();
                    w.put(format!("{stem}.json"), &to_json(&json!({ "config": config.command, "rows": rows })))?
                }
                Format::Csv | Format::Svg => w.put(format!("{stem}.csv"), &table_csv(&records, &meta))?,
            }
            if config.format == Format::Svg {
                let x: Vec<f64> = records.iter().map(|r| r.n as f64).collect();
                let y: Vec<f64> = records.iter().map(|r| r.concurrence).collect();
                let svg = line_plot("long-time maximum", "N", "concurrence", &[Line { label: "C", x: &x, y: &y }]);
                w.put(format!("{stem}.svg"), &svg)?;
            }
        }
        Command::Scaling { sizes, theta, state, grid } => {
            let result = scaling_sweep(sizes, *theta, state, &grid_of(grid)?)?;
            println!(
                "slope {} intercept {} R^2 {}",
                format_g(result.slope),
                format_g(result.intercept),
                format_g(result.r_squared)
            );
            match config.format {
                Format::Json => w.put(format!("{stem}.json"), &to_json(&json!({ "config": config.command, "result": result })))?,
                Format::Csv | Format::Svg => {
                    let mut out = String::new();
                    let mut m = meta.clone();
                    m.push(("initial_state".into(), state.to_string()));
                    m.push(("slope".into(), format_g(result.slope)));
                    m.push(("intercept".into(), format_g(result.intercept)));
                    m.push(("r_squared".into(), format_g(result.r_squared)));
                    metadata_lines(&mut out, &m);
                    out.push_str("n,t_max,concurrence\n");
                    for r in &result.rows {
                        let _ = writeln!(out, "{},{},{}", r.n, format_g(r.t_max), format_g(r.concurrence));
                    }
                    w.put(format!("{stem}.csv"), &out)?
                }
            }
            if config.format == Format::Svg {
                let x: Vec<f64> = result.rows.iter().map(|r| r.n as f64).collect();
                let y: Vec<f64> = result.rows.iter().map(|r| r.t_max).collect();
                let fit: Vec<f64> = x.iter().map(|n| result.slope * n + result.intercept).collect();
                let lines = [Line { label: "first peak", x: &x, y: &y }, Line { label: "linear fit", x: &x, y: &fit }];
                w.put(format!("{stem}.svg"), &line_plot("transfer time scaling", "N", "t_max", &lines))?;
            }
        }
        Command::Snapshots { graph, state, times } => {
            let mats = concurrence_matrix_snapshots(graph, state, times)?;
            match config.format {
                Format::Json => {
                    let rows: Vec<_> = times
                        .iter()
                        .zip(&mats)
                        .map(|(t, m)| json!({ "t": t, "matrix": m.row_iter().map(|r| r.iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>() }))
                        .collect();
                    w.put(format!("{stem}.json"), &to_json(&json!({ "config": config.command, "snapshots": rows })))?
                }
                Format::Csv | Format::Svg => {
                    for (k, (t, m)) in times.iter().zip(&mats).enumerate() {
                        let mut mm = meta.clone();
                        mm.push(("t".into(), format_g(*t)));
                        w.put(format!("{stem}_{k:02}.csv"), &real_matrix_to_csv(m, &mm))?;
                    }
                }
            }
            let titles: Vec<String> = times.iter().map(|t| format!("t = {}", format_g(*t))).collect();
            w.put(format!("{stem}.svg"), &heatmap_grid(&titles, &mats))?;
        }
        Command::GraphExport { graph } => {
            let g = graph_of(graph)?;
            let h = chiralwalk_core::hamiltonian(&g);
            w.put(format!("{stem}.json"), &format!("{}\n", g.to_json()))?;
            if config.format != Format::Json {
                w.put(format!("{stem}_hamiltonian.csv"), &complex_matrix_to_csv(h.entries(), &meta))?;
            }
            for row in h.entries().row_iter() {
                let cells: Vec<String> = row
                    .iter()
                    .map(|z| {
                        let im = format_g(z.im);
                        let sign = if im.starts_with('-') { "" } else { "+" };
                        format!("{}{sign}{im}i", format_g(z.re))
                    })
                    .collect();
                println!("{}", cells.join("  "));
            }
        }
    }
    Ok(w.written)
}

fn graph_of(spec: &GraphSpec) -> CliResult<chiralwalk_core::WeightedGraph> {
    spec.build().map_err(CliError::usage)
}

fn coverage(n: usize) -> &'static str {
    if tabulated(n) {
        "tabulated"
    } else {
        "outside-tabulated-range"
    }
}

fn table_csv(records: &[SweepRecord], meta: &[(String, String)]) -> String {
    let mut out = String::new();
    metadata_lines(&mut out, meta);
    out.push_str("# coverage: 'tabulated' rows are odd N in 5..=33; other sizes are extrapolations\n");
    out.push_str("n,t,concurrence,theta,theta_over_pi,coverage,alt1_t,alt1_concurrence,alt2_t,alt2_concurrence\n");
    for r in records {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            format_g(r.t),
            format_g(r.concurrence),
            format_g(r.theta),
            format_g(r.theta / std::f64::consts::PI),
            coverage(r.n)
        );
        for k in 1..3 {
            match r.top_peaks.get(k) {
                Some(p) => {
                    let _ = write!(out, ",{},{}", format_g(p.t_peak), format_g(p.value));
                }
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    out
}
