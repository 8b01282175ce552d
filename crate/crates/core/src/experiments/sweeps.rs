//! Phase optimisation, long-time maxima and chain-size scaling.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::TimeGrid;
use super::peaks::{first_peak, global_max, grid_max, top_peaks, PeakResult};
use super::specs::{GraphSpec, StateSpec};
use super::traces::concurrence_trace;
use crate::error::{Error, Result};

/// Two candidates are tied when their values differ by at most this.
pub const TIE_TOL: f64 = 1e-12;

/// Long-time search window and sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongTimeSearch {
    pub horizon: f64,
    pub dt: f64,
    /// Parabolic refinement of the grid maximum.
    pub refine: bool,
}

impl LongTimeSearch {
    /// Plain argmax on a `dt = 0.1` grid, the sampling the published tables
    /// were produced with.
    pub fn tabulated(horizon: f64) -> Self {
        Self { horizon, dt: 0.1, refine: false }
    }

    /// `dt = 0.02` with parabolic refinement.
    pub fn refined(horizon: f64) -> Self {
        Self { horizon, dt: 0.02, refine: true }
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(0.0, self.horizon, self.dt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateResult {
    pub theta: f64,
    pub peak: PeakResult,
}

/// One row of a long-time transfer table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub phi: f64,
    pub theta: f64,
    pub t: f64,
    pub concurrence: f64,
    pub horizon: f64,
    /// Best local maxima of the winning trace, for auditing near-ties.
    pub top_peaks: Vec<PeakResult>,
    pub candidates: Vec<CandidateResult>,
}

/// `{-π/2, π/2}`
pub fn default_theta_candidates() -> Vec<f64> {
    vec![-FRAC_PI_2, FRAC_PI_2]
}

/// `count` evenly spaced phases covering `(-π, π]`.
pub fn theta_grid(count: usize) -> Vec<f64> {
    (1..=count).map(|k| -PI + 2.0 * PI * k as f64 / count as f64).collect()
}

/// Orders candidates: larger value first; ties go to smaller `|θ|`, then to
/// the positive sign.
fn better(a: &CandidateResult, b: &CandidateResult) -> bool {
    let (va, vb) = (a.peak.value, b.peak.value);
    if (va - vb).abs() > TIE_TOL {
        return va > vb;
    }
    let (ma, mb) = (a.theta.abs(), b.theta.abs());
    if (ma - mb).abs() > TIE_TOL {
        return ma < mb;
    }
    a.theta > b.theta
}

/// Chooses the chiral phase maximising the long-time end-pair concurrence of
/// a triangular chain started in `(|1⟩ - e^{iφ}|2⟩)/√2`.
pub fn optimize_theta(n: usize, phi: f64, candidates: &[f64], search: &LongTimeSearch) -> Result<SweepRecord> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("no chiral phase candidates".into()));
    }
    let grid = search.grid()?;
    let state = StateSpec::pair(phi);
    let traces: Vec<_> = candidates
        .par_iter()
        .map(|&theta| concurrence_trace(&GraphSpec::triangular(n, theta), &state, &grid).map(|s| (theta, s)))
        .collect::<Result<_>>()?;

    let mut results = Vec::with_capacity(traces.len());
    for (theta, s) in &traces {
        let peak = if search.refine { global_max(s)? } else { grid_max(s)? };
        results.push(CandidateResult { theta: *theta, peak });
    }
    let mut best = 0;
    for k in 1..results.len() {
        if better(&results[k], &results[best]) {
            best = k;
        }
    }
    let winner = results[best];
    Ok(SweepRecord {
        n,
        phi,
        theta: winner.theta,
        t: winner.peak.t_peak,
        concurrence: winner.peak.value,
        horizon: search.horizon,
        top_peaks: top_peaks(&traces[best].1, 3, search.refine),
        candidates: results,
    })
}

/// Long-time maximum of the real (θ = 0) walk.
pub fn ctqw_long_time(n: usize, phi: f64, search: &LongTimeSearch) -> Result<SweepRecord> {
    optimize_theta(n, phi, &[0.0], search)
}

/// Table rows for several chain sizes; `candidates = [0]` gives the real walk.
pub fn transfer_table(ns: &[usize], phi: f64, candidates: &[f64], search: &LongTimeSearch) -> Result<Vec<SweepRecord>> {
    ns.par_iter().map(|&n| optimize_theta(n, phi, candidates, search)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub t_max: f64,
    pub concurrence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingResult {
    pub theta: f64,
    pub state: StateSpec,
    pub rows: Vec<ScalingRow>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = slope·x + intercept` with its `R²`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument("linear fit needs at least two matching points".into()));
    }
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("linear fit needs distinct x values".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok((slope, intercept, r2))
}

/// Window for first-peak scaling runs; long chains peak after `t = 10`.
pub fn scaling_grid() -> TimeGrid {
    TimeGrid::new(0.0, 25.0, 0.005).expect("static grid")
}

/// First-peak transfer time and concurrence for each chain size.
pub fn scaling_sweep(ns: &[usize], theta: f64, state: &StateSpec, grid: &TimeGrid) -> Result<ScalingResult> {
    let rows: Vec<ScalingRow> = ns
        .par_iter()
        .map(|&n| {
            let s = concurrence_trace(&GraphSpec::triangular(n, theta), state, grid)?;
            let peak = first_peak(&s)?.ok_or_else(|| {
                Error::InvalidArgument(format!("no first peak for n = {n} within [{}, {}]", grid.t_start(), grid.t_end()))
            })?;
            Ok(ScalingRow { n, t_max: peak.t_peak, concurrence: peak.value })
        })
        .collect::<Result<_>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.t_max).collect();
    let (slope, intercept, r_squared) = linear_fit(&x, &y)?;
    Ok(ScalingResult { theta, state: *state, rows, slope, intercept, r_squared })
}
