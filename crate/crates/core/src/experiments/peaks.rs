//! Peak detection on sampled traces with three-point parabolic refinement.

use serde::{Deserialize, Serialize};

use super::grid::TraceSeries;
use crate::error::{Error, Result};

/// Values at or below this are ignored when looking for the first peak.
pub const NOISE_FLOOR: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakKind {
    FirstLocalMax,
    GlobalMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakResult {
    pub t_peak: f64,
    pub value: f64,
    pub kind: PeakKind,
    /// Grid index of the sample the peak was found at.
    pub index: usize,
}

/// Vertex of the parabola through three neighbouring samples, or the middle
/// sample when the triple is not strictly concave.
fn refine(series: &TraceSeries, k: usize) -> (f64, f64) {
    let (t, v) = (series.times(), series.values());
    let (t1, y1) = (t[k], v[k]);
    if k == 0 || k + 1 >= t.len() {
        return (t1, y1);
    }
    // local coordinates around t1
    let (x0, y0) = (t[k - 1] - t1, v[k - 1]);
    let (x2, y2) = (t[k + 1] - t1, v[k + 1]);
    let s0 = (y0 - y1) / x0;
    let s2 = (y2 - y1) / x2;
    let a = (s2 - s0) / (x2 - x0);
    if a.partial_cmp(&0.0) != Some(std::cmp::Ordering::Less) {
        return (t1, y1);
    }
    let b = s0 - a * x0;
    let xv = (-b / (2.0 * a)).clamp(x0, x2);
    let yv = y1 + b * xv + a * xv * xv;
    let mut value = yv.max(y1);
    if let Some((lo, hi)) = series.range {
        value = value.clamp(lo, hi);
    }
    (t1 + xv, value)
}

/// Earliest local maximum above [`NOISE_FLOOR`], refined. `Ok(None)` when the
/// series has no such peak (for example a monotone series).
pub fn first_peak(series: &TraceSeries) -> Result<Option<PeakResult>> {
    let v = series.values();
    if v.len() < 3 {
        return Err(Error::InvalidArgument(format!("peak search needs at least 3 samples, got {}", v.len())));
    }
    Ok((1..v.len() - 1)
        .find(|&k| v[k] >= v[k - 1] && v[k] >= v[k + 1] && v[k] > NOISE_FLOOR)
        .map(|k| {
            let (t_peak, value) = refine(series, k);
            PeakResult { t_peak, value, kind: PeakKind::FirstLocalMax, index: k }
        }))
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = k;
        }
    }
    best
}

/// Largest sample (earliest on ties), refined when interior.
pub fn global_max(series: &TraceSeries) -> Result<PeakResult> {
    let peak = grid_max(series)?;
    let (t_peak, value) = refine(series, peak.index);
    Ok(PeakResult { t_peak, value, ..peak })
}

/// Largest sample (earliest on ties) without refinement.
pub fn grid_max(series: &TraceSeries) -> Result<PeakResult> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("peak search on an empty series".into()));
    }
    let k = argmax(series.values());
    Ok(PeakResult { t_peak: series.times()[k], value: series.values()[k], kind: PeakKind::GlobalMax, index: k })
}

/// The `count` highest interior local maxima, best first.
pub fn top_peaks(series: &TraceSeries, count: usize, refined: bool) -> Vec<PeakResult> {
    let v = series.values();
    let mut idx: Vec<usize> = (1..v.len().saturating_sub(1)).filter(|&k| v[k] > v[k - 1] && v[k] >= v[k + 1]).collect();
    idx.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));
    idx.into_iter()
        .take(count)
        .map(|k| {
            let (t_peak, value) = if refined { refine(series, k) } else { (series.times()[k], v[k]) };
            PeakResult { t_peak, value, kind: PeakKind::GlobalMax, index: k }
        })
        .collect()
}
