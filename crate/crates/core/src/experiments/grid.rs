use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of grid steps.
pub const MAX_STEPS: f64 = 1e7;

/// Uniform grid `t_k = t_start + k·dt` for `k = 0..=K`, `K = ⌊(t_end - t_start)/dt⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    dt: f64,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, dt: f64) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite() && dt.is_finite()) {
            return Err(Error::InvalidGrid("grid bounds must be finite".into()));
        }
        if dt <= 0.0 {
            return Err(Error::InvalidGrid(format!("step must be positive, got {dt}")));
        }
        if t_start >= t_end {
            return Err(Error::InvalidGrid(format!("empty grid [{t_start}, {t_end}]")));
        }
        if (t_end - t_start) / dt > MAX_STEPS {
            return Err(Error::InvalidGrid(format!("more than {MAX_STEPS} steps")));
        }
        Ok(Self { t_start, t_end, dt })
    }

    /// `[0, 10]` with `dt = 0.005`.
    pub fn short_time() -> Self {
        Self { t_start: 0.0, t_end: 10.0, dt: 0.005 }
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        ((self.t_end - self.t_start) / self.dt + 1e-9).floor() as usize
    }

    pub fn len(&self) -> usize {
        self.steps() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.t_start + k as f64 * self.dt).collect()
    }

    pub fn halved(&self) -> Self {
        Self { dt: 0.5 * self.dt, ..*self }
    }
}

/// Name and parameters attached to a series, written as CSV metadata.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TraceLabel {
    pub measure: String,
    pub params: Vec<(String, String)>,
}

impl TraceLabel {
    pub fn new(measure: impl Into<String>) -> Self {
        Self { measure: measure.into(), params: Vec::new() }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSeries {
    times: Vec<f64>,
    values: Vec<f64>,
    pub label: TraceLabel,
    /// Closed range of the measure, used to clamp refined peaks.
    pub range: Option<(f64, f64)>,
}

impl TraceSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, label: TraceLabel) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: times.len(), got: values.len() });
        }
        if times.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::InvalidGrid("times must be strictly increasing".into()));
        }
        Ok(Self { times, values, label, range: None })
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.range = Some((lo, hi));
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::max)
    }
}
