//! Time series of walk observables on a time grid.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{TimeGrid, TraceLabel, TraceSeries};
use super::specs::{GraphSpec, StateSpec};
use crate::dynamics::SpectralDecomposition;
use crate::error::{Error, Result};
use crate::measures::{state_concurrence, state_concurrence_matrix, state_fidelity, PtsProbe};
use crate::states::{Evolution, WalkerState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Measure {
    /// `C_ij`; `None` means the end pair `(n-1, n)`.
    Concurrence { pair: Option<[usize; 2]> },
    Occupation { site: usize },
    /// Bures distance between the populations at `t` and `-t`.
    PtsBures,
    /// Fidelity against the state's transfer target.
    Fidelity,
}

impl Measure {
    pub fn end_concurrence() -> Self {
        Self::Concurrence { pair: None }
    }

    fn name(&self, n: usize) -> String {
        match self {
            Self::Concurrence { pair } => {
                let [i, j] = pair.unwrap_or([n - 1, n]);
                format!("concurrence_{i}_{j}")
            }
            Self::Occupation { site } => format!("occupation_{site}"),
            Self::PtsBures => "pts_bures".into(),
            Self::Fidelity => "fidelity".into(),
        }
    }

    fn range(&self) -> (f64, f64) {
        match self {
            Self::PtsBures => (0.0, std::f64::consts::SQRT_2),
            _ => (0.0, 1.0),
        }
    }
}

/// Everything needed to evaluate one observable at arbitrary times.
pub struct Probe {
    n: usize,
    decomposition: SpectralDecomposition,
    initial: WalkerState,
    target: Option<WalkerState>,
    measure: Measure,
}

impl Probe {
    pub fn new(graph: &GraphSpec, state: &StateSpec, measure: Measure) -> Result<Self> {
        let n = graph.n;
        let decomposition = graph.decompose()?;
        let initial = state.build(n)?;
        let target = match measure {
            Measure::Fidelity => Some(state.target(n)?),
            _ => None,
        };
        match measure {
            Measure::Concurrence { pair: Some([i, j]) } if i == j || i == 0 || j == 0 || i > n || j > n => {
                return Err(Error::InvalidArgument(format!("bad concurrence pair ({i}, {j}) for n = {n}")));
            }
            Measure::Occupation { site } if site == 0 || site > n => {
                return Err(Error::IndexOutOfRange { index: site, n });
            }
            _ => {}
        }
        Ok(Self { n, decomposition, initial, target, measure })
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn values(&self, times: &[f64]) -> Result<Vec<f64>> {
        if let Measure::PtsBures = self.measure {
            let probe = PtsProbe::new(&self.decomposition, &self.initial)?;
            return times.par_iter().map(|&t| probe.at(t)).collect();
        }
        let evolution = Evolution::new(&self.decomposition, &self.initial)?;
        times
            .par_iter()
            .map(|&t| {
                let s = evolution.at(t)?;
                match self.measure {
                    Measure::Concurrence { pair } => {
                        let [i, j] = pair.unwrap_or([self.n - 1, self.n]);
                        state_concurrence(&s, i, j)
                    }
                    Measure::Occupation { site } => s.occupation(site),
                    Measure::Fidelity => state_fidelity(&s, self.target.as_ref().expect("fidelity target")),
                    Measure::PtsBures => unreachable!(),
                }
            })
            .collect()
    }

    pub fn at(&self, t: f64) -> Result<f64> {
        Ok(self.values(&[t])?[0])
    }
}

/// Samples `measure` on `grid`. Time points are evaluated in parallel and
/// collected in grid order.
pub fn measure_trace(graph: &GraphSpec, state: &StateSpec, measure: Measure, grid: &TimeGrid) -> Result<TraceSeries> {
    if matches!(measure, Measure::PtsBures) && grid.t_start() < 0.0 {
        return Err(Error::InvalidGrid("time-asymmetry trace needs t >= 0".into()));
    }
    let probe = Probe::new(graph, state, measure)?;
    let times = grid.points();
    let values = probe.values(&times)?;
    let label = TraceLabel::new(measure.name(graph.n))
        .param("graph", graph)
        .param("state", state)
        .param("dt", grid.dt());
    let (lo, hi) = measure.range();
    Ok(TraceSeries::new(times, values, label)?.with_range(lo, hi))
}

/// `C_{n-1,n}(t)`
pub fn concurrence_trace(graph: &GraphSpec, state: &StateSpec, grid: &TimeGrid) -> Result<TraceSeries> {
    measure_trace(graph, state, Measure::end_concurrence(), grid)
}

pub fn bures_trace(graph: &GraphSpec, state: &StateSpec, grid: &TimeGrid) -> Result<TraceSeries> {
    measure_trace(graph, state, Measure::PtsBures, grid)
}

/// Fidelity of a Werner-like state on a triangular chain against its
/// transferred counterpart.
pub fn werner_trace(n: usize, b: f64, theta: f64, grid: &TimeGrid) -> Result<TraceSeries> {
    measure_trace(&GraphSpec::triangular(n, theta), &StateSpec::Werner { b }, Measure::Fidelity, grid)
}

/// Pairwise concurrence matrices at the requested times.
pub fn concurrence_matrix_snapshots(graph: &GraphSpec, state: &StateSpec, times: &[f64]) -> Result<Vec<DMatrix<f64>>> {
    let d = graph.decompose()?;
    let initial = state.build(graph.n)?;
    let evolution = Evolution::new(&d, &initial)?;
    times.iter().map(|&t| Ok(state_concurrence_matrix(&evolution.at(t)?))).collect()
}
