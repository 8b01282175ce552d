//! Python bindings: graphs, initial states, a walk object for pointwise
//! observables, and the trace, table and scaling experiments.

use chiralwalk_core::experiments::{
    first_peak as core_first_peak, global_max as core_global_max, measure_trace, scaling_sweep as core_scaling,
    transfer_table as core_table, GraphSpec, LongTimeSearch, Measure, PeakResult, StateSpec, TimeGrid, TraceLabel,
    TraceSeries,
};
use chiralwalk_core::{
    concurrence_matrix, concurrence_pair_fast, fidelity, hamiltonian, pts_bures, Evolution, SpectralDecomposition,
    WalkerState,
};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Graph recipe: kind, size, chiral phase and hopping magnitude.
#[pyclass(frozen, module = "chiralwalk")]
struct Graph {
    spec: GraphSpec,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (kind, n, theta = 0.0, magnitude = 1.0))]
    fn new(kind: &str, n: usize, theta: f64, magnitude: f64) -> PyResult<Self> {
        let base = match kind {
            "tri" | "triangular" => GraphSpec::triangular(n, theta),
            "cycle" => GraphSpec::cycle(n, theta),
            "complete" | "pentagram" => GraphSpec::complete(n, theta),
            other => return Err(PyValueError::new_err(format!("unknown graph kind {other:?}"))),
        };
        let spec = GraphSpec { magnitude, ..base };
        spec.build().map_err(err)?;
        Ok(Self { spec })
    }

    #[staticmethod]
    #[pyo3(signature = (n, theta = 0.0))]
    fn triangular(n: usize, theta: f64) -> PyResult<Self> {
        Self::new("triangular", n, theta, 1.0)
    }

    #[staticmethod]
    #[pyo3(signature = (theta = 0.0))]
    fn pentagram(theta: f64) -> PyResult<Self> {
        Self::new("complete", 5, theta, 1.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.spec.n
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.spec.theta
    }

    /// Edges as `(m, n, weight)` with 1-based `m > n`.
    fn edges(&self) -> PyResult<Vec<(usize, usize, Complex64)>> {
        let g = self.spec.build().map_err(err)?;
        Ok(g.edges().iter().map(|e| (e.m, e.n, e.weight)).collect())
    }

    fn hamiltonian(&self) -> PyResult<Vec<Vec<Complex64>>> {
        let h = hamiltonian(&self.spec.build().map_err(err)?);
        Ok(h.entries().row_iter().map(|r| r.iter().copied().collect()).collect())
    }

    /// Ascending eigenvalues of the Hamiltonian.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(self.spec.decompose().map_err(err)?.eigenvalues().iter().copied().collect())
    }

    fn to_json(&self) -> PyResult<String> {
        Ok(self.spec.build().map_err(err)?.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.spec)
    }
}

/// Initial-state recipe, independent of the graph size.
#[pyclass(frozen, module = "chiralwalk")]
struct State {
    spec: StateSpec,
}

#[pymethods]
impl State {
    /// `(|1> + |2>)/sqrt 2`.
    #[staticmethod]
    fn bell() -> Self {
        Self { spec: StateSpec::bell() }
    }

    /// `(|i> - e^{i phi}|j>)/sqrt 2`.
    #[staticmethod]
    #[pyo3(signature = (phi, i = 1, j = 2))]
    fn pair(phi: f64, i: usize, j: usize) -> Self {
        Self { spec: StateSpec::Pair { sites: [i, j], phi } }
    }

    #[staticmethod]
    fn localized(site: usize) -> Self {
        Self { spec: StateSpec::Localized { site } }
    }

    /// Werner-like mixture on sites 1 and 2 with coherence `b`.
    #[staticmethod]
    fn werner(b: f64) -> PyResult<Self> {
        let spec = StateSpec::Werner { b };
        spec.build(2).map_err(err)?;
        Ok(Self { spec })
    }

    fn __repr__(&self) -> String {
        format!("State({})", self.spec)
    }
}

fn measure_of(name: &str, pair: Option<(usize, usize)>, site: Option<usize>) -> PyResult<Measure> {
    Ok(match name {
        "concurrence" => Measure::Concurrence { pair: pair.map(|(i, j)| [i, j]) },
        "occupation" => Measure::Occupation {
            site: site.ok_or_else(|| PyValueError::new_err("occupation needs site="))?,
        },
        "pts-bures" | "pts_bures" | "bures" => Measure::PtsBures,
        "fidelity" => Measure::Fidelity,
        other => return Err(PyValueError::new_err(format!("unknown measure {other:?}"))),
    })
}

/// A state evolving on a graph. The eigendecomposition is computed once.
#[pyclass(frozen, module = "chiralwalk")]
struct Walk {
    n: usize,
    decomposition: SpectralDecomposition,
    initial: WalkerState,
    target: WalkerState,
}

impl Walk {
    fn at(&self, t: f64) -> PyResult<WalkerState> {
        Evolution::new(&self.decomposition, &self.initial).and_then(|e| e.at(t)).map_err(err)
    }
}

#[pymethods]
impl Walk {
    #[new]
    fn new(graph: &Graph, state: &State) -> PyResult<Self> {
        let n = graph.spec.n;
        Ok(Self {
            n,
            decomposition: graph.spec.decompose().map_err(err)?,
            initial: state.spec.build(n).map_err(err)?,
            target: state.spec.target(n).map_err(err)?,
        })
    }

    /// `C_ij(t)`; the end pair `(n-1, n)` by default.
    #[pyo3(signature = (t, i = None, j = None))]
    fn concurrence(&self, t: f64, i: Option<usize>, j: Option<usize>) -> PyResult<f64> {
        let (i, j) = (i.unwrap_or(self.n - 1), j.unwrap_or(self.n));
        concurrence_pair_fast(&self.at(t)?.density(), i, j).map_err(err)
    }

    fn occupation(&self, t: f64, site: usize) -> PyResult<f64> {
        self.at(t)?.occupation(site).map_err(err)
    }

    /// Fidelity with the ideal state transferred to the far end.
    fn fidelity(&self, t: f64) -> PyResult<f64> {
        fidelity(&self.at(t)?.density(), &self.target.density()).map_err(err)
    }

    /// Bures distance between the site populations at `t` and `-t`.
    fn pts_bures(&self, t: f64) -> PyResult<f64> {
        pts_bures(&self.decomposition, &self.initial.density(), t).map_err(err)
    }

    /// All pairwise concurrences at `t`, as an `n x n` nested list.
    fn concurrence_matrix(&self, t: f64) -> PyResult<Vec<Vec<f64>>> {
        let m = concurrence_matrix(&self.at(t)?.density());
        Ok(m.row_iter().map(|r| r.iter().copied().collect()).collect())
    }

    fn density(&self, t: f64) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = self.at(t)?.density();
        Ok(rho.entries().row_iter().map(|r| r.iter().copied().collect()).collect())
    }
}

fn peak_dict<'py>(py: Python<'py>, p: &PeakResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t", p.t_peak)?;
    d.set_item("value", p.value)?;
    d.set_item("index", p.index)?;
    Ok(d)
}

/// Samples one observable on `[t_start, t_end]` with step `dt`. Returns
/// `(times, values)`.
#[pyfunction]
#[pyo3(signature = (graph, state, measure = "concurrence", t_start = 0.0, t_end = 10.0, dt = 0.005, pair = None, site = None))]
#[allow(clippy::too_many_arguments)]
fn trace(
    graph: &Graph,
    state: &State,
    measure: &str,
    t_start: f64,
    t_end: f64,
    dt: f64,
    pair: Option<(usize, usize)>,
    site: Option<usize>,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let grid = TimeGrid::new(t_start, t_end, dt).map_err(err)?;
    let s = measure_trace(&graph.spec, &state.spec, measure_of(measure, pair, site)?, &grid).map_err(err)?;
    Ok((s.times().to_vec(), s.values().to_vec()))
}

fn series(times: Vec<f64>, values: Vec<f64>) -> PyResult<TraceSeries> {
    TraceSeries::new(times, values, TraceLabel::new("series")).map_err(err)
}

/// Earliest refined local maximum of a sampled series, or `None`.
#[pyfunction]
fn first_peak<'py>(py: Python<'py>, times: Vec<f64>, values: Vec<f64>) -> PyResult<Option<Bound<'py, PyDict>>> {
    core_first_peak(&series(times, values)?).map_err(err)?.map(|p| peak_dict(py, &p)).transpose()
}

/// Largest refined maximum of a sampled series.
#[pyfunction]
fn global_max<'py>(py: Python<'py>, times: Vec<f64>, values: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    peak_dict(py, &core_global_max(&series(times, values)?).map_err(err)?)
}

/// Long-time maximum end-pair concurrence on triangular chains, optimised
/// over the candidate phases. `thetas=[0.0]` gives the real walk.
#[pyfunction]
#[pyo3(signature = (sizes, phi = std::f64::consts::PI, thetas = None, horizon = 500.0, dt = 0.1, refine = false))]
fn transfer_table<'py>(
    py: Python<'py>,
    sizes: Vec<usize>,
    phi: f64,
    thetas: Option<Vec<f64>>,
    horizon: f64,
    dt: f64,
    refine: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let thetas = thetas.unwrap_or_else(|| vec![-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2]);
    let search = LongTimeSearch { horizon, dt, refine };
    let records = py.detach(|| core_table(&sizes, phi, &thetas, &search)).map_err(err)?;
    records
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("n", r.n)?;
            d.set_item("t", r.t)?;
            d.set_item("concurrence", r.concurrence)?;
            d.set_item("theta", r.theta)?;
            Ok(d)
        })
        .collect()
}

/// First-peak transfer time against chain size with a least-squares line.
#[pyfunction]
#[pyo3(signature = (sizes, theta = std::f64::consts::FRAC_PI_2, state = None, t_end = 25.0, dt = 0.005))]
fn scaling_sweep<'py>(
    py: Python<'py>,
    sizes: Vec<usize>,
    theta: f64,
    state: Option<&State>,
    t_end: f64,
    dt: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let spec = state.map_or_else(StateSpec::bell, |s| s.spec);
    let grid = TimeGrid::new(0.0, t_end, dt).map_err(err)?;
    let r = py.detach(|| core_scaling(&sizes, theta, &spec, &grid)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.rows.iter().map(|x| x.n).collect::<Vec<_>>())?;
    d.set_item("t_max", r.rows.iter().map(|x| x.t_max).collect::<Vec<_>>())?;
    d.set_item("concurrence", r.rows.iter().map(|x| x.concurrence).collect::<Vec<_>>())?;
    d.set_item("slope", r.slope)?;
    d.set_item("intercept", r.intercept)?;
    d.set_item("r_squared", r.r_squared)?;
    Ok(d)
}

#[pymodule]
fn chiralwalk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<State>()?;
    m.add_class::<Walk>()?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(first_peak, m)?)?;
    m.add_function(wrap_pyfunction!(global_max, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_table, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_sweep, m)?)?;
    Ok(())
}
