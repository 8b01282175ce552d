//! Graph builders for the walks: triangular chains, chiral cycles and complete
//! graphs, each carrying a uniform complex hopping phase.
//!
//! Vertices are 1-based at the interface. An edge `(m, n)` with `m < n` stores
//! the hopping amplitude `J_nm`, which lands at `H[n][m]` (below the diagonal);
//! the mirrored element is its complex conjugate and is never stored.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::HermitianMatrix;
use crate::error::{Error, Result};

/// Uniform hopping phase, kept in `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ChiralPhase(f64);

impl ChiralPhase {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("chiral phase"));
        }
        // Values already in range are kept bit-exact.
        if theta > -PI && theta <= PI {
            return Ok(Self(theta));
        }
        let mut r = theta.rem_euclid(2.0 * PI);
        if r > PI {
            r -= 2.0 * PI;
        }
        Ok(Self(r))
    }

    pub const fn zero() -> Self {
        Self(0.0)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `exp(i·theta)`, with rounding residue below 1e-15 snapped to zero so
    /// that multiples of π/2 give exactly real or imaginary entries.
    pub fn unit(self) -> Complex64 {
        let (s, c) = self.0.sin_cos();
        let snap = |v: f64| if v.abs() < 1e-15 { 0.0 } else { v };
        Complex64::new(snap(c), snap(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub m: usize,
    pub n: usize,
    pub weight: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n_vertices: usize,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    /// Builds a graph from `(m, n, weight)` triples, 1-based with `m < n`.
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize, Complex64)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidSize("graph needs at least one vertex".into()));
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (m, n, weight) in edges {
            if m == 0 || m >= n || n > n_vertices {
                return Err(Error::InvalidEdge(m, n));
            }
            if !weight.re.is_finite() || !weight.im.is_finite() {
                return Err(Error::NonFinite("edge weight"));
            }
            if !seen.insert((m, n)) {
                return Err(Error::DuplicateEdge(m, n));
            }
            out.push(Edge { m, n, weight });
        }
        out.sort_by_key(|e| (e.m, e.n));
        Ok(Self { n_vertices, edges: out })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Weight of the hop `from -> to`; the reverse direction is conjugated.
    pub fn weight(&self, from: usize, to: usize) -> Option<Complex64> {
        let (m, n) = if from < to { (from, to) } else { (to, from) };
        let e = self.edges.iter().find(|e| e.m == m && e.n == n)?;
        // stored weight is the n -> m element H[n][m]
        Some(if from > to { e.weight } else { e.weight.conj() })
    }

    /// Unweighted 0/1 adjacency pattern.
    pub fn adjacency(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n_vertices, self.n_vertices);
        for e in &self.edges {
            a[(e.m - 1, e.n - 1)] = 1.0;
            a[(e.n - 1, e.m - 1)] = 1.0;
        }
        a
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices];
        for e in &self.edges {
            d[e.m - 1] += 1;
            d[e.n - 1] += 1;
        }
        d
    }
}

fn check_size(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        Err(Error::InvalidSize(format!("{what} needs n >= {min}, got {n}")))
    } else {
        Ok(())
    }
}

/// Path graph squared: edges `(i, i+1)` and `(i, i+2)`, i.e. a strip of
/// triangular plaquettes.
pub fn triangular_chain(n: usize, theta: ChiralPhase, magnitude: f64) -> Result<WeightedGraph> {
    check_size(n, 3, "triangular chain")?;
    if !(magnitude.is_finite() && magnitude > 0.0) {
        return Err(Error::InvalidArgument(format!("hopping magnitude must be positive, got {magnitude}")));
    }
    let w = Complex64::from_polar(magnitude, theta.radians());
    let nearest = (1..n).map(|i| (i, i + 1, w));
    let next = (1..n - 1).map(|i| (i, i + 2, w));
    WeightedGraph::new(n, nearest.chain(next))
}

/// Ring `1-2-...-n-1` with unit hopping magnitude. The wrap edge `(1, n)`
/// follows the same lower-triangle convention as every other edge.
pub fn cycle_graph(n: usize, theta: ChiralPhase) -> Result<WeightedGraph> {
    check_size(n, 3, "cycle graph")?;
    let w = theta.unit();
    WeightedGraph::new(n, (1..n).map(|i| (i, i + 1, w)).chain(std::iter::once((1, n, w))))
}

/// All-to-all coupling; for `n = 5` this is the pentagram graph.
pub fn complete_graph(n: usize, theta: ChiralPhase) -> Result<WeightedGraph> {
    check_size(n, 2, "complete graph")?;
    let w = theta.unit();
    let pairs = (1..=n).flat_map(|m| (m + 1..=n).map(move |k| (m, k, w)));
    WeightedGraph::new(n, pairs)
}

/// Walk Hamiltonian with zero on-site energies.
pub fn hamiltonian(g: &WeightedGraph) -> HermitianMatrix {
    let n = g.n_vertices;
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for e in &g.edges {
        h[(e.n - 1, e.m - 1)] = e.weight;
        h[(e.m - 1, e.n - 1)] = e.weight.conj();
    }
    HermitianMatrix::from_hermitian_unchecked(h)
}

/// Diagonal matrix of edge counts per vertex.
pub fn degree_matrix(g: &WeightedGraph) -> DMatrix<f64> {
    let d = g.degrees();
    DMatrix::from_fn(g.n_vertices, g.n_vertices, |i, j| if i == j { d[i] as f64 } else { 0.0 })
}

/// `L = D - A` on the unweighted pattern.
pub fn laplacian(g: &WeightedGraph) -> DMatrix<f64> {
    degree_matrix(g) - g.adjacency()
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, f64, f64)>,
}

impl WeightedGraph {
    /// `{"n": .., "edges": [[m, n, re, im], ...]}`
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n_vertices,
            edges: self.edges.iter().map(|e| (e.m, e.n, e.weight.re, e.weight.im)).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("graph JSON: {e}")))?;
        Self::new(doc.n, doc.edges.into_iter().map(|(m, n, re, im)| (m, n, Complex64::new(re, im))))
    }
}
