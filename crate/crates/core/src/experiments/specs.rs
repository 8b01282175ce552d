use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{spectral_decompose, SpectralDecomposition};
use crate::error::Result;
use crate::graph::{complete_graph, cycle_graph, hamiltonian, triangular_chain, ChiralPhase, WeightedGraph};
use crate::states::{
    localized, spatial_pair, target_pure, target_werner, werner, SpatialPairSpec, WalkerState, WernerSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// Triangular chain (path plus next-nearest-neighbour edges).
    Triangular,
    Cycle,
    /// Complete graph; the five-vertex case is the pentagram.
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub n: usize,
    pub theta: f64,
    #[serde(default = "unit_magnitude")]
    pub magnitude: f64,
}

fn unit_magnitude() -> f64 {
    1.0
}

impl GraphSpec {
    pub fn triangular(n: usize, theta: f64) -> Self {
        Self { kind: GraphKind::Triangular, n, theta, magnitude: 1.0 }
    }

    pub fn cycle(n: usize, theta: f64) -> Self {
        Self { kind: GraphKind::Cycle, n, theta, magnitude: 1.0 }
    }

    pub fn complete(n: usize, theta: f64) -> Self {
        Self { kind: GraphKind::Complete, n, theta, magnitude: 1.0 }
    }

    pub fn with_theta(self, theta: f64) -> Self {
        Self { theta, ..self }
    }

    pub fn build(&self) -> Result<WeightedGraph> {
        let theta = ChiralPhase::new(self.theta)?;
        match self.kind {
            GraphKind::Triangular => triangular_chain(self.n, theta, self.magnitude),
            GraphKind::Cycle => cycle_graph(self.n, theta),
            GraphKind::Complete => complete_graph(self.n, theta),
        }
    }

    pub fn decompose(&self) -> Result<SpectralDecomposition> {
        Ok(spectral_decompose(&hamiltonian(&self.build()?)))
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GraphKind::Triangular => "tri",
            GraphKind::Cycle => "cycle",
            GraphKind::Complete => "complete",
        };
        write!(f, "{kind}:{} theta={}", self.n, self.theta)
    }
}

/// Initial-state recipe, independent of the chain size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    Localized { site: usize },
    /// `(|i⟩ - e^{iφ}|j⟩)/√2`
    Pair { sites: [usize; 2], phi: f64 },
    /// Werner-like mixture on sites 1 and 2.
    Werner { b: f64 },
}

impl StateSpec {
    /// `(|1⟩ + |2⟩)/√2`
    pub fn bell() -> Self {
        Self::Pair { sites: [1, 2], phi: std::f64::consts::PI }
    }

    pub fn pair(phi: f64) -> Self {
        Self::Pair { sites: [1, 2], phi }
    }

    pub fn build(&self, n: usize) -> Result<WalkerState> {
        Ok(match *self {
            Self::Localized { site } => localized(n, site)?.into(),
            Self::Pair { sites: [i, j], phi } => spatial_pair(SpatialPairSpec::new(n, i, j, phi)?)?.into(),
            Self::Werner { b } => werner(n, WernerSpec::new(b)?)?.into(),
        })
    }

    /// Ideal transferred state at the right end of an `n`-site graph.
    pub fn target(&self, n: usize) -> Result<WalkerState> {
        Ok(match *self {
            Self::Localized { .. } => localized(n, n)?.into(),
            Self::Pair { phi, .. } => target_pure(n, phi)?.into(),
            Self::Werner { b } => target_werner(n, b)?.into(),
        })
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Localized { site } => write!(f, "localized:{site}"),
            Self::Pair { sites, phi } => write!(f, "pair:{},{}:{}", sites[0], sites[1], phi),
            Self::Werner { b } => write!(f, "werner:{b}"),
        }
    }
}
