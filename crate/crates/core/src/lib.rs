//! Chiral and continuous-time quantum walks in the single-excitation sector.
//!
//! The crate builds graph Hamiltonians with complex hopping phases
//! ([`graph`]), evolves pure and mixed states exactly through a cached
//! eigendecomposition ([`dynamics`]), prepares injection and target states
//! ([`states`]), measures pairwise concurrence, fidelity and Bures distances
//! ([`measures`]) and runs the transfer experiments on top ([`experiments`]).
//!
//! Sites are 1-based everywhere in the public API.
//!
//! ```
//! use chiralwalk_core::experiments::{concurrence_trace, first_peak, GraphSpec, StateSpec, TimeGrid};
//!
//! let graph = GraphSpec::triangular(5, std::f64::consts::FRAC_PI_2);
//! let trace = concurrence_trace(&graph, &StateSpec::bell(), &TimeGrid::short_time()).unwrap();
//! let peak = first_peak(&trace).unwrap().unwrap();
//! assert!(peak.value > 0.85);
//! ```

#![forbid(unsafe_code)]

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod export;
pub mod graph;
pub mod measures;
pub mod states;

pub use dynamics::{
    evolve_density, evolve_pure, occupation, propagator, spectral_decompose, CMatrix, CVector, DensityMatrix,
    HermitianMatrix, PureEvolution, PureState, SpectralDecomposition,
};
pub use error::{Error, Result};
pub use graph::{
    complete_graph, cycle_graph, degree_matrix, hamiltonian, laplacian, triangular_chain, ChiralPhase, Edge,
    WeightedGraph,
};
pub use measures::{
    bures_distance, concurrence_matrix, concurrence_pair_fast, concurrence_wootters, fidelity, pts_bures,
    reduced_pair, transfer_fidelity_pure, PairDensity,
};
pub use states::{
    localized, spatial_pair, target_pure, target_werner, werner, Evolution, SpatialPairSpec, WalkerState, WernerSpec,
};
