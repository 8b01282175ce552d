//! Reproducible numerical experiments built on the walk primitives.

pub mod grid;
pub mod peaks;
pub mod specs;
pub mod sweeps;
pub mod traces;

pub use grid::{TimeGrid, TraceLabel, TraceSeries};
pub use peaks::{first_peak, global_max, grid_max, top_peaks, PeakKind, PeakResult, NOISE_FLOOR};
pub use specs::{GraphKind, GraphSpec, StateSpec};
pub use sweeps::{
    ctqw_long_time, default_theta_candidates, linear_fit, optimize_theta, scaling_grid, scaling_sweep, theta_grid,
    transfer_table, CandidateResult, LongTimeSearch, ScalingResult, ScalingRow, SweepRecord,
};
pub use traces::{
    bures_trace, concurrence_matrix_snapshots, concurrence_trace, measure_trace, werner_trace, Measure, Probe,
};
