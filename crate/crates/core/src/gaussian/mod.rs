//! Gaussian fluctuations of the leaf-removal statistics around the fluid
//! limit: initial covariances, covariance propagation, the linearised flow
//! map, and the covariance at the edge-threshold stopping time.

mod covariance;
mod initial;
mod ladder;
pub mod ode;

pub use covariance::{
    correlation_phi, propagate_covariance, propagate_to_z, stopped_at, stopped_covariance,
    CovarianceState, PropagateOptions,
};
pub use initial::{initial_covariance, CovarianceModel, InitialCovariance};
pub use ladder::{
    limiting_sigma44, low_rank_check, prediction_csv, sigma44_ladder, LadderReport, LowRankEntry, LowRankReport,
    DEFAULT_LADDER,
};
