//! Karp–Sipser leaf removal: repeatedly delete a uniformly random leaf
//! together with its unique neighbour.

mod run;
mod state;

pub use run::{run_ks, trace_csv, KsRun, KsTrace, StopReason, StopRule};
pub use state::{KsState, KsStats};
