//! Monte Carlo harness and the statistics used to compare simulations
//! with the limit theory.

mod analyze;
mod compare;
mod config;
mod degree_law;
mod mc;
mod samples;
pub mod stats;
mod sweep;

pub use analyze::{analyze, AnalysisReport, ObservableSummary};
pub use compare::{compare_models, simple_probability, CompareReport};
pub use config::{parse_config, ExperimentConfig, Model};
pub use degree_law::{degree_law_check, degree_law_sample, DegreeLawReport, DegreeLawSample};
pub use mc::{run_monte_carlo, run_sample, sample_graph, with_workers};
pub use samples::{parse_samples, read_samples, samples_csv, write_samples, SampleRecord};
pub use sweep::{sweep_core, SweepRow};
