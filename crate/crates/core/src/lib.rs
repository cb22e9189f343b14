//! Karp–Sipser leaf removal on sparse random graphs.
//!
//! Graph generators, the leaf-removal process, exact matching and rank
//! oracles, the fluid limit of the process statistics, the covariance
//! machinery predicting their Gaussian fluctuations, and a Monte Carlo
//! harness tying them together.

pub mod error;
pub mod experiment;
pub mod fluid;
pub mod gaussian;
pub mod graph;
pub mod ks;
pub mod oracles;
pub mod rng;

pub use error::{Error, Result};
pub use rng::RngStream;
