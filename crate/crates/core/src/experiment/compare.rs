use rayon::prelude::*;

use super::config::Model;
use super::mc::{sample_graph, with_workers};
use super::stats::{ks_critical_1pct, ks_two_sample};
use crate::error::Result;
use crate::ks::{run_ks, StopRule};
use crate::oracles::{core_observables, RankMode};
use crate::rng::RngStream;

/// Limiting probability that `cn/2` uniform pairs form a simple graph.
pub fn simple_probability(c: f64) -> f64 {
    (-c / 2.0 - c * c / 4.0).exp()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub samples: usize,
    pub simple_fraction: f64,
    pub predicted_simple: f64,
    /// Two-sample KS distance between matching numbers of the uniform
    /// simple model and the multigraph model with the same edge count.
    pub ks_statistic: f64,
    pub ks_critical_1pct: f64,
}

impl CompareReport {
    pub fn rejects_same_law(&self) -> bool {
        self.ks_statistic > self.ks_critical_1pct
    }
}

fn matching_number(model: Model, n: usize, c: f64, rng: &mut RngStream) -> Result<(u64, bool)> {
    let g = sample_graph(model, n, c, rng)?;
    let simple = g.is_simple();
    let t = run_ks(&g, StopRule::NoLeaves, rng)?;
    let (nu, _) = core_observables(&t.core, RankMode::Modular { verify: false }, rng)?;
    Ok((t.steps() + nu, simple))
}

/// Simplicity frequency of the fixed-edge multigraph model, and the
/// distance between its matching-number law and that of the uniform
/// simple graph with the same edge count. Multigraph samples use even
/// stream ids, simple-graph samples odd ones.
pub fn compare_models(n: usize, c: f64, samples: usize, seed: u64, workers: Option<usize>) -> Result<CompareReport> {
    let rows = with_workers(workers, || {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let (multi, simple) = matching_number(Model::MultigraphFixed, n, c, &mut RngStream::new(seed, 2 * i))?;
                let (gnm, _) = matching_number(Model::Gnm, n, c, &mut RngStream::new(seed, 2 * i + 1))?;
                Ok((multi as f64, gnm as f64, simple))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let multi: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let gnm: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let simple = rows.iter().filter(|r| r.2).count();
    Ok(CompareReport {
        samples,
        simple_fraction: simple as f64 / samples as f64,
        predicted_simple: simple_probability(c),
        ks_statistic: ks_two_sample(&multi, &gnm)?,
        ks_critical_1pct: ks_critical_1pct(samples, samples),
    })
}
