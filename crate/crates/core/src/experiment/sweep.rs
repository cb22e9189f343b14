use rayon::prelude::*;

use super::config::Model;
use super::mc::{sample_graph, with_workers};
use crate::error::Result;
use crate::ks::{run_ks, StopRule};
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub c: f64,
    /// Mean fraction of vertices left in the leaf-removal core.
    pub mean: f64,
    pub stderr: f64,
}

/// Core size across a grid of average degrees. Sample `i` at grid
/// position `j` uses stream `(j << 32) | i`.
pub fn sweep_core(
    model: Model,
    n: usize,
    cs: &[f64],
    samples: usize,
    seed: u64,
    workers: Option<usize>,
) -> Result<Vec<SweepRow>> {
    with_workers(workers, || {
        cs.iter()
            .enumerate()
            .map(|(j, &c)| {
                let fr = (0..samples as u64)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = RngStream::new(seed, ((j as u64) << 32) | i);
                        let g = sample_graph(model, n, c, &mut rng)?;
                        let t = run_ks(&g, StopRule::NoLeaves, &mut rng)?;
                        Ok(t.core.n() as f64 / n as f64)
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let k = fr.len() as f64;
                let mean = fr.iter().sum::<f64>() / k;
                let var = if fr.len() > 1 {
                    fr.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)
                } else {
                    0.0
                };
                Ok(SweepRow {
                    c,
                    mean,
                    stderr: (var / k).sqrt(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?
}
