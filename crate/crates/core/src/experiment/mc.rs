use rand::Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Model};
use super::samples::SampleRecord;
use crate::error::{Error, Result};
use crate::graph::{gen_gnm, gen_gnp, gen_multigraph, gen_multigraph_binomial, MultiGraph};
use crate::ks::{KsRun, StopReason, StopRule};
use crate::oracles::{core_observables, RankMode};
use crate::rng::RngStream;

/// Edge count `floor(cn/2)` of the fixed-edge models.
pub(crate) fn fixed_edges(n: usize, c: f64) -> usize {
    (c * n as f64 / 2.0).floor() as usize
}

pub fn sample_graph<R: Rng + ?Sized>(model: Model, n: usize, c: f64, rng: &mut R) -> Result<MultiGraph> {
    Ok(match model {
        Model::Gnp => gen_gnp(n, c, rng)?.into(),
        Model::Gnm => gen_gnm(n, fixed_edges(n, c), rng)?.into(),
        Model::MultigraphFixed => gen_multigraph(n, fixed_edges(n, c), rng)?,
        Model::MultigraphBinomial => gen_multigraph_binomial(n, c, rng)?,
    })
}

/// One sample on stream `id` of the master seed. Both stopping times come
/// from a single leaf-removal run: first to the edge threshold, then on
/// to exhaustion.
pub fn run_sample(cfg: &ExperimentConfig, id: u64) -> Result<SampleRecord> {
    let mut rng = RngStream::new(cfg.seed, id);
    let g = sample_graph(cfg.model, cfg.n, cfg.c, &mut rng)?;
    let mut run = KsRun::new(&g);
    let i_delta = match cfg.delta {
        Some(d) => match run.advance(StopRule::EdgesAtMost(d), &mut rng)? {
            StopReason::EdgeThreshold => Some(run.stats().steps),
            _ => None,
        },
        None => None,
    };
    run.advance(StopRule::NoLeaves, &mut rng)?;
    let trace = run.finish(StopReason::NoLeaves);
    let i = trace.steps();
    let want_rank = cfg.rank && cfg.model.is_simple();
    let (nu, rk) = if cfg.matching || want_rank {
        let (nu, rk) = core_observables(&trace.core, RankMode::Modular { verify: false }, &mut rng)?;
        (
            cfg.matching.then_some(i + nu),
            want_rank.then_some(2 * i + rk),
        )
    } else {
        (None, None)
    };
    Ok(SampleRecord {
        sample_id: id,
        nu,
        rk,
        i_delta,
        i,
        core_v: trace.core.n() as u64,
        core_e: trace.core.edge_count() as u64,
    })
}

/// Runs `f` on a dedicated pool of `workers` threads, or on the global
/// pool when `workers` is `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::param(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// All samples of `cfg`, sorted by sample id. The output does not depend
/// on the number of workers.
pub fn run_monte_carlo(cfg: &ExperimentConfig) -> Result<Vec<SampleRecord>> {
    cfg.validate()?;
    with_workers(cfg.workers, || {
        (0..cfg.samples)
            .into_par_iter()
            .map(|id| run_sample(cfg, id))
            .collect::<Result<Vec<_>>>()
    })?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::samples_csv;

    #[test]
    fn single_edge() {
        let cfg = ExperimentConfig {
            n: 2,
            c: 1.0,
            samples: 1,
            ..Default::default()
        };
        let rows = run_monte_carlo(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!((r.nu, r.rk, r.i, r.core_v), (Some(1), Some(2), 1, 0));
    }

    #[test]
    fn worker_count_irrelevant() {
        let mut cfg = ExperimentConfig {
            n: 2000,
            samples: 12,
            delta: Some(0.05),
            seed: 4,
            ..Default::default()
        };
        cfg.workers = Some(1);
        let a = samples_csv(&run_monte_carlo(&cfg).unwrap());
        cfg.workers = Some(4);
        let b = samples_csv(&run_monte_carlo(&cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn stopping_times_ordered() {
        for model in Model::ALL {
            let cfg = ExperimentConfig {
                model,
                n: 3000,
                c: 2.0,
                samples: 5,
                delta: Some(0.05),
                ..Default::default()
            };
            for r in run_monte_carlo(&cfg).unwrap() {
                if let Some(d) = r.i_delta {
                    assert!(d <= r.i);
                }
                assert_eq!(r.rk.is_some(), model.is_simple());
            }
        }
    }
}
