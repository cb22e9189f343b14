use std::collections::BTreeMap;

use super::config::ExperimentConfig;
use super::mc::sample_graph;
use super::stats::quantile;
use crate::error::{Error, Result};
use crate::fluid::{chi_of_z, truncated_poisson_pmf, z_delta, z_of_x, Vec4};
use crate::ks::{KsRun, KsStats, StopReason, StopRule};
use crate::rng::RngStream;

/// Degrees beyond the largest observed one are summed up to this bound.
const DEGREE_TAIL: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeLawSample {
    /// Parameter solved from the observed statistics.
    pub z: f64,
    /// Total-variation distance between the observed law of degrees >= 2
    /// and Poisson(z) conditioned on being at least 2.
    pub tv: f64,
    /// `sum_d d |X^(d) - mu^(d)| / sqrt(n)`, with `mu` from the fluid limit.
    pub d_scaled: f64,
}

/// Compares a degree histogram at the edge-threshold stop with the
/// truncated Poisson law. `n`, `c`, `delta` describe the run.
pub fn degree_law_sample(
    hist: &BTreeMap<u32, u64>,
    stats: KsStats,
    n: usize,
    c: f64,
    delta: f64,
) -> Result<DegreeLawSample> {
    if stats.heavy == 0 {
        return Err(Error::Degenerate("no vertex of degree two or more".into()));
    }
    let x = stats.scaled(n);
    let z = z_of_x(&Vec4::from(x))?;
    let top = hist.keys().next_back().copied().unwrap_or(0).max(DEGREE_TAIL);
    let heavy = stats.heavy as f64;
    let mut tv = 0.0;
    for d in 2..=top {
        let emp = hist.get(&d).copied().unwrap_or(0) as f64 / heavy;
        tv += (emp - truncated_poisson_pmf(z, d)).abs();
    }
    let fluid = chi_of_z(z_delta(c, delta)?, c)?;
    let zd = fluid.z;
    let nf = n as f64;
    let mut dsum = (hist.get(&1).copied().unwrap_or(0) as f64 - fluid.chi[0] * nf).abs();
    for d in 2..=top {
        let mu = fluid.chi[1] * nf * truncated_poisson_pmf(zd, d);
        dsum += d as f64 * (hist.get(&d).copied().unwrap_or(0) as f64 - mu).abs();
    }
    Ok(DegreeLawSample {
        z,
        tv: 0.5 * tv,
        d_scaled: dsum / nf.sqrt(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeLawReport {
    pub samples: Vec<DegreeLawSample>,
    /// Samples where the leaves ran out before the edge threshold.
    pub skipped: usize,
    pub mean_tv: f64,
    pub d_scaled_p90: f64,
}

/// Runs `cfg.samples` leaf-removal processes to the edge threshold and
/// compares their degree laws with the truncated Poisson law.
pub fn degree_law_check(cfg: &ExperimentConfig) -> Result<DegreeLawReport> {
    use rayon::prelude::*;
    cfg.validate()?;
    let delta = cfg
        .delta
        .ok_or_else(|| Error::param("degree law check needs delta"))?;
    let rows = super::mc::with_workers(cfg.workers, || {
        (0..cfg.samples)
            .into_par_iter()
            .map(|id| -> Result<Option<DegreeLawSample>> {
                let mut rng = RngStream::new(cfg.seed, id);
                let g = sample_graph(cfg.model, cfg.n, cfg.c, &mut rng)?;
                let mut run = KsRun::new(&g);
                if run.advance(StopRule::EdgesAtMost(delta), &mut rng)? != StopReason::EdgeThreshold {
                    return Ok(None);
                }
                let st = run.state();
                degree_law_sample(&st.degree_histogram(), st.stats(), cfg.n, cfg.c, delta).map(Some)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    let samples: Vec<_> = rows.into_iter().flatten().collect();
    if samples.is_empty() {
        return Err(Error::Degenerate("no run reached the edge threshold".into()));
    }
    let mean_tv = samples.iter().map(|s| s.tv).sum::<f64>() / samples.len() as f64;
    let ds: Vec<f64> = samples.iter().map(|s| s.d_scaled).collect();
    Ok(DegreeLawReport {
        d_scaled_p90: quantile(&ds, 0.9),
        samples,
        skipped,
        mean_tv,
    })
}
