use std::fmt::Write as _;

use nalgebra::Vector3;

use super::covariance::{phi_between_z, propagate_between, stopped_covariance, CovarianceState, PropagateOptions};
use super::initial::{initial_covariance, CovarianceModel};
use crate::error::{Error, Result};
use crate::fluid::{chi_of_z, lambert_w, s_star, z_delta, z_of_s};

/// `0.05 * 2^-k`, `k = 0..=6`.
pub const DEFAULT_LADDER: [f64; 7] = [0.05, 0.025, 0.0125, 0.00625, 0.003125, 0.0015625, 0.00078125];

/// Stopped covariances on a decreasing ladder of thresholds and the
/// extrapolated `delta -> 0` limit of the (4,4) entry.
#[derive(Clone, Debug)]
pub struct LadderReport {
    pub c: f64,
    pub model: CovarianceModel,
    pub states: Vec<CovarianceState>,
    /// Richardson extrapolation of the last two (4,4) entries, assuming
    /// the error shrinks like `sqrt(delta)`.
    pub limit: f64,
    /// Set when the ladder does not look converged.
    pub warning: Option<String>,
}

impl LadderReport {
    pub fn sigma44(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.sigma_delta[(3, 3)]).collect()
    }
}

/// Limiting variance of the stopping time per vertex, on the default ladder.
pub fn limiting_sigma44(c: f64, model: CovarianceModel) -> Result<LadderReport> {
    sigma44_ladder(c, model, &DEFAULT_LADDER, &PropagateOptions::default())
}

pub fn sigma44_ladder(
    c: f64,
    model: CovarianceModel,
    deltas: &[f64],
    opts: &PropagateOptions,
) -> Result<LadderReport> {
    if deltas.len() < 2 || deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::param("ladder needs at least two strictly decreasing thresholds"));
    }
    let mut sigma = initial_covariance(model, c)?.sigma;
    let mut z_prev = c;
    let mut states = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let z = z_delta(c, d)?;
        sigma = propagate_between(c, z_prev, z, &sigma, opts)?;
        z_prev = z;
        states.push(stopped_covariance(c, d, &sigma)?);
    }
    let v: Vec<f64> = states.iter().map(|s| s.sigma_delta[(3, 3)]).collect();
    let k = v.len();
    let (a, b) = (v[k - 2], v[k - 1]);
    let r = (deltas[k - 2] / deltas[k - 1]).sqrt();
    let limit = (r * b - a) / (r - 1.0);
    let diffs: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let mut warning = None;
    let settled = (b - a).abs() <= 1e-3 * b.abs();
    if !settled && diffs.windows(2).any(|w| w[1].abs() > w[0].abs()) {
        warning = Some(format!("ladder differences do not shrink: {v:?}"));
    } else if (b - a).abs() > 0.05 * b.abs() {
        warning = Some(format!("last two ladder values differ by more than 5%: {a} vs {b}"));
    }
    Ok(LadderReport {
        c,
        model,
        states,
        limit,
        warning,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct LowRankEntry {
    pub u: f64,
    pub delta: f64,
    pub s: f64,
    /// `(s* - s) / (s* - u)`.
    pub ratio: f64,
    /// Angle between each column of the leading 3x3 block of the flow map
    /// and the limiting direction `v0`.
    pub angles: [f64; 3],
}

#[derive(Clone, Debug)]
pub struct LowRankReport {
    pub entries: Vec<LowRankEntry>,
    /// Per start time `u`: least-squares slope of `ln(max angle)` against
    /// `ln(ratio)` over entries with `ratio < 1`.
    pub exponents: Vec<(f64, Option<f64>)>,
}

fn angle(a: Vector3<f64>, b: Vector3<f64>) -> f64 {
    let cos = (a.dot(&b).abs() / (a.norm() * b.norm())).min(1.0);
    cos.acos()
}

/// Measures how close the flow map from time `u` to the stop at each
/// threshold is to a rank-one map onto `v0`.
pub fn low_rank_check(c: f64, u_grid: &[f64], deltas: &[f64], opts: &PropagateOptions) -> Result<LowRankReport> {
    let end = s_star(c)?;
    let w = lambert_w(c)?;
    let v0 = Vector3::new(2.0 - 2.0 * w, w, 1.0);
    let mut stops: Vec<(f64, f64)> = deltas.iter().map(|&d| Ok((d, z_delta(c, d)?))).collect::<Result<_>>()?;
    stops.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut entries = Vec::new();
    let mut exponents = Vec::new();
    for &u in u_grid {
        if !(0.0..end).contains(&u) {
            return Err(Error::domain(format!("u = {u} outside [0, s* = {end})")));
        }
        let zu = z_of_s(u, c)?;
        let mut z_prev = zu;
        let mut phi = crate::fluid::Mat4::identity();
        let mut pts = Vec::new();
        for &(d, z) in &stops {
            if z > zu {
                continue;
            }
            phi = phi_between_z(c, z_prev, z, opts)? * phi;
            z_prev = z;
            let s = chi_of_z(z, c)?.s;
            let block = phi.fixed_view::<3, 3>(0, 0);
            let angles = [0, 1, 2].map(|j| angle(block.column(j).into_owned(), v0));
            let ratio = (end - s) / (end - u);
            if ratio < 1.0 {
                pts.push((ratio.ln(), angles.iter().cloned().fold(0.0, f64::max).ln()));
            }
            entries.push(LowRankEntry {
                u,
                delta: d,
                s,
                ratio,
                angles,
            });
        }
        exponents.push((u, slope(&pts)));
    }
    Ok(LowRankReport { entries, exponents })
}

pub(crate) fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// One row per ladder entry: `c,model,delta,sigma11,...,sigma44,limit`
/// with all sixteen entries of the stopped covariance in row-major order.
pub fn prediction_csv(reports: &[LadderReport]) -> String {
    let mut out = String::from("c,model,delta");
    for i in 1..=4 {
        for j in 1..=4 {
            let _ = write!(out, ",sigma{i}{j}");
        }
    }
    out.push_str(",limit\n");
    for r in reports {
        for st in &r.states {
            let _ = write!(out, "{},{},{}", r.c, r.model, st.delta);
            for i in 0..4 {
                for j in 0..4 {
                    let _ = write!(out, ",{}", st.sigma_delta[(i, j)]);
                }
            }
            let _ = writeln!(out, ",{}", r.limit);
        }
    }
    out
}
