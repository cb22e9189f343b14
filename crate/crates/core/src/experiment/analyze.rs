use std::fmt::Write as _;

use super::samples::SampleRecord;
use super::stats::{anderson_darling, moments, Moments, AD_CRITICAL_1PCT};
use crate::error::{Error, Result};
use crate::oracles::alpha_c;

pub const MIN_SAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct ObservableSummary {
    pub name: &'static str,
    pub moments: Moments,
    pub anderson_darling: f64,
    pub normal_at_1pct: bool,
    /// Mean divided by `n/2` for the matching number and by `n` for rank;
    /// both tend to `alpha_c`.
    pub scaled_mean: f64,
    pub variance_per_n: f64,
    /// `variance_per_n` over its predicted limit, when a prediction exists.
    pub variance_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub n: usize,
    pub c: f64,
    pub samples: usize,
    pub alpha_c: f64,
    /// Predicted limiting variance of the matching number per vertex.
    pub predicted_sigma44: Option<f64>,
    pub observables: Vec<ObservableSummary>,
}

fn summarise(name: &'static str, xs: &[f64], scale: f64, n: usize, predicted: Option<f64>) -> Result<ObservableSummary> {
    let m = moments(xs)?;
    let a2 = anderson_darling(xs)?;
    let variance_per_n = m.variance / n as f64;
    Ok(ObservableSummary {
        name,
        moments: m,
        anderson_darling: a2,
        normal_at_1pct: a2 <= AD_CRITICAL_1PCT,
        scaled_mean: m.mean / scale,
        variance_per_n,
        variance_ratio: predicted.map(|p| variance_per_n / p),
    })
}

/// Moments, normality and variance comparison for the matching number and
/// the rank. The rank is about twice the matching number, so its predicted
/// variance is four times `predicted_sigma44`.
pub fn analyze(samples: &[SampleRecord], n: usize, c: f64, predicted_sigma44: Option<f64>) -> Result<AnalysisReport> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::Precondition(format!(
            "analysis needs at least {MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let mut observables = Vec::new();
    let nu: Vec<f64> = samples.iter().filter_map(|s| s.nu).map(|x| x as f64).collect();
    if !nu.is_empty() {
        observables.push(summarise("nu", &nu, n as f64 / 2.0, n, predicted_sigma44)?);
    }
    let rk: Vec<f64> = samples.iter().filter_map(|s| s.rk).map(|x| x as f64).collect();
    if !rk.is_empty() {
        observables.push(summarise("rk", &rk, n as f64, n, predicted_sigma44.map(|p| 4.0 * p))?);
    }
    if observables.is_empty() {
        return Err(Error::Degenerate("samples carry neither matching number nor rank".into()));
    }
    Ok(AnalysisReport {
        n,
        c,
        samples: samples.len(),
        alpha_c: alpha_c(c),
        predicted_sigma44,
        observables,
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}, c = {}, samples = {}", self.n, self.c, self.samples);
        let _ = writeln!(out, "alpha_c = {:.10}", self.alpha_c);
        if let Some(p) = self.predicted_sigma44 {
            let _ = writeln!(out, "predicted variance per vertex of nu = {p:.6}");
        }
        for o in &self.observables {
            let _ = writeln!(out, "[{}]", o.name);
            let _ = writeln!(out, "  mean             {:.4}", o.moments.mean);
            let _ = writeln!(out, "  scaled mean      {:.6} (alpha_c {:+.6})", o.scaled_mean, o.scaled_mean - self.alpha_c);
            let _ = writeln!(out, "  variance / n     {:.6}", o.variance_per_n);
            if let Some(r) = o.variance_ratio {
                let _ = writeln!(out, "  variance ratio   {r:.4}");
            }
            let _ = writeln!(out, "  skewness         {:+.4}", o.moments.skewness);
            let _ = writeln!(out, "  excess kurtosis  {:+.4}", o.moments.excess_kurtosis);
            let _ = writeln!(
                out,
                "  Anderson-Darling {:.4} ({} at 1%)",
                o.anderson_darling,
                if o.normal_at_1pct { "not rejected" } else { "rejected" }
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "observable,n,c,samples,mean,scaled_mean,alpha_c,variance_per_n,variance_ratio,skewness,excess_kurtosis,anderson_darling\n",
        );
        for o in &self.observables {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                o.name,
                self.n,
                self.c,
                self.samples,
                o.moments.mean,
                o.scaled_mean,
                self.alpha_c,
                o.variance_per_n,
                o.variance_ratio.map(|r| r.to_string()).unwrap_or_default(),
                o.moments.skewness,
                o.moments.excess_kurtosis,
                o.anderson_darling
            );
        }
        out
    }
}
