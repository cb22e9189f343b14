//! Sample moments and goodness-of-fit statistics.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// 1% critical value of the Anderson–Darling statistic for normality with
/// estimated mean and variance, after the small-sample adjustment.
pub const AD_CRITICAL_1PCT: f64 = 1.035;

/// 1% coefficient of the two-sample Kolmogorov–Smirnov test.
pub const KS_COEFF_1PCT: f64 = 1.628;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    /// Unbiased.
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

pub fn moments(xs: &[f64]) -> Result<Moments> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::Degenerate(format!("{n} samples")));
    }
    let nf = n as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in xs {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    if m2 <= 0.0 {
        return Err(Error::Degenerate("zero variance".into()));
    }
    let (m2, m3, m4) = (m2 / nf, m3 / nf, m4 / nf);
    Ok(Moments {
        n,
        mean,
        variance: m2 * nf / (nf - 1.0),
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
    })
}

/// Anderson–Darling A² against a normal with the sample's own mean and
/// standard deviation, multiplied by `1 + 0.75/n + 2.25/n²`.
pub fn anderson_darling(xs: &[f64]) -> Result<f64> {
    let m = moments(xs)?;
    let sd = m.variance.sqrt();
    let mut z: Vec<f64> = xs.iter().map(|&x| (x - m.mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let normal = Normal::standard();
    let n = z.len();
    let nf = n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let lo = normal.cdf(z[i]).max(1e-300);
        let hi = normal.sf(z[n - 1 - i]).max(1e-300);
        s += (2.0 * i as f64 + 1.0) * (lo.ln() + hi.ln());
    }
    let a2 = -nf - s / nf;
    Ok(a2 * (1.0 + 0.75 / nf + 2.25 / (nf * nf)))
}

/// Two-sample Kolmogorov–Smirnov statistic sup |F_a - F_b|.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Degenerate("empty sample".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Rejection threshold for [`ks_two_sample`] at the 1% level.
pub fn ks_critical_1pct(na: usize, nb: usize) -> f64 {
    let (na, nb) = (na as f64, nb as f64);
    KS_COEFF_1PCT * ((na + nb) / (na * nb)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub critical_1pct: f64,
}

impl ChiSquareTest {
    pub fn passes(&self) -> bool {
        self.statistic <= self.critical_1pct
    }
}

/// Pearson goodness of fit of `observed` counts to probabilities `expected`.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(Error::param("chi-square needs matching category lists of length >= 2"));
    }
    let total: u64 = observed.iter().sum();
    let t = total as f64;
    let statistic = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| {
            let e = p * t;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = observed.len() - 1;
    let critical_1pct = ChiSquared::new(dof as f64)
        .map_err(|e| Error::param(e.to_string()))?
        .inverse_cdf(0.99);
    Ok(ChiSquareTest {
        statistic,
        dof,
        critical_1pct,
    })
}

/// Empirical `q`-quantile by linear interpolation between order statistics.
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}
