use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fluid::Mat4;

/// Edge-count law of the starting graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CovarianceModel {
    /// Exactly `floor(cn/2)` edges.
    FixedEdges,
    /// Binomially distributed edge count with mean `cn/2`.
    BinomialEdges,
}

impl fmt::Display for CovarianceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CovarianceModel::FixedEdges => "fixed",
            CovarianceModel::BinomialEdges => "binomial",
        })
    }
}

impl FromStr for CovarianceModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(CovarianceModel::FixedEdges),
            "binomial" => Ok(CovarianceModel::BinomialEdges),
            _ => Err(Error::param(format!("unknown covariance model '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialCovariance {
    pub model: CovarianceModel,
    pub sigma: Mat4,
}

/// Limiting covariance of `(X(0) - n chi(0)) / sqrt(n)`.
pub fn initial_covariance(model: CovarianceModel, c: f64) -> Result<InitialCovariance> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::param(format!("average degree {c} must be positive")));
    }
    let e1 = (-c).exp();
    let e2 = (-2.0 * c).exp();
    let (c2, c3) = (c * c, c * c * c);
    let mut s = Mat4::zeros();
    match model {
        CovarianceModel::FixedEdges => {
            s[(0, 0)] = c2 * e2 + c * e1 - c * e2 - c3 * e2;
            s[(0, 1)] = -c * e1 + c * e2 + c3 * e2;
            s[(1, 1)] = (e1 + c * e1) * (1.0 - e1 - c * e1) - c3 * e2;
        }
        CovarianceModel::BinomialEdges => {
            s[(0, 0)] = (c3 - 3.0 * c2 + c) * e2 + c * e1;
            s[(0, 1)] = (-c3 + 2.0 * c2 + c) * e2 - c * e1;
            s[(0, 2)] = (c - c2) * e1;
            s[(1, 1)] = (c3 - c2 - 2.0 * c - 1.0) * e2 + (c + 1.0) * e1;
            s[(1, 2)] = c2 * e1;
            s[(2, 2)] = c / 2.0;
        }
    }
    s.fill_lower_triangle_with_upper_triangle();
    Ok(InitialCovariance { model, sigma: s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_blocks() {
        for &c in &[0.5, 2.0] {
            let f = initial_covariance(CovarianceModel::FixedEdges, c).unwrap().sigma;
            for i in 0..4 {
                assert_eq!(f[(2, i)], 0.0);
                assert_eq!(f[(3, i)], 0.0);
            }
            let b = initial_covariance(CovarianceModel::BinomialEdges, c).unwrap().sigma;
            assert_eq!(b[(2, 2)], c / 2.0);
            assert_eq!(b.row(3).sum(), 0.0);
        }
    }

    #[test]
    fn psd() {
        for &c in &[0.3, 1.0, 2.0, 2.7, 5.0] {
            for m in [CovarianceModel::FixedEdges, CovarianceModel::BinomialEdges] {
                let s = initial_covariance(m, c).unwrap().sigma;
                assert_eq!(s, s.transpose());
                assert!(s.symmetric_eigen().eigenvalues.min() >= -1e-12, "{m} c={c}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for m in [CovarianceModel::FixedEdges, CovarianceModel::BinomialEdges] {
            assert_eq!(m.to_string().parse::<CovarianceModel>().unwrap(), m);
        }
        assert!("poisson".parse::<CovarianceModel>().is_err());
    }
}
