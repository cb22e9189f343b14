use crate::error::{Error, Result};

/// Principal branch of the Lambert W function on `[0, inf)`, by Halley
/// iteration.
pub fn lambert_w(t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("lambert_w({t}) outside [0, inf)")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if t.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut w = if t < 3.0 {
        t.ln_1p()
    } else {
        let l1 = t.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..100 {
        let ew = w.exp();
        let fw = w * ew - t;
        if fw == 0.0 {
            break;
        }
        let step = fw / (ew * (w + 1.0) - (w + 2.0) * fw / (2.0 * w + 2.0));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

const SERIES_TERMS: usize = 30;
const SERIES_CUTOFF: f64 = 1.0;

/// Quantities derived from `f(z) = e^z - z - 1` that the drift needs.
/// `phi = f/z^2` and `psi = (e^z - 1)/z` are evaluated by power series for
/// small `z` and by `e^{-z}` forms otherwise, so nothing cancels or
/// overflows.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ZTerms {
    pub z: f64,
    /// `z (e^z - 1) / f(z)`, equal to 2 at zero.
    pub g: f64,
    pub dg: f64,
    /// `z^2 / f(z) = 1/phi`.
    pub k: f64,
    /// `e^z k`.
    pub k2: f64,
    /// `e^z k^2`.
    pub k1: f64,
    /// `phi'/phi`.
    pub dlog_phi: f64,
}

impl ZTerms {
    pub fn new(z: f64) -> Self {
        if z < SERIES_CUTOFF {
            let (mut phi, mut dphi, mut psi, mut dpsi) = (0.0, 0.0, 0.0, 0.0);
            // fact = (j+1)!, running
            let mut fact = 1.0;
            let mut zj = 1.0;
            let mut zjm1 = 0.0;
            for j in 0..SERIES_TERMS {
                let f1 = fact;
                let f2 = fact * (j as f64 + 2.0);
                psi += zj / f1;
                phi += zj / f2;
                dpsi += j as f64 * zjm1 / f1;
                dphi += j as f64 * zjm1 / f2;
                zjm1 = zj;
                zj *= z;
                fact = f2;
            }
            let g = psi / phi;
            let dg = (dpsi * phi - psi * dphi) / (phi * phi);
            let k = 1.0 / phi;
            let k2 = z.exp() * k;
            Self {
                z,
                g,
                dg,
                k,
                k2,
                k1: k2 * k,
                dlog_phi: dphi / phi,
            }
        } else {
            let em = (-z).exp();
            let a = -(-z).exp_m1();
            let b = 1.0 - (1.0 + z) * em;
            let k = z * z * em / b;
            let k2 = z * z / b;
            Self {
                z,
                g: z * a / b,
                dg: a / b + z * em * (b - z * a) / (b * b),
                k,
                k2,
                k1: k2 * k,
                dlog_phi: a / b - 2.0 / z,
            }
        }
    }

    /// `1 - (1+z) e^{-z} = e^{-z} z^2 phi`.
    pub fn one_minus_poisson01(&self) -> f64 {
        let z = self.z;
        if z < SERIES_CUTOFF {
            (-z).exp() * z * z / self.k
        } else {
            1.0 - (1.0 + z) * (-z).exp()
        }
    }
}

/// `z (e^z - 1) / (e^z - z - 1)`, strictly increasing from 2 at `z = 0`.
pub fn g_ratio(z: f64) -> f64 {
    ZTerms::new(z).g
}

/// `P[Q = d | Q >= 2]` for `Q ~ Poisson(z)`; zero for `d < 2`.
pub fn truncated_poisson_pmf(z: f64, d: u32) -> f64 {
    if d < 2 {
        return 0.0;
    }
    // z^d / (d! f(z)) = z^{d-2} / (d! phi(z))
    let t = ZTerms::new(z);
    let mut v = t.k;
    for i in 1..=d {
        v /= i as f64;
        if i > 2 {
            v *= z;
        }
    }
    v
}
