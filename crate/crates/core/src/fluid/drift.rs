use super::special::ZTerms;
use super::{Mat4, Vec4};
use crate::error::{Error, Result};

/// Drift and Jacobian at a state `x`.
#[derive(Clone, Copy, Debug)]
pub struct DriftEval {
    pub z: f64,
    pub f: Vec4,
    pub jacobian: Mat4,
}

fn ratio(x: &Vec4) -> Result<f64> {
    if !(x[1] > 0.0 && x[2] > 0.0) || x[0] < 0.0 {
        return Err(Error::Degenerate(format!(
            "state ({}, {}, {}) needs x1 >= 0, x2 > 0, x3 > 0",
            x[0], x[1], x[2]
        )));
    }
    Ok((2.0 * x[2] - x[0]) / x[1])
}

/// The unique `z >= 0` with `z (e^z - 1) / f(z) = (2 x3 - x1) / x2`.
pub fn z_of_x(x: &Vec4) -> Result<f64> {
    solve_g(ratio(x)?)
}

pub(crate) fn solve_g(r: f64) -> Result<f64> {
    if !(r >= 2.0) {
        if r > 2.0 - 1e-12 {
            return Ok(0.0);
        }
        return Err(Error::Degenerate(format!("ratio {r} below 2 has no root")));
    }
    if r == 2.0 {
        return Ok(0.0);
    }
    // g(z) > z, so the root lies below r.
    let (mut lo, mut hi) = (0.0, r);
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if ZTerms::new(mid).g < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut z = 0.5 * (lo + hi);
    for _ in 0..100 {
        let t = ZTerms::new(z);
        let step = (t.g - r) / t.dg;
        let next = (z - step).clamp(lo, hi);
        let done = (next - z).abs() <= 1e-15 * z.max(1e-300);
        z = next;
        if done {
            break;
        }
    }
    Ok(z)
}

struct Parts {
    t: ZTerms,
    p: f64,
    q: f64,
}

fn parts(x: &Vec4) -> Result<Parts> {
    let z = z_of_x(x)?;
    Ok(Parts {
        t: ZTerms::new(z),
        p: x[0] / (2.0 * x[2]),
        q: x[1] / (2.0 * x[2]),
    })
}

fn f_from(pt: &Parts) -> Vec4 {
    let Parts { t, p, q } = pt;
    Vec4::new(
        -1.0 - p + q * q * t.k1 - p * q * t.k2,
        -1.0 + p - q * q * t.k1,
        -1.0 - q * t.k2,
        1.0,
    )
}

/// Expected change of the rescaled statistics per unit time.
pub fn drift_f(x: &Vec4) -> Result<Vec4> {
    Ok(f_from(&parts(x)?))
}

/// Analytic Jacobian of [`drift_f`]; `z` is differentiated implicitly
/// through its defining equation.
pub fn jacobian_df(x: &Vec4) -> Result<Mat4> {
    Ok(drift_eval(x)?.jacobian)
}

pub fn drift_eval(x: &Vec4) -> Result<DriftEval> {
    let pt = parts(x)?;
    let Parts { t, p, q } = pt;
    let f = f_from(&pt);
    let dk2 = t.k2 * (1.0 - t.dlog_phi);
    let dk1 = t.k1 * (1.0 - 2.0 * t.dlog_phi);

    // partials of F1..F3 in (p, q, z)
    let d = [
        [-1.0 - q * t.k2, 2.0 * q * t.k1 - p * t.k2, q * q * dk1 - p * q * dk2],
        [1.0, -2.0 * q * t.k1, -q * q * dk1],
        [0.0, -t.k2, -q * dk2],
    ];
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let r = (2.0 * x3 - x1) / x2;
    let gz = x2 * t.dg;
    // rows: p, q, z; columns x1, x2, x3
    let inner = [
        [1.0 / (2.0 * x3), 0.0, -x1 / (2.0 * x3 * x3)],
        [0.0, 1.0 / (2.0 * x3), -x2 / (2.0 * x3 * x3)],
        [-1.0 / gz, -r / gz, 2.0 / gz],
    ];
    let mut jac = Mat4::zeros();
    for i in 0..3 {
        for j in 0..3 {
            jac[(i, j)] = (0..3).map(|k| d[i][k] * inner[k][j]).sum();
        }
    }
    Ok(DriftEval { z: t.z, f, jacobian: jac })
}
