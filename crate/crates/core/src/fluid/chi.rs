use std::fmt::Write as _;

use super::special::{lambert_w, ZTerms};
use super::{drift_f, Vec4};
use crate::error::{Error, Result};

/// Fluid-limit value of the rescaled statistics at parameter `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluidPoint {
    pub c: f64,
    pub z: f64,
    /// (leaves, heavy vertices, edges, time), all divided by `n`.
    pub chi: Vec4,
    pub s: f64,
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("average degree {c} must be positive")))
    }
}

/// Evaluates the fluid limit at `0 <= z <= c`. With `W = W(c e^z)`:
/// chi1 = (z^2 - zW(1 - e^{-z}))/c, chi2 = (1 - (1+z)e^{-z}) W/c,
/// chi3 = z^2/(2c), chi4 = (c - W - (z - W)^2/2)/c.
pub fn chi_of_z(z: f64, c: f64) -> Result<FluidPoint> {
    check_c(c)?;
    if !(0.0..=c).contains(&z) {
        return Err(Error::domain(format!("z = {z} outside [0, c = {c}]")));
    }
    let w = if z == c { c } else { lambert_w(c * z.exp())? };
    let t = ZTerms::new(z);
    let chi1 = (z * z + z * w * (-z).exp_m1()) / c;
    let chi2 = t.one_minus_poisson01() * w / c;
    let chi3 = z * z / (2.0 * c);
    // log beta = z - W since W e^W = c e^z
    let lb = z - w;
    let chi4 = (c - w - 0.5 * lb * lb) / c;
    Ok(FluidPoint {
        c,
        z,
        chi: Vec4::new(chi1.max(0.0), chi2, chi3, chi4),
        s: chi4,
    })
}

/// Time at which the fluid limit reaches `z = 0`.
pub fn s_star(c: f64) -> Result<f64> {
    check_c(c)?;
    let w = lambert_w(c)?;
    Ok((2.0 * c - 2.0 * w - w * w) / (2.0 * c))
}

/// `ds/dz = -z / (c (1 + W(c e^z)))` along the fluid limit.
pub fn ds_dz(z: f64, c: f64) -> Result<f64> {
    let w = lambert_w(c * z.exp())?;
    Ok(-z / (c * (1.0 + w)))
}

/// Parameter at which the fluid edge count equals `delta`: `sqrt(2 c delta)`.
pub fn z_delta(c: f64, delta: f64) -> Result<f64> {
    check_c(c)?;
    if !(delta > 0.0 && delta < c / 2.0) {
        return Err(Error::domain(format!("delta = {delta} outside (0, c/2 = {})", c / 2.0)));
    }
    Ok((2.0 * c * delta).sqrt())
}

pub fn s_delta(c: f64, delta: f64) -> Result<f64> {
    Ok(chi_of_z(z_delta(c, delta)?, c)?.s)
}

/// Inverse of `z -> s`: the parameter reached at time `s ∈ [0, s*]`.
pub fn z_of_s(s: f64, c: f64) -> Result<f64> {
    let end = s_star(c)?;
    if !(0.0..=end).contains(&s) {
        return Err(Error::domain(format!("s = {s} outside [0, s* = {end}]")));
    }
    // s is strictly decreasing in z.
    let (mut lo, mut hi) = (0.0, c);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if chi_of_z(mid, c)?.s > s {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Trajectory table on `points` values of `z` spaced evenly in `(0, c]`,
/// header `z,s,chi1,chi2,chi3,chi4,F1,F2,F3`.
pub fn trajectory_csv(c: f64, points: usize) -> Result<String> {
    let mut out = String::from("z,s,chi1,chi2,chi3,chi4,F1,F2,F3\n");
    for i in 0..points {
        let z = c * (points - i) as f64 / points as f64;
        let p = chi_of_z(z, c)?;
        let f = drift_f(&p.chi)?;
        let _ = writeln!(
            out,
            "{z},{},{},{},{},{},{},{},{}",
            p.s, p.chi[0], p.chi[1], p.chi[2], p.chi[3], f[0], f[1], f[2]
        );
    }
    Ok(out)
}
