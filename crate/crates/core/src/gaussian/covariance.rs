use super::initial::{initial_covariance, CovarianceModel};
use super::ode::{integrate, OdeOptions};
use crate::error::{Error, Result};
use crate::fluid::{
    chi_of_z, diffusion_matrix, drift_eval, drift_f, ds_dz, s_star, z_delta, z_of_s, Mat4, Vec4,
    DEFAULT_KCAP,
};

#[derive(Clone, Copy, Debug)]
pub struct PropagateOptions {
    pub ode: OdeOptions,
    /// Truncation of the jump-index sum in the diffusion matrix.
    pub kcap: u32,
    /// Replace the Jacobian and diffusion by zero. Test hook only.
    pub frozen: bool,
}

impl Default for PropagateOptions {
    fn default() -> Self {
        Self {
            ode: OdeOptions::default(),
            kcap: DEFAULT_KCAP,
            frozen: false,
        }
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c <= std::f64::consts::E * (1.0 + 1e-12) {
        Ok(())
    } else {
        Err(Error::domain(format!("average degree {c} outside (0, e]")))
    }
}

fn to_mat(y: &[f64]) -> Mat4 {
    Mat4::from_column_slice(y)
}

enum Flow {
    /// Lyapunov equation for the covariance.
    Covariance,
    /// Linearised flow map.
    Tangent,
}

/// Integrates in `t = ln z`, where `z^2` times the Jacobian stays bounded,
/// from `z_from` down to `z_to`.
fn flow(c: f64, z_from: f64, z_to: f64, start: &Mat4, kind: Flow, opts: &PropagateOptions) -> Result<Mat4> {
    if !(z_to > 0.0 && z_to <= z_from && z_from <= c) {
        return Err(Error::domain(format!(
            "need 0 < z_to = {z_to} <= z_from = {z_from} <= c = {c}"
        )));
    }
    let rhs = |t: f64, y: &[f64], dy: &mut [f64]| -> Result<()> {
        let z = t.exp().min(c);
        let x = chi_of_z(z, c)?.chi;
        let dsdt = z * ds_dz(z, c)?;
        let m = to_mat(y);
        let d = if opts.frozen {
            Mat4::zeros()
        } else {
            let j = drift_eval(&x)?.jacobian;
            match kind {
                Flow::Covariance => {
                    let jm = j * m;
                    jm + jm.transpose() + diffusion_matrix(&x, opts.kcap)?
                }
                Flow::Tangent => j * m,
            }
        };
        dy.copy_from_slice((d * dsdt).as_slice());
        Ok(())
    };
    let y = integrate(rhs, z_from.ln(), z_to.ln(), start.as_slice(), &opts.ode).map_err(|e| match e {
        Error::Stiffness { z, step, detail } => Error::Stiffness {
            z: z.exp(),
            step,
            detail,
        },
        e => e,
    })?;
    let out = to_mat(&y);
    Ok(match kind {
        Flow::Covariance => (out + out.transpose()) * 0.5,
        Flow::Tangent => out,
    })
}

/// Covariance of the fluctuations at parameter `z_end`, starting from
/// `sigma0` at `z = c`.
pub fn propagate_to_z(c: f64, z_end: f64, sigma0: &Mat4, opts: &PropagateOptions) -> Result<Mat4> {
    check_c(c)?;
    flow(c, c, z_end, sigma0, Flow::Covariance, opts)
}

/// Continues a covariance already propagated to `z_from`.
pub(crate) fn propagate_between(
    c: f64,
    z_from: f64,
    z_to: f64,
    sigma: &Mat4,
    opts: &PropagateOptions,
) -> Result<Mat4> {
    flow(c, z_from, z_to, sigma, Flow::Covariance, opts)
}

/// Covariance at the fluid time where the edge density reaches `delta`.
pub fn propagate_covariance(c: f64, delta: f64, sigma0: &Mat4, opts: &PropagateOptions) -> Result<Mat4> {
    check_c(c)?;
    propagate_to_z(c, z_delta(c, delta)?, sigma0, opts)
}

/// Linearised flow map from fluid time `u` to fluid time `s`.
pub fn correlation_phi(c: f64, u: f64, s: f64, opts: &PropagateOptions) -> Result<Mat4> {
    check_c(c)?;
    let end = s_star(c)?;
    if !(0.0 <= u && u <= s && s < end) {
        return Err(Error::domain(format!("need 0 <= u = {u} <= s = {s} < s* = {end}")));
    }
    if u == s {
        return Ok(Mat4::identity());
    }
    phi_between_z(c, z_of_s(u, c)?, z_of_s(s, c)?, opts)
}

pub(crate) fn phi_between_z(c: f64, z_from: f64, z_to: f64, opts: &PropagateOptions) -> Result<Mat4> {
    if z_from == z_to {
        return Ok(Mat4::identity());
    }
    flow(c, z_from, z_to, &Mat4::identity(), Flow::Tangent, opts)
}

/// Covariance at the edge-threshold stopping time.
#[derive(Clone, Copy, Debug)]
pub struct CovarianceState {
    pub c: f64,
    pub delta: f64,
    /// Fluid value at the stop; `n` times this is the first-order mean.
    pub chi: Vec4,
    pub drift: Vec4,
    pub sigma_at_stop: Mat4,
    /// `I - F e3^T / F3`: removes the edge-count fluctuation by moving
    /// along the drift.
    pub projector: Mat4,
    pub sigma_delta: Mat4,
}

pub fn stopped_covariance(c: f64, delta: f64, sigma_at_stop: &Mat4) -> Result<CovarianceState> {
    let chi = chi_of_z(z_delta(c, delta)?, c)?.chi;
    let f = drift_f(&chi)?;
    let mut p = Mat4::identity();
    for i in 0..4 {
        p[(i, 2)] -= f[i] / f[2];
    }
    p[(2, 2)] = 0.0;
    let s = p * sigma_at_stop * p.transpose();
    Ok(CovarianceState {
        c,
        delta,
        chi,
        drift: f,
        sigma_at_stop: *sigma_at_stop,
        projector: p,
        sigma_delta: (s + s.transpose()) * 0.5,
    })
}

/// Initial covariance, propagation, and projection in one call.
pub fn stopped_at(
    c: f64,
    delta: f64,
    model: CovarianceModel,
    opts: &PropagateOptions,
) -> Result<CovarianceState> {
    let s0 = initial_covariance(model, c)?.sigma;
    let s = propagate_covariance(c, delta, &s0, opts)?;
    stopped_covariance(c, delta, &s)
}
