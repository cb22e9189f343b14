use nalgebra::{Matrix3, Vector3};

use super::lambert_w;
use crate::error::Result;

/// Eigen-decomposition `Q D Q^{-1}` of `z^2` times the leading 3x3 block of
/// the Jacobian along the fluid limit, in the limit `z -> 0`.
#[derive(Clone, Copy, Debug)]
pub struct EigenLimit {
    pub d: Matrix3<f64>,
    pub q: Matrix3<f64>,
    pub v0: Vector3<f64>,
}

impl EigenLimit {
    pub fn product(&self) -> Matrix3<f64> {
        let qi = self.q.try_inverse().expect("eigenvector matrix is invertible");
        self.q * self.d * qi
    }
}

pub fn limiting_eigensystem(c: f64) -> Result<EigenLimit> {
    let w = lambert_w(c)?;
    let scale = c * (1.0 + w);
    let d = Matrix3::from_diagonal(&Vector3::new(0.0, -3.0 * scale, -2.0 * scale));
    let v0 = Vector3::new(2.0 - 2.0 * w, w, 1.0);
    #[rustfmt::skip]
    let q = Matrix3::new(
        2.0 - 2.0 * w, 0.5 * (w - 1.0) * (3.0 * w - 1.0),  -4.0 * w,
        w,             0.5 * (-2.0 * w - 1.0) * (w - 1.0), 2.0 * w + 1.0,
        1.0,           1.0,                                1.0,
    );
    Ok(EigenLimit { d, q, v0 })
}
