//! Deterministic limit of the rescaled leaf-removal statistics, the drift
//! and its Jacobian, the jump rates, and the limiting eigensystem near the
//! end of the process.
//!
//! Everything is parameterised by `z`, which runs from `c` (start) down to
//! `0` (end, for `c <= e`).

mod chi;
mod drift;
mod eigen;
mod rates;
mod special;

pub use chi::{
    chi_of_z, ds_dz, s_delta, s_star, trajectory_csv, z_delta, z_of_s, FluidPoint,
};
pub use drift::{drift_eval, drift_f, jacobian_df, z_of_x, DriftEval};
pub use eigen::{limiting_eigensystem, EigenLimit};
pub use rates::{diffusion_matrix, rate_beta, truncated_drift, RateIndex, DEFAULT_KCAP};
pub use special::{g_ratio, lambert_w, truncated_poisson_pmf};

pub type Vec4 = nalgebra::Vector4<f64>;
pub type Mat4 = nalgebra::Matrix4<f64>;
