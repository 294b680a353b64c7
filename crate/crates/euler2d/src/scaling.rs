//! Mach-scaling probe for the diffusion matrix.
//!
//! At a family of states with `|v| = M c` the primitive-variable diffusion
//! matrix `D_prim = (du/dq) Q (dr/dq) (dq/du)` is assembled numerically and
//! each entry's magnitude is fitted against `M` on a log-log scale. In
//! non-dimensional units the plain ES diffusion has `O(1/M)` entries at
//! (2,2), (2,4), (4,4) and (1,4) -- the excessive low-Mach diffusion -- while
//! the LM rescaling leaves only (2,4) at `O(1/M)`.
//!
//! `dr/dq` is obtained as the inverse of `dq/dr = R S R^T`; that identity is
//! itself verified against finite differences in the acceptance suite.

use nalgebra::Matrix4;

use crate::error::{Error, Result};
use crate::flux::diffusion::{
    eigenvector_matrix, lambda_matrix, scaling_matrix, DiffusionOperator, IntermediateState,
};
use crate::flux::FluxKind;
use crate::state::{GasModel, Primitive};

/// Entries whose unscaled magnitude stays below this floor at every probed
/// Mach level are reported as structural zeros instead of being fitted.
pub const STRUCTURAL_ZERO_FLOOR: f64 = 1e-10;

/// Result of the diffusion scaling probe.
///
/// `magnitudes` holds the non-dimensionalized entry magnitudes per Mach
/// level; `fitted_exponents` the least-squares log-log slopes, `NaN` for
/// structural zeros.
#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub kind: FluxKind,
    pub mach_levels: Vec<f64>,
    pub magnitudes: Vec<[[f64; 4]; 4]>,
    pub fitted_exponents: [[f64; 4]; 4],
    pub structural_zero: [[bool; 4]; 4],
}

/// Jacobian `dq/du` of the conserved with respect to the primitive
/// variables.
pub fn primitive_to_conserved_jacobian(w: &Primitive, gas: &GasModel) -> Matrix4<f64> {
    Matrix4::new(
        1.0,
        0.0,
        0.0,
        0.0,
        w.vel_x,
        w.rho,
        0.0,
        0.0,
        w.vel_y,
        0.0,
        w.rho,
        0.0,
        0.5 * w.speed_squared(),
        w.rho * w.vel_x,
        w.rho * w.vel_y,
        1.0 / (gas.gamma - 1.0),
    )
}

/// Jacobian `du/dq`, the inverse of [`primitive_to_conserved_jacobian`].
pub fn conserved_to_primitive_jacobian(w: &Primitive, gas: &GasModel) -> Matrix4<f64> {
    let g1 = gas.gamma - 1.0;
    Matrix4::new(
        1.0,
        0.0,
        0.0,
        0.0,
        -w.vel_x / w.rho,
        1.0 / w.rho,
        0.0,
        0.0,
        -w.vel_y / w.rho,
        0.0,
        1.0 / w.rho,
        0.0,
        0.5 * g1 * w.speed_squared(),
        -g1 * w.vel_x,
        -g1 * w.vel_y,
        g1,
    )
}

/// Primitive-variable diffusion matrix `(du/dq) Q (dr/dq) (dq/du)` at the
/// given state.
pub fn diffusion_matrix_prim(w: &Primitive, kind: FluxKind, gas: &GasModel) -> Matrix4<f64> {
    let inter = IntermediateState::from_primitive(w.rho, w.vel_x, w.vel_y, w.pressure, gas);
    let op = DiffusionOperator {
        eigvecs: eigenvector_matrix(&inter, gas),
        scaling: scaling_matrix(&inter, gas),
        eigvals: lambda_matrix(kind, &inter),
    };
    let q = op.matrix();
    let r = eigenvector_matrix(&inter, gas);
    let s = Matrix4::from_diagonal(&scaling_matrix(&inter, gas));
    let dqdr = r * s * r.transpose();
    let drdq = dqdr
        .try_inverse()
        .expect("dq/dr is positive definite for admissible states");
    conserved_to_primitive_jacobian(w, gas) * q * drdq * primitive_to_conserved_jacobian(w, gas)
}

/// Probes the non-dimensional Mach scaling of the diffusion matrix.
///
/// The state family is `rho = 1`, `p = 1/gamma` (so `c = 1`) and
/// `v = (M c, 0)`. Entries are non-dimensionalized with the reference scales
/// `(rho, M c, M c, rho c^2)` and the velocity scale `M c`.
pub fn diffusion_scaling_probe(
    kind: FluxKind,
    mach_levels: &[f64],
    gas: &GasModel,
) -> Result<ScalingReport> {
    if mach_levels.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 Mach levels, got {}",
            mach_levels.len()
        )));
    }
    if !mach_levels.windows(2).all(|w| w[0] > w[1]) {
        return Err(Error::DegenerateFit(
            "Mach levels must be strictly decreasing".to_string(),
        ));
    }
    let span = mach_levels[0] / mach_levels[mach_levels.len() - 1];
    if span < 100.0 {
        return Err(Error::DegenerateFit(format!(
            "levels must span at least 2 decades, got a factor {span}"
        )));
    }

    let mut magnitudes = Vec::with_capacity(mach_levels.len());
    let mut dimensional_max = [[0.0f64; 4]; 4];
    for &mach in mach_levels {
        let w = Primitive::new(1.0, mach, 0.0, 1.0 / gas.gamma);
        let c = 1.0;
        let d = diffusion_matrix_prim(&w, kind, gas);
        let reference = [1.0, mach * c, mach * c, w.rho * c * c];
        let mut scaled = [[0.0f64; 4]; 4];
        for (row, scaled_row) in scaled.iter_mut().enumerate() {
            for (col, entry) in scaled_row.iter_mut().enumerate() {
                let mag = d[(row, col)].abs();
                dimensional_max[row][col] = dimensional_max[row][col].max(mag);
                *entry = mag * reference[col] / (reference[row] * (mach * c));
            }
        }
        magnitudes.push(scaled);
    }

    let log_m: Vec<f64> = mach_levels.iter().map(|m| m.ln()).collect();
    let mut fitted = [[f64::NAN; 4]; 4];
    let mut zero = [[false; 4]; 4];
    for row in 0..4 {
        for col in 0..4 {
            if dimensional_max[row][col] < STRUCTURAL_ZERO_FLOOR {
                zero[row][col] = true;
                continue;
            }
            let log_d: Vec<f64> = magnitudes.iter().map(|m| m[row][col].ln()).collect();
            fitted[row][col] = least_squares_slope(&log_m, &log_d);
        }
    }

    Ok(ScalingReport {
        kind,
        mach_levels: mach_levels.to_vec(),
        magnitudes,
        fitted_exponents: fitted,
        structural_zero: zero,
    })
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        cov += (xi - mean_x) * (yi - mean_y);
        var += (xi - mean_x) * (xi - mean_x);
    }
    cov / var
}
