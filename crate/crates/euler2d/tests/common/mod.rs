//! Shared test oracles: finite-difference Jacobians/Hessians and seeded
//! random admissible states. Everything here is independent of the library's
//! analytic formulas so it can serve as a cross-check on them.

#![allow(dead_code)]

use nalgebra::Matrix4;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use euler2d::state::{primitive_to_conserved, Conserved, GasModel, Primitive};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform draw in `[lo, hi]`.
pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Random admissible primitive state with density and pressure log-uniform
/// in `[rho_lo, rho_hi]` and speed uniform in `[0, speed_max]`.
pub fn random_primitive(
    rng: &mut ChaCha8Rng,
    rho_lo: f64,
    rho_hi: f64,
    speed_max: f64,
) -> Primitive {
    let rho = log_uniform(rng, rho_lo, rho_hi);
    let p = log_uniform(rng, rho_lo, rho_hi);
    let speed = rng.gen_range(0.0..speed_max);
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Primitive::new(rho, speed * angle.cos(), speed * angle.sin(), p)
}

pub fn random_conserved(
    rng: &mut ChaCha8Rng,
    gas: &GasModel,
    rho_lo: f64,
    rho_hi: f64,
    speed_max: f64,
) -> Conserved {
    primitive_to_conserved(&random_primitive(rng, rho_lo, rho_hi, speed_max), gas)
}

/// Central finite-difference Jacobian of a 4-vector map.
pub fn fd_jacobian(f: impl Fn([f64; 4]) -> [f64; 4], x: [f64; 4], h_rel: f64) -> Matrix4<f64> {
    let mut jac = Matrix4::zeros();
    for k in 0..4 {
        let h = h_rel * (1.0 + x[k].abs());
        let mut plus = x;
        let mut minus = x;
        plus[k] += h;
        minus[k] -= h;
        let fp = f(plus);
        let fm = f(minus);
        for row in 0..4 {
            jac[(row, k)] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    jac
}

/// Central finite-difference gradient of a scalar map.
pub fn fd_gradient(f: impl Fn([f64; 4]) -> f64, x: [f64; 4], h_abs: f64) -> [f64; 4] {
    let mut grad = [0.0; 4];
    for k in 0..4 {
        let mut plus = x;
        let mut minus = x;
        plus[k] += h_abs;
        minus[k] -= h_abs;
        grad[k] = (f(plus) - f(minus)) / (2.0 * h_abs);
    }
    grad
}

/// Central finite-difference Hessian of a scalar map.
pub fn fd_hessian(f: impl Fn([f64; 4]) -> f64, x: [f64; 4], h_rel: f64) -> Matrix4<f64> {
    let mut hess = Matrix4::zeros();
    let h: Vec<f64> = (0..4).map(|k| h_rel * (1.0 + x[k].abs())).collect();
    for a in 0..4 {
        for b in 0..4 {
            let mut pp = x;
            let mut pm = x;
            let mut mp = x;
            let mut mm = x;
            pp[a] += h[a];
            pp[b] += h[b];
            pm[a] += h[a];
            pm[b] -= h[b];
            mp[a] -= h[a];
            mp[b] += h[b];
            mm[a] -= h[a];
            mm[b] -= h[b];
            hess[(a, b)] = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h[a] * h[b]);
        }
    }
    // Symmetrize away the roundoff asymmetry.
    0.5 * (hess + hess.transpose())
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}
