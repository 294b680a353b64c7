//! Classical Roe flux and its low-Mach variant.
//!
//! The diffusion `-1/2 R |L| R^-1 dq` is evaluated at the Roe average state
//! (sqrt-rho weighted velocities and enthalpy) so single shocks satisfying
//! the jump conditions are captured exactly. The wave strengths
//! `alpha = R^-1 dq` are computed analytically. No entropy fix is applied:
//! the scheme is meant to exhibit its non-entropic expansion shock in the
//! standing-sound-wave test.

use nalgebra::Vector4;

use crate::averages::StatePair;
use crate::error::{Error, Result};
use crate::flux::diffusion::rescaled_sound_speed;
use crate::flux::physical_flux_x_prim;
use crate::state::{conserved_to_primitive, primitive_to_conserved, Conserved, GasModel};

/// sqrt-rho weighted interface state of the classical Roe linearization.
#[derive(Debug, Clone, Copy)]
pub struct RoeAverage {
    pub rho: f64,
    pub vel_x: f64,
    pub vel_y: f64,
    pub enthalpy: f64,
    pub sound_speed: f64,
}

/// Roe average of a primitive state pair.
///
/// Fails with `DegenerateEigensystem` when the averaged sound speed is not
/// safely positive.
pub fn roe_average(pair: &StatePair, gas: &GasModel) -> Result<RoeAverage> {
    let l = &pair.left;
    let r = &pair.right;
    let ql = primitive_to_conserved(l, gas);
    let qr = primitive_to_conserved(r, gas);
    let hl = (ql.energy + l.pressure) / l.rho;
    let hr = (qr.energy + r.pressure) / r.rho;
    let wl = l.rho.sqrt();
    let wr = r.rho.sqrt();
    let vel_x = (wl * l.vel_x + wr * r.vel_x) / (wl + wr);
    let vel_y = (wl * l.vel_y + wr * r.vel_y) / (wl + wr);
    let enthalpy = (wl * hl + wr * hr) / (wl + wr);
    let c_sq = (gas.gamma - 1.0) * (enthalpy - 0.5 * (vel_x * vel_x + vel_y * vel_y));
    if !(c_sq.sqrt() > 1e-14) {
        return Err(Error::DegenerateEigensystem(c_sq.max(0.0).sqrt()));
    }
    Ok(RoeAverage {
        rho: wl * wr,
        vel_x,
        vel_y,
        enthalpy,
        sound_speed: c_sq.sqrt(),
    })
}

/// Roe flux `1/2 (f(ql) + f(qr)) - 1/2 R |L| R^-1 dq`; with `low_mach` the
/// acoustic eigenvalues use the rescaled sound speed `c~` instead of `c`.
pub fn roe_flux(
    left: &Conserved,
    right: &Conserved,
    low_mach: bool,
    m_cut: f64,
    gas: &GasModel,
) -> Result<Conserved> {
    let wl = conserved_to_primitive(left, gas)?;
    let wr = conserved_to_primitive(right, gas)?;
    roe_flux_prim(&StatePair::new(wl, wr), low_mach, m_cut, gas)
}

pub(crate) fn roe_flux_prim(
    pair: &StatePair,
    low_mach: bool,
    m_cut: f64,
    gas: &GasModel,
) -> Result<Conserved> {
    let avg = roe_average(pair, gas)?;
    let (u, v, h, c) = (avg.vel_x, avg.vel_y, avg.enthalpy, avg.sound_speed);

    let ql = primitive_to_conserved(&pair.left, gas);
    let qr = primitive_to_conserved(&pair.right, gas);
    let dq = qr - ql;

    // Wave strengths alpha = R^-1 dq for the eigenvector ordering
    // (u-c, u, u-shear, u+c); the shear column is (0, 0, -1, -v).
    let speed_sq = u * u + v * v;
    let alpha_2 =
        (gas.gamma - 1.0) / (c * c) * ((h - speed_sq) * dq.rho + u * dq.mom_x + v * dq.mom_y
            - dq.energy);
    let alpha_3 = v * dq.rho - dq.mom_y;
    let acoustic = (dq.mom_x - u * dq.rho) / (2.0 * c);
    let alpha_1 = 0.5 * (dq.rho - alpha_2) - acoustic;
    let alpha_4 = 0.5 * (dq.rho - alpha_2) + acoustic;

    let c_acoustic = if low_mach {
        rescaled_sound_speed(c, (speed_sq).sqrt(), m_cut)
    } else {
        c
    };
    let lambda = Vector4::new(
        (u - c_acoustic).abs(),
        u.abs(),
        u.abs(),
        (u + c_acoustic).abs(),
    );

    // Diffusion = R |L| alpha, assembled column by column.
    let a = Vector4::new(alpha_1, alpha_2, alpha_3, alpha_4).component_mul(&lambda);
    let diff = Conserved::new(
        a.x + a.y + a.w,
        a.x * (u - c) + a.y * u + a.w * (u + c),
        (a.x + a.y + a.w) * v - a.z,
        a.x * (h - c * u) + a.y * 0.5 * speed_sq - a.z * v + a.w * (h + c * u),
    );

    let central = (physical_flux_x_prim(&pair.left, gas) + physical_flux_x_prim(&pair.right, gas))
        * 0.5;
    Ok(central - diff * 0.5)
}
