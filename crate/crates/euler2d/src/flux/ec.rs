//! Entropy-conservative two-state flux.
//!
//! The flux satisfies the Tadmor condition `dr . F* = dpsi_x` exactly (up to
//! roundoff), where `dr` is the jump in entropy variables and
//! `psi_x = rho u` the entropy flux potential. It is also in the kinetic
//! energy preserving form: its momentum components are `u_bar F_rho + p~` and
//! `v_bar F_rho`.

use crate::averages::{arithmetic_mean, average_pressure, logarithmic_mean, StatePair};
use crate::error::Result;
use crate::state::{Conserved, GasModel};

/// Entropy-conservative flux in x direction:
///
/// ```text
/// F_rho = rho_hat u_bar
/// F_mx  = u_bar F_rho + p~
/// F_my  = v_bar F_rho
/// F_E   = (1/(2 (gamma-1) beta_hat) - |v|^2_bar / 2) F_rho
///         + u_bar F_mx + v_bar F_my
/// ```
///
/// with `rho_hat`, `beta_hat` logarithmic means, bars arithmetic means, and
/// `p~` the beta-weighted pressure average.
pub fn entropy_conservative_flux(pair: &StatePair, gas: &GasModel) -> Result<Conserved> {
    let l = &pair.left;
    let r = &pair.right;

    let rho_hat = logarithmic_mean(l.rho, r.rho)?;
    let beta_hat = logarithmic_mean(l.beta(), r.beta())?;
    let u_bar = arithmetic_mean(l.vel_x, r.vel_x);
    let v_bar = arithmetic_mean(l.vel_y, r.vel_y);
    let p_tilde = average_pressure(pair);
    let speed_sq_bar = arithmetic_mean(l.speed_squared(), r.speed_squared());

    let f_rho = rho_hat * u_bar;
    let f_mx = u_bar * f_rho + p_tilde;
    let f_my = v_bar * f_rho;
    let f_energy = (0.5 / ((gas.gamma - 1.0) * beta_hat) - 0.5 * speed_sq_bar) * f_rho
        + u_bar * f_mx
        + v_bar * f_my;

    Ok(Conserved::new(f_rho, f_mx, f_my, f_energy))
}
