//! Entropy diffusion `-1/2 Q dr` with `Q = R |L| S R^T`.
//!
//! `R` is the matrix of right eigenvectors of the flux Jacobian, `S` the
//! Barth scaling with `R S R^T = dq/dr`, and `|L|` the diagonal matrix of
//! eigenvalue magnitudes. `Q` is symmetric positive semi-definite for any
//! admissible state, which makes the diffusion entropy dissipative no matter
//! where it is evaluated. The intermediate state below is the particular
//! choice that in addition preserves stationary contacts.
//!
//! Eigenvalue variants:
//!
//! * ES:        `diag(|u-c|, |u|, |u|, |u+c|)`
//! * ES-KES:    `diag(|u|+c, |u|, |u|, |u|+c)` — equal acoustic entries make
//!   the diffusion dissipate kinetic energy
//! * ES-LM / ES-KES-LM: same with `c` replaced by the rescaled sound speed
//!   `c~ = c max(min(M, 1), M_cut)` in the acoustic entries only
//!
//! The low-Mach rescaling removes the `O(1/M)` entries that otherwise
//! dominate the primitive-variable diffusion matrix as `M -> 0`.

use nalgebra::{Matrix4, Vector4};

use crate::averages::{arithmetic_mean, logarithmic_mean, StatePair};
use crate::error::Result;
use crate::flux::FluxKind;
use crate::state::{entropy_vars_from_primitive, Conserved, GasModel};

/// Averaged interface state at which the diffusion matrix is evaluated.
///
/// Velocity and pressure are arithmetic averages; the density is
/// `rho = 2 p beta_hat` with `beta_hat` the logarithmic mean of
/// `beta = rho/(2p)`, so that `c = sqrt(gamma p / rho)` coincides with
/// `sqrt(gamma / (2 beta_hat))`, the value required for the contact
/// property.
#[derive(Debug, Clone, Copy)]
pub struct IntermediateState {
    pub rho: f64,
    pub vel_x: f64,
    pub vel_y: f64,
    pub pressure: f64,
    pub sound_speed: f64,
    pub enthalpy: f64,
}

impl IntermediateState {
    pub fn speed_squared(&self) -> f64 {
        self.vel_x * self.vel_x + self.vel_y * self.vel_y
    }

    pub fn speed(&self) -> f64 {
        self.speed_squared().sqrt()
    }

    /// Builds the state directly from primitive values, deriving sound speed
    /// and enthalpy. Used by the scaling probe to place the diffusion matrix
    /// at a prescribed state.
    pub fn from_primitive(rho: f64, vel_x: f64, vel_y: f64, pressure: f64, gas: &GasModel) -> Self {
        let sound_speed = (gas.gamma * pressure / rho).sqrt();
        let enthalpy = sound_speed * sound_speed / (gas.gamma - 1.0)
            + 0.5 * (vel_x * vel_x + vel_y * vel_y);
        IntermediateState {
            rho,
            vel_x,
            vel_y,
            pressure,
            sound_speed,
            enthalpy,
        }
    }
}

/// Interface average with the contact property.
pub fn intermediate_state(pair: &StatePair, gas: &GasModel) -> Result<IntermediateState> {
    let beta_hat = logarithmic_mean(pair.left.beta(), pair.right.beta())?;
    let vel_x = arithmetic_mean(pair.left.vel_x, pair.right.vel_x);
    let vel_y = arithmetic_mean(pair.left.vel_y, pair.right.vel_y);
    let pressure = arithmetic_mean(pair.left.pressure, pair.right.pressure);
    let rho = 2.0 * pressure * beta_hat;
    Ok(IntermediateState::from_primitive(
        rho, vel_x, vel_y, pressure, gas,
    ))
}

/// Matrix of right eigenvectors of the x-direction flux Jacobian, with
/// columns ordered by wave speed `u-c, u, u, u+c`:
///
/// ```text
///     | 1      1       0   1      |
/// R = | u-c    u       0   u+c    |
///     | v      v      -1   v      |
///     | H-cu   |v|^2/2 -v   H+cu  |
/// ```
pub fn eigenvector_matrix(w: &IntermediateState, _gas: &GasModel) -> Matrix4<f64> {
    let (u, v, c, h) = (w.vel_x, w.vel_y, w.sound_speed, w.enthalpy);
    Matrix4::new(
        1.0,
        1.0,
        0.0,
        1.0,
        u - c,
        u,
        0.0,
        u + c,
        v,
        v,
        -1.0,
        v,
        h - c * u,
        0.5 * w.speed_squared(),
        -v,
        h + c * u,
    )
}

/// Diagonal of the Barth scaling matrix
/// `S = diag(rho/(2 gamma), (gamma-1) rho / gamma, p, rho/(2 gamma))`,
/// which satisfies `R S R^T = dq/dr`.
pub fn scaling_matrix(w: &IntermediateState, gas: &GasModel) -> Vector4<f64> {
    Vector4::new(
        w.rho / (2.0 * gas.gamma),
        (gas.gamma - 1.0) * w.rho / gas.gamma,
        w.pressure,
        w.rho / (2.0 * gas.gamma),
    )
}

/// Rescaled sound speed `c~ = c max(min(M, 1), M_cut)` with `M = speed / c`.
pub fn rescaled_sound_speed(c: f64, speed: f64, m_cut: f64) -> f64 {
    c * (speed / c).min(1.0).max(m_cut)
}

/// Diagonal of the eigenvalue matrix `|L|` for the entropy-stable family.
///
/// Only the acoustic entries 1 and 4 differ between the variants; entries 2
/// and 3 stay `|u|` in all of them.
pub fn lambda_matrix(kind: FluxKind, w: &IntermediateState) -> Vector4<f64> {
    let u = w.vel_x;
    let c = w.sound_speed;
    let (lambda_1, lambda_4) = match kind {
        FluxKind::Es => ((u - c).abs(), (u + c).abs()),
        FluxKind::EsKes => (u.abs() + c, u.abs() + c),
        FluxKind::EsLm { m_cut } => {
            let ct = rescaled_sound_speed(c, w.speed(), m_cut);
            ((u - ct).abs(), (u + ct).abs())
        }
        FluxKind::EsKesLm { m_cut } => {
            let ct = rescaled_sound_speed(c, w.speed(), m_cut);
            (u.abs() + ct, u.abs() + ct)
        }
        _ => panic!("lambda_matrix needs an entropy-stable flux kind, got {kind:?}"),
    };
    Vector4::new(lambda_1, u.abs(), u.abs(), lambda_4)
}

/// The assembled diffusion operator `Q = R |L| S R^T`.
#[derive(Debug, Clone)]
pub struct DiffusionOperator {
    pub eigvecs: Matrix4<f64>,
    pub scaling: Vector4<f64>,
    pub eigvals: Vector4<f64>,
}

impl DiffusionOperator {
    pub fn new(kind: FluxKind, w: &IntermediateState, gas: &GasModel) -> DiffusionOperator {
        DiffusionOperator {
            eigvecs: eigenvector_matrix(w, gas),
            scaling: scaling_matrix(w, gas),
            eigvals: lambda_matrix(kind, w),
        }
    }

    /// Dense `Q`; symmetric because `|L| S` is diagonal.
    pub fn matrix(&self) -> Matrix4<f64> {
        let d = self.eigvals.component_mul(&self.scaling);
        self.eigvecs * Matrix4::from_diagonal(&d) * self.eigvecs.transpose()
    }

    /// `Q r` without forming the dense matrix.
    pub fn apply(&self, r: Vector4<f64>) -> Vector4<f64> {
        let d = self.eigvals.component_mul(&self.scaling);
        self.eigvecs * d.component_mul(&(self.eigvecs.transpose() * r))
    }
}

/// Diffusive flux contribution `-1/2 Q dr`.
pub fn entropy_diffusion(pair: &StatePair, kind: FluxKind, gas: &GasModel) -> Result<Conserved> {
    debug_assert!(kind.is_entropy_stable());
    let w = intermediate_state(pair, gas)?;
    let op = DiffusionOperator::new(kind, &w, gas);
    let dr = entropy_vars_from_primitive(&pair.right, gas)
        - entropy_vars_from_primitive(&pair.left, gas);
    let qdr = op.apply(Vector4::from(dr.to_array()));
    Ok(Conserved::new(-0.5 * qdr.x, -0.5 * qdr.y, -0.5 * qdr.z, -0.5 * qdr.w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Primitive;

    const GAS: GasModel = GasModel {
        gamma: 1.4,
        gas_constant: 1.0,
    };

    fn pair(l: Primitive, r: Primitive) -> StatePair {
        StatePair::new(l, r)
    }

    #[test]
    fn intermediate_state_collapses_on_equal_states() {
        let w = Primitive::new(1.0, 0.0, 0.0, 1.0);
        let inter = intermediate_state(&pair(w, w), &GAS).unwrap();
        assert!((inter.rho - 1.0).abs() < 1e-15);
        assert!((inter.pressure - 1.0).abs() < 1e-15);
        assert!((inter.sound_speed - 1.4f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn intermediate_state_riemann_pair() {
        let l = Primitive::new(1.0, 0.0, 0.0, 1.0);
        let r = Primitive::new(0.125, 0.0, 0.0, 0.1);
        let inter = intermediate_state(&pair(l, r), &GAS).unwrap();
        // beta_hat = logmean(0.5, 0.625) = 0.125 / ln 1.25
        let beta_hat = 0.125 / 1.25f64.ln();
        assert!((beta_hat - 0.5601775147155686).abs() < 1e-15);
        assert!((inter.pressure - 0.55).abs() < 1e-15);
        assert!((inter.rho - 2.0 * 0.55 * beta_hat).abs() < 1e-14);
        assert!((inter.rho - 0.6161952661871256).abs() < 1e-13);
    }

    #[test]
    fn intermediate_sound_speed_formulas_coincide() {
        // c = sqrt(gamma p / rho) with rho = 2 p beta_hat equals
        // sqrt(gamma / (2 beta_hat)) by construction.
        let l = Primitive::new(1.3, 0.2, -0.4, 2.0);
        let r = Primitive::new(0.7, -0.6, 0.1, 0.9);
        let inter = intermediate_state(&pair(l, r), &GAS).unwrap();
        let beta_hat = logarithmic_mean(l.beta(), r.beta()).unwrap();
        let direct = (GAS.gamma / (2.0 * beta_hat)).sqrt();
        assert!((inter.sound_speed - direct).abs() <= 1e-12 * direct);
        // Definitional enthalpy identity.
        let h = inter.sound_speed.powi(2) / (GAS.gamma - 1.0) + 0.5 * inter.speed_squared();
        assert_eq!(inter.enthalpy, h);
    }

    #[test]
    fn eigenvector_matrix_examples() {
        let w = IntermediateState::from_primitive(1.0, 0.0, 0.0, 1.0, &GAS);
        let r = eigenvector_matrix(&w, &GAS);
        let c = 1.4f64.sqrt();
        // First column (1, -c, 0, H) with H = c^2 / 0.4 = 3.5.
        assert_eq!(r[(0, 0)], 1.0);
        assert!((r[(1, 0)] + c).abs() < 1e-15);
        assert_eq!(r[(2, 0)], 0.0);
        assert!((r[(3, 0)] - 3.5).abs() < 1e-14);
        // Shear column is (0, 0, -1, -v) for any state.
        let w = IntermediateState::from_primitive(2.0, 0.3, -1.2, 0.7, &GAS);
        let r = eigenvector_matrix(&w, &GAS);
        assert_eq!(r[(0, 2)], 0.0);
        assert_eq!(r[(1, 2)], 0.0);
        assert_eq!(r[(2, 2)], -1.0);
        assert_eq!(r[(3, 2)], 1.2);
    }

    #[test]
    fn scaling_matrix_examples() {
        let w = IntermediateState::from_primitive(1.0, 0.0, 0.0, 1.0, &GAS);
        let s = scaling_matrix(&w, &GAS);
        assert!((s.x - 0.35714285714285715).abs() < 1e-16);
        assert!((s.y - 0.2857142857142857).abs() < 1e-15);
        assert_eq!(s.z, 1.0);
        assert_eq!(s.x, s.w);

        let w = IntermediateState::from_primitive(2.8, 0.0, 0.0, 5.0, &GAS);
        let s = scaling_matrix(&w, &GAS);
        assert!((s.x - 1.0).abs() < 1e-15);
        assert!((s.y - 0.8).abs() < 1e-15);
        assert_eq!(s.z, 5.0);
    }

    #[test]
    fn rescaled_sound_speed_examples() {
        let c = 1.4f64.sqrt();
        // Subsonic: c~ equals the speed itself.
        assert!((rescaled_sound_speed(c, 0.75, 0.0) - 0.75).abs() < 1e-15);
        // Supersonic clamps to c.
        assert_eq!(rescaled_sound_speed(c, 2.0 * c, 0.0), c);
        // Cut-off floor.
        assert_eq!(rescaled_sound_speed(1.0, 0.001, 0.01), 0.01);
    }

    #[test]
    fn lambda_matrix_examples() {
        // rho = p = 1 gives c = sqrt(gamma) = sqrt(1.4).
        let w = IntermediateState::from_primitive(1.0, 0.75, 0.0, 1.0, &GAS);
        let c = 1.4f64.sqrt();

        let l = lambda_matrix(FluxKind::Es, &w);
        assert!((l.x - (0.75 - c).abs()).abs() < 1e-15);
        assert_eq!(l.y, 0.75);
        assert!((l.w - (0.75 + c)).abs() < 1e-15);

        let l = lambda_matrix(FluxKind::EsKes, &w);
        assert!((l.x - (0.75 + c)).abs() < 1e-15);
        assert_eq!(l.x, l.w);

        // m_cut = 0, M = 0.75/c < 1, so c~ = |v| = 0.75.
        let l = lambda_matrix(FluxKind::EsKesLm { m_cut: 0.0 }, &w);
        assert!((l.x - 1.5).abs() < 1e-15);
        assert_eq!(l.x, l.w);
        assert_eq!(l.y, 0.75);
    }

    #[test]
    fn diffusion_vanishes_on_equal_states() {
        let w = Primitive::new(1.0, 0.75, -0.2, 1.0);
        let d = entropy_diffusion(&pair(w, w), FluxKind::Es, &GAS).unwrap();
        assert_eq!(d.max_abs(), 0.0);
    }

    #[test]
    fn diffusion_dissipates_on_riemann_pair() {
        let l = Primitive::new(1.0, 0.75, 0.0, 1.0);
        let r = Primitive::new(0.125, 0.0, 0.0, 0.1);
        let d = entropy_diffusion(&pair(l, r), FluxKind::Es, &GAS).unwrap();
        let dr = entropy_vars_from_primitive(&r, &GAS) - entropy_vars_from_primitive(&l, &GAS);
        assert!(dr.dot(d) < 0.0);
    }

    #[test]
    fn stationary_contact_leaves_density_and_energy_untouched() {
        let l = Primitive::new(1.0, 0.0, 0.0, 1.0);
        let r = Primitive::new(0.5, 0.0, 0.0, 1.0);
        for kind in [FluxKind::Es, FluxKind::EsKes] {
            let d = entropy_diffusion(&pair(l, r), kind, &GAS).unwrap();
            assert!(d.rho.abs() < 1e-12, "{kind:?}: rho {}", d.rho);
            assert!(d.energy.abs() < 1e-12, "{kind:?}: energy {}", d.energy);
        }
    }
}
