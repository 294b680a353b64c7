//! Two-state numerical fluxes for the interface Riemann problem.
//!
//! The entropy-stable family combines the entropy-conservative flux `F*`
//! ([`ec`]) with a diffusion `-1/2 Q dr` applied to the jump in entropy
//! variables ([`diffusion`]). The eigenvalue matrix inside `Q` selects the
//! family member: plain Roe-type eigenvalues (ES), equalized acoustic
//! eigenvalues (ES-KES), and their low-Mach rescaled versions (ES-LM,
//! ES-KES-LM). Roe, Roe-LM and local Lax-Friedrichs are the baselines.

pub mod diffusion;
pub mod ec;
pub mod roe;

use crate::averages::StatePair;
use crate::error::Result;
use crate::state::{
    conserved_to_primitive, primitive_to_conserved, sound_speed, Conserved, GasModel, Primitive,
};

pub use diffusion::{
    eigenvector_matrix, entropy_diffusion, intermediate_state, lambda_matrix,
    rescaled_sound_speed, scaling_matrix, DiffusionOperator, IntermediateState,
};
pub use ec::entropy_conservative_flux;
pub use roe::{roe_average, roe_flux, RoeAverage};

/// Interface orientation for the flux evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X,
    Y,
}

/// Flux scheme selector. The low-Mach members carry their cut-off Mach
/// number `m_cut` in `[0, 1]`.
///
/// `Ec` is the bare entropy-conservative flux with no diffusion. It is not a
/// usable scheme on its own (nothing dissipates at shocks) but it is the
/// reference operator for the kinetic-energy balance diagnostics, so it is a
/// first-class member here while the CLI only exposes the other seven.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxKind {
    Ec,
    Roe,
    RoeLm { m_cut: f64 },
    Es,
    EsKes,
    EsLm { m_cut: f64 },
    EsKesLm { m_cut: f64 },
    Llf,
}

impl FluxKind {
    /// Builds a flux kind from its scheme name; `m_cut` is only consulted by
    /// the low-Mach variants.
    pub fn parse(name: &str, m_cut: f64) -> Result<FluxKind> {
        if !(0.0..=1.0).contains(&m_cut) {
            return Err(crate::error::Error::InvalidConfig(format!(
                "m_cut must lie in [0, 1], got {m_cut}"
            )));
        }
        match name {
            "roe" => Ok(FluxKind::Roe),
            "roe-lm" => Ok(FluxKind::RoeLm { m_cut }),
            "es" => Ok(FluxKind::Es),
            "es-kes" => Ok(FluxKind::EsKes),
            "es-lm" => Ok(FluxKind::EsLm { m_cut }),
            "es-kes-lm" => Ok(FluxKind::EsKesLm { m_cut }),
            "llf" => Ok(FluxKind::Llf),
            _ => Err(crate::error::Error::InvalidConfig(format!(
                "unknown flux '{name}' (expected roe, roe-lm, es, es-kes, es-lm, es-kes-lm, llf)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FluxKind::Ec => "ec",
            FluxKind::Roe => "roe",
            FluxKind::RoeLm { .. } => "roe-lm",
            FluxKind::Es => "es",
            FluxKind::EsKes => "es-kes",
            FluxKind::EsLm { .. } => "es-lm",
            FluxKind::EsKesLm { .. } => "es-kes-lm",
            FluxKind::Llf => "llf",
        }
    }

    pub fn m_cut(&self) -> f64 {
        match self {
            FluxKind::RoeLm { m_cut } | FluxKind::EsLm { m_cut } | FluxKind::EsKesLm { m_cut } => {
                *m_cut
            }
            _ => 0.0,
        }
    }

    /// True for the fluxes of the form `F* - 1/2 Q dr`.
    pub fn is_entropy_stable(&self) -> bool {
        matches!(
            self,
            FluxKind::Es | FluxKind::EsKes | FluxKind::EsLm { .. } | FluxKind::EsKesLm { .. }
        )
    }
}

/// Exact flux of the x-split Euler equations,
/// `f(q) = (rho u, rho u^2 + p, rho u v, (E + p) u)`.
pub fn physical_flux_x(q: &Conserved, gas: &GasModel) -> Conserved {
    let w = crate::state::primitive_unchecked(q, gas);
    physical_flux_x_prim(&w, gas)
}

pub(crate) fn physical_flux_x_prim(w: &Primitive, gas: &GasModel) -> Conserved {
    let q = primitive_to_conserved(w, gas);
    Conserved::new(
        q.mom_x,
        q.mom_x * w.vel_x + w.pressure,
        q.mom_y * w.vel_x,
        (q.energy + w.pressure) * w.vel_x,
    )
}

/// Numerical interface flux for the given scheme and direction.
///
/// The y-direction flux is obtained by rotating the velocity vectors into the
/// x frame, applying the x flux, and rotating the momentum components back.
pub fn numerical_flux(
    left: &Conserved,
    right: &Conserved,
    kind: FluxKind,
    direction: Direction,
    gas: &GasModel,
) -> Result<Conserved> {
    let wl = conserved_to_primitive(left, gas)?;
    let wr = conserved_to_primitive(right, gas)?;
    numerical_flux_prim(&wl, &wr, kind, direction, gas)
}

/// [`numerical_flux`] starting from primitive interface states, the form
/// used by the solver after reconstruction.
pub fn numerical_flux_prim(
    left: &Primitive,
    right: &Primitive,
    kind: FluxKind,
    direction: Direction,
    gas: &GasModel,
) -> Result<Conserved> {
    match direction {
        Direction::X => flux_x(left, right, kind, gas),
        Direction::Y => {
            let f = flux_x(&rotate_to_x(left), &rotate_to_x(right), kind, gas)?;
            Ok(rotate_flux_back(f))
        }
    }
}

fn flux_x(left: &Primitive, right: &Primitive, kind: FluxKind, gas: &GasModel) -> Result<Conserved> {
    let pair = StatePair::new(*left, *right);
    match kind {
        FluxKind::Ec => entropy_conservative_flux(&pair, gas),
        FluxKind::Es | FluxKind::EsKes | FluxKind::EsLm { .. } | FluxKind::EsKesLm { .. } => {
            let central = entropy_conservative_flux(&pair, gas)?;
            let diff = entropy_diffusion(&pair, kind, gas)?;
            Ok(central + diff)
        }
        FluxKind::Roe => roe::roe_flux_prim(&pair, false, 0.0, gas),
        FluxKind::RoeLm { m_cut } => roe::roe_flux_prim(&pair, true, m_cut, gas),
        FluxKind::Llf => Ok(llf_flux(&pair, gas)),
    }
}

/// Local Lax-Friedrichs flux with `alpha = max(|u| + c)` over the two sides.
fn llf_flux(pair: &StatePair, gas: &GasModel) -> Conserved {
    let alpha = (pair.left.vel_x.abs() + sound_speed(&pair.left, gas))
        .max(pair.right.vel_x.abs() + sound_speed(&pair.right, gas));
    let fl = physical_flux_x_prim(&pair.left, gas);
    let fr = physical_flux_x_prim(&pair.right, gas);
    let ql = primitive_to_conserved(&pair.left, gas);
    let qr = primitive_to_conserved(&pair.right, gas);
    (fl + fr) * 0.5 - (qr - ql) * (0.5 * alpha)
}

/// Rotates a state so that the y direction becomes the flux normal.
fn rotate_to_x(w: &Primitive) -> Primitive {
    Primitive::new(w.rho, w.vel_y, -w.vel_x, w.pressure)
}

/// Undoes [`rotate_to_x`] on the momentum components of a flux vector.
fn rotate_flux_back(f: Conserved) -> Conserved {
    Conserved::new(f.rho, -f.mom_y, f.mom_x, f.energy)
}
