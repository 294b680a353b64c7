//! Quantitative verification instruments.
//!
//! Everything here is a pure function of a field snapshot: entropy
//! functionals, the discrete kinetic-energy balance, flux-level dissipation
//! probes, and Mach fields. The Mach-scaling probe for the diffusion matrix
//! lives in [`crate::scaling`].

use crate::averages::StatePair;
use crate::error::Result;
use crate::flux::{numerical_flux_prim, Direction, FluxKind};
use crate::grid::{Boundaries, Field2D};
use crate::solver::compute_rhs;
use crate::state::{
    entropy_vars_from_primitive, entropy_pair, physical_entropy, primitive_to_conserved,
    sound_speed, Conserved, GasModel, Primitive,
};
use crate::reconstruct::ReconstructionScheme;

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy)]
pub struct DiagnosticsRecord {
    pub time: f64,
    /// `sum_ij U(q_ij) dx dy` with `U = -rho s / (gamma - 1)`.
    pub total_entropy: f64,
    /// `sum_ij rho |v|^2 / 2 dx dy`.
    pub total_kinetic_energy: f64,
    pub max_mach: f64,
    pub ke_balance_residual: f64,
}

impl DiagnosticsRecord {
    pub const CSV_HEADER: &'static str =
        "time,total_entropy,total_kinetic_energy,max_mach,ke_balance_residual";

    pub fn measure(field: &Field2D, kind: FluxKind, gas: &GasModel) -> Result<DiagnosticsRecord> {
        Ok(DiagnosticsRecord {
            time: field.time,
            total_entropy: total_entropy(field, gas),
            total_kinetic_energy: total_kinetic_energy(field, gas),
            max_mach: max_mach(field, gas),
            ke_balance_residual: ke_balance_residual(field, kind, gas)?,
        })
    }
}

/// Per-cell physical entropy `s = ln(p rho^-gamma)`.
pub fn entropy_field(field: &Field2D, gas: &GasModel) -> Vec<f64> {
    field
        .cells
        .iter()
        .map(|q| physical_entropy(&crate::state::primitive_unchecked(q, gas), gas))
        .collect()
}

/// Per-cell mathematical entropy `U = -rho s / (gamma - 1)`, the quantity
/// whose cell values stay non-positive for the entropy-stable schemes in the
/// standing-sound-wave test.
pub fn math_entropy_field(field: &Field2D, gas: &GasModel) -> Vec<f64> {
    field.cells.iter().map(|q| entropy_pair(q, gas).0).collect()
}

/// Discrete entropy functional `sum U dx dy`.
pub fn total_entropy(field: &Field2D, gas: &GasModel) -> f64 {
    let mut acc = 0.0;
    for q in &field.cells {
        acc += entropy_pair(q, gas).0;
    }
    acc * field.grid.cell_area()
}

/// Discrete kinetic energy `sum rho |v|^2 / 2 dx dy`.
pub fn total_kinetic_energy(field: &Field2D, gas: &GasModel) -> f64 {
    let _ = gas;
    let mut acc = 0.0;
    for q in &field.cells {
        acc += 0.5 * (q.mom_x * q.mom_x + q.mom_y * q.mom_y) / q.rho;
    }
    acc * field.grid.cell_area()
}

/// Per-cell local Mach number `|v| / c`.
pub fn mach_field(field: &Field2D, gas: &GasModel) -> Vec<f64> {
    field
        .cells
        .iter()
        .map(|q| {
            let w = crate::state::primitive_unchecked(q, gas);
            w.speed() / sound_speed(&w, gas)
        })
        .collect()
}

pub fn max_mach(field: &Field2D, gas: &GasModel) -> f64 {
    mach_field(field, gas).into_iter().fold(0.0, f64::max)
}

/// Entropy production of a single interface flux, `dr . F - dpsi_x`.
///
/// Vanishes (to roundoff) for the entropy-conservative flux, is non-positive
/// for the entropy-stable family, and carries no sign for the Roe baselines
/// -- that sign-indefiniteness is exactly what the standing-sound-wave test
/// exposes.
pub fn flux_entropy_dissipation(pair: &StatePair, kind: FluxKind, gas: &GasModel) -> Result<f64> {
    let flux = numerical_flux_prim(&pair.left, &pair.right, kind, Direction::X, gas)?;
    let dr = entropy_vars_from_primitive(&pair.right, gas)
        - entropy_vars_from_primitive(&pair.left, gas);
    let dpsi = pair.right.rho * pair.right.vel_x - pair.left.rho * pair.left.vel_x;
    Ok(dr.dot(flux) - dpsi)
}

/// The two sides of the discrete kinetic-energy balance.
#[derive(Debug, Clone, Copy)]
pub struct KeBalance {
    /// `sum_ij (-|v_ij|^2/2 d rho_ij/dt + v_ij . d(rho v)_ij/dt) dx dy`.
    pub rate_part: f64,
    /// `sum_interfaces <p> du/dx dx dy` plus the y-direction terms.
    pub work_part: f64,
    /// Gross magnitude of all summed terms. On symmetric fields the two
    /// parts cancel internally to roundoff, so this is the scale against
    /// which the residual is meaningful.
    pub magnitude: f64,
}

impl KeBalance {
    pub fn residual(&self) -> f64 {
        self.rate_part - self.work_part
    }
}

/// Discrete kinetic-energy balance
///
/// ```text
/// sum_ij (-|v_ij|^2/2 d rho_ij/dt + v_ij . d(rho v)_ij/dt) dx dy   (rate part)
///   = sum_interfaces <p> du/dx dx dy + y-terms                     (work part)
/// ```
///
/// evaluated with the constant-reconstruction periodic operator, the setting
/// in which the identity is exact for fluxes in kinetic-energy-preserving
/// form. `<p>` is read off the central flux part as
/// `component2 - u_bar * component1` (for the entropy-stable family the
/// central part is the entropy-conservative flux; for the baselines it is
/// the arithmetic flux average).
pub fn ke_balance(field: &Field2D, kind: FluxKind, gas: &GasModel) -> Result<KeBalance> {
    let rates = compute_rhs(
        field,
        kind,
        ReconstructionScheme::Constant,
        Boundaries::periodic(),
        gas,
    )?;
    let prims = field.primitives(gas)?;
    let area = field.grid.cell_area();

    let mut rate_part = 0.0;
    let mut magnitude = 0.0;
    for (w, r) in prims.iter().zip(&rates) {
        let term = -0.5 * w.speed_squared() * r.rho + w.vel_x * r.mom_x + w.vel_y * r.mom_y;
        rate_part += term;
        magnitude += term.abs();
    }
    rate_part *= area;
    magnitude *= area;

    let central = |l: &Primitive, r: &Primitive, dir: Direction| -> Result<Conserved> {
        if kind.is_entropy_stable() || kind == FluxKind::Ec {
            numerical_flux_prim(l, r, FluxKind::Ec, dir, gas)
        } else {
            let rot = |w: &Primitive| match dir {
                Direction::X => *w,
                Direction::Y => Primitive::new(w.rho, w.vel_y, -w.vel_x, w.pressure),
            };
            let fl = crate::flux::physical_flux_x(&primitive_to_conserved(&rot(l), gas), gas);
            let fr = crate::flux::physical_flux_x(&primitive_to_conserved(&rot(r), gas), gas);
            let f = (fl + fr) * 0.5;
            Ok(match dir {
                Direction::X => f,
                Direction::Y => Conserved::new(f.rho, -f.mom_y, f.mom_x, f.energy),
            })
        }
    };

    let nx = field.grid.nx;
    let ny = field.grid.ny;
    let mut work_part = 0.0;
    for j in 0..ny {
        for i in 0..nx {
            let l = prims[j * nx + i];
            let r = prims[j * nx + (i + 1) % nx];
            let f = central(&l, &r, Direction::X)?;
            let p_interface = f.mom_x - 0.5 * (l.vel_x + r.vel_x) * f.rho;
            let term = p_interface * (r.vel_x - l.vel_x) * field.grid.dy;
            work_part += term;
            magnitude += term.abs();
        }
    }
    for j in 0..ny {
        for i in 0..nx {
            let l = prims[j * nx + i];
            let r = prims[((j + 1) % ny) * nx + i];
            let g = central(&l, &r, Direction::Y)?;
            let p_interface = g.mom_y - 0.5 * (l.vel_y + r.vel_y) * g.rho;
            let term = p_interface * (r.vel_y - l.vel_y) * field.grid.dx;
            work_part += term;
            magnitude += term.abs();
        }
    }

    Ok(KeBalance {
        rate_part,
        work_part,
        magnitude,
    })
}

/// Kinetic-energy balance residual, rate part minus pressure-work part.
///
/// Vanishes for the bare entropy-conservative operator; stays non-positive
/// when the diffusion has equal acoustic eigenvalues (ES-KES, ES-KES-LM); no
/// sign is guaranteed for ES/ES-LM.
pub fn ke_balance_residual(field: &Field2D, kind: FluxKind, gas: &GasModel) -> Result<f64> {
    Ok(ke_balance(field, kind, gas)?.residual())
}
