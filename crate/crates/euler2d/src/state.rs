//! State representations and ideal-gas thermodynamics.
//!
//! Three equivalent descriptions of a gas state are used throughout:
//! conserved variables `q = (rho, rho u, rho v, E)` updated by the finite
//! volume scheme, primitive variables `(rho, u, v, p)` used for
//! reconstruction and for assembling diffusion matrices, and entropy
//! variables `r = U'(q)` whose jumps drive the entropy-stable diffusion.
//!
//! The entropy pair is the thermodynamic one,
//! `U = -rho s / (gamma - 1)` with `s = ln(p rho^-gamma)`, and the entropy
//! flux potential is `psi = rho v`.

use crate::error::{Error, Result};

/// States with density or pressure below this floor are treated as
/// inadmissible and raise an error instead of being clipped; clipping would
/// hide exactly the stability failures the diagnostics are meant to detect.
pub const ADMISSIBILITY_FLOOR: f64 = 1e-12;

/// Ideal-gas parameters.
///
/// The specific gas constant only fixes the temperature scale; every formula
/// in the solver is written in terms of `beta = rho / (2 p)`, so temperature
/// is never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    /// Ratio of specific heats, > 1.
    pub gamma: f64,
    /// Specific gas constant, > 0.
    pub gas_constant: f64,
}

impl GasModel {
    pub fn new(gamma: f64, gas_constant: f64) -> GasModel {
        assert!(gamma > 1.0, "gamma must exceed 1, got {gamma}");
        assert!(
            gas_constant > 0.0,
            "gas constant must be positive, got {gas_constant}"
        );
        GasModel {
            gamma,
            gas_constant,
        }
    }

    /// Diatomic gas with unit gas constant, the default for all experiments.
    pub fn air() -> GasModel {
        GasModel::new(1.4, 1.0)
    }
}

/// Cell state in conserved variables: density, momentum densities, and total
/// energy density.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Conserved {
    pub rho: f64,
    pub mom_x: f64,
    pub mom_y: f64,
    pub energy: f64,
}

impl Conserved {
    pub const ZERO: Conserved = Conserved {
        rho: 0.0,
        mom_x: 0.0,
        mom_y: 0.0,
        energy: 0.0,
    };

    pub fn new(rho: f64, mom_x: f64, mom_y: f64, energy: f64) -> Conserved {
        Conserved {
            rho,
            mom_x,
            mom_y,
            energy,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rho.is_finite()
            && self.mom_x.is_finite()
            && self.mom_y.is_finite()
            && self.energy.is_finite()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.mom_x, self.mom_y, self.energy]
    }

    pub fn from_array(a: [f64; 4]) -> Conserved {
        Conserved::new(a[0], a[1], a[2], a[3])
    }

    /// Component-wise maximum absolute value.
    pub fn max_abs(&self) -> f64 {
        self.rho
            .abs()
            .max(self.mom_x.abs())
            .max(self.mom_y.abs())
            .max(self.energy.abs())
    }
}

impl std::ops::Add for Conserved {
    type Output = Conserved;
    fn add(self, o: Conserved) -> Conserved {
        Conserved::new(
            self.rho + o.rho,
            self.mom_x + o.mom_x,
            self.mom_y + o.mom_y,
            self.energy + o.energy,
        )
    }
}

impl std::ops::Sub for Conserved {
    type Output = Conserved;
    fn sub(self, o: Conserved) -> Conserved {
        Conserved::new(
            self.rho - o.rho,
            self.mom_x - o.mom_x,
            self.mom_y - o.mom_y,
            self.energy - o.energy,
        )
    }
}

impl std::ops::Mul<f64> for Conserved {
    type Output = Conserved;
    fn mul(self, a: f64) -> Conserved {
        Conserved::new(self.rho * a, self.mom_x * a, self.mom_y * a, self.energy * a)
    }
}

impl std::ops::Neg for Conserved {
    type Output = Conserved;
    fn neg(self) -> Conserved {
        self * -1.0
    }
}

/// Cell state in primitive variables: density, velocities, pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub vel_x: f64,
    pub vel_y: f64,
    pub pressure: f64,
}

impl Primitive {
    pub fn new(rho: f64, vel_x: f64, vel_y: f64, pressure: f64) -> Primitive {
        Primitive {
            rho,
            vel_x,
            vel_y,
            pressure,
        }
    }

    pub fn speed_squared(&self) -> f64 {
        self.vel_x * self.vel_x + self.vel_y * self.vel_y
    }

    pub fn speed(&self) -> f64 {
        self.speed_squared().sqrt()
    }

    /// Inverse temperature variable `beta = rho / (2 p)`.
    pub fn beta(&self) -> f64 {
        self.rho / (2.0 * self.pressure)
    }
}

/// Entropy variables `r = U'(q)`; `r4 = -2 beta` is negative for every
/// admissible state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyVars {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
}

impl EntropyVars {
    pub fn new(r1: f64, r2: f64, r3: f64, r4: f64) -> EntropyVars {
        EntropyVars { r1, r2, r3, r4 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }

    pub fn from_array(a: [f64; 4]) -> EntropyVars {
        EntropyVars::new(a[0], a[1], a[2], a[3])
    }

    /// Dot product with a conserved-shaped 4-vector (a state or a flux).
    pub fn dot(&self, f: Conserved) -> f64 {
        self.r1 * f.rho + self.r2 * f.mom_x + self.r3 * f.mom_y + self.r4 * f.energy
    }
}

impl std::ops::Sub for EntropyVars {
    type Output = EntropyVars;
    fn sub(self, o: EntropyVars) -> EntropyVars {
        EntropyVars::new(
            self.r1 - o.r1,
            self.r2 - o.r2,
            self.r3 - o.r3,
            self.r4 - o.r4,
        )
    }
}

/// Assembles `E = p/(gamma-1) + rho |v|^2 / 2`.
pub fn primitive_to_conserved(w: &Primitive, gas: &GasModel) -> Conserved {
    Conserved::new(
        w.rho,
        w.rho * w.vel_x,
        w.rho * w.vel_y,
        w.pressure / (gas.gamma - 1.0) + 0.5 * w.rho * w.speed_squared(),
    )
}

/// Recovers `(rho, u, v, p)` with `p = (gamma-1)(E - rho |v|^2 / 2)`.
///
/// Fails with `NonPositiveDensity` / `NonPositivePressure` when the state has
/// dropped below the admissibility floor.
pub fn conserved_to_primitive(q: &Conserved, gas: &GasModel) -> Result<Primitive> {
    if !(q.rho > ADMISSIBILITY_FLOOR) {
        return Err(Error::NonPositiveDensity(q.rho));
    }
    let vel_x = q.mom_x / q.rho;
    let vel_y = q.mom_y / q.rho;
    let pressure = (gas.gamma - 1.0) * (q.energy - 0.5 * (q.mom_x * vel_x + q.mom_y * vel_y));
    if !(pressure > ADMISSIBILITY_FLOOR) {
        return Err(Error::NonPositivePressure(pressure));
    }
    Ok(Primitive::new(q.rho, vel_x, vel_y, pressure))
}

/// Speed of sound `c = sqrt(gamma p / rho)`.
pub fn sound_speed(w: &Primitive, gas: &GasModel) -> f64 {
    (gas.gamma * w.pressure / w.rho).sqrt()
}

/// Physical specific entropy `s = ln(p rho^-gamma)`, a function of density
/// and pressure only.
pub fn physical_entropy(w: &Primitive, gas: &GasModel) -> f64 {
    w.pressure.ln() - gas.gamma * w.rho.ln()
}

/// The entropy-entropy flux pair `(U, phi)` with `U = -rho s/(gamma-1)` and
/// `phi = v U`. Assumes an admissible state.
pub fn entropy_pair(q: &Conserved, gas: &GasModel) -> (f64, f64, f64) {
    let w = primitive_unchecked(q, gas);
    let u = -w.rho * physical_entropy(&w, gas) / (gas.gamma - 1.0);
    (u, w.vel_x * u, w.vel_y * u)
}

/// Entropy variables
/// `r = [(gamma - s)/(gamma - 1) - beta |v|^2, 2 beta u, 2 beta v, -2 beta]`.
/// Assumes an admissible state.
pub fn conserved_to_entropy_vars(q: &Conserved, gas: &GasModel) -> EntropyVars {
    let w = primitive_unchecked(q, gas);
    entropy_vars_from_primitive(&w, gas)
}

/// `conserved_to_entropy_vars` starting from primitive variables.
pub fn entropy_vars_from_primitive(w: &Primitive, gas: &GasModel) -> EntropyVars {
    let beta = w.beta();
    let s = physical_entropy(w, gas);
    EntropyVars::new(
        (gas.gamma - s) / (gas.gamma - 1.0) - beta * w.speed_squared(),
        2.0 * beta * w.vel_x,
        2.0 * beta * w.vel_y,
        -2.0 * beta,
    )
}

/// Exact inverse of `conserved_to_entropy_vars`.
pub fn entropy_vars_to_conserved(r: &EntropyVars, gas: &GasModel) -> Result<Conserved> {
    if !(r.r4 < 0.0) {
        return Err(Error::InvalidEntropyState(r.r4));
    }
    let beta = -0.5 * r.r4;
    let vel_x = r.r2 / (2.0 * beta);
    let vel_y = r.r3 / (2.0 * beta);
    let speed_squared = vel_x * vel_x + vel_y * vel_y;
    let s = gas.gamma - (gas.gamma - 1.0) * (r.r1 + beta * speed_squared);
    // From s = ln(p rho^-gamma) and p = rho/(2 beta):
    //   (1 - gamma) ln rho = s + ln(2 beta)
    let rho = (-(s + (2.0 * beta).ln()) / (gas.gamma - 1.0)).exp();
    let pressure = rho / (2.0 * beta);
    Ok(primitive_to_conserved(
        &Primitive::new(rho, vel_x, vel_y, pressure),
        gas,
    ))
}

/// Entropy flux potential `psi = rho v`, i.e. the momentum components.
pub fn entropy_flux_potential(q: &Conserved) -> (f64, f64) {
    (q.mom_x, q.mom_y)
}

/// Primitive recovery without admissibility checks, for operations whose
/// preconditions already assume an admissible state.
pub(crate) fn primitive_unchecked(q: &Conserved, gas: &GasModel) -> Primitive {
    let vel_x = q.mom_x / q.rho;
    let vel_y = q.mom_y / q.rho;
    let pressure = (gas.gamma - 1.0) * (q.energy - 0.5 * (q.mom_x * vel_x + q.mom_y * vel_y));
    Primitive::new(q.rho, vel_x, vel_y, pressure)
}
