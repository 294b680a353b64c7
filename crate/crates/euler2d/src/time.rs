//! Four-stage third-order SSP Runge-Kutta integrator.
//!
//! ```text
//! q1 = q  + dt/2 L(q)
//! q2 = q1 + dt/2 L(q1)
//! q3 = 2/3 q + 1/3 (q2 + dt/2 L(q2))
//! q+ = q3 + dt/2 L(q3)
//! ```
//!
//! Applied to `q' = z q` one step evaluates the stability polynomial
//! `1 + z + z^2/2 + z^3/6 + z^4/48`, third-order accurate with an effective
//! SSP coefficient of 2.

use crate::error::Result;
use crate::grid::Field2D;
use crate::state::Conserved;

fn axpy(cells: &mut [Conserved], a: f64, rates: &[Conserved]) {
    for (q, r) in cells.iter_mut().zip(rates) {
        *q = *q + *r * a;
    }
}

/// One SSP-RK(4,3) step of `dq/dt = rhs(q)`.
///
/// The rhs evaluator returns one rate per cell; admissibility errors from
/// any stage abort the step.
pub fn ssprk43_step(
    field: &Field2D,
    dt: f64,
    rhs: &mut impl FnMut(&Field2D) -> Result<Vec<Conserved>>,
) -> Result<Field2D> {
    assert!(dt > 0.0, "time step must be positive, got {dt}");
    let half = 0.5 * dt;

    let mut stage = field.clone();
    let rates = rhs(&stage)?;
    axpy(&mut stage.cells, half, &rates); // q1

    let rates = rhs(&stage)?;
    axpy(&mut stage.cells, half, &rates); // q2

    let rates = rhs(&stage)?;
    axpy(&mut stage.cells, half, &rates); // q2 + dt/2 L(q2)
    for (q, q0) in stage.cells.iter_mut().zip(&field.cells) {
        *q = *q0 * (2.0 / 3.0) + *q * (1.0 / 3.0); // q3
    }

    let rates = rhs(&stage)?;
    axpy(&mut stage.cells, half, &rates); // q+

    stage.time = field.time + dt;
    Ok(stage)
}
