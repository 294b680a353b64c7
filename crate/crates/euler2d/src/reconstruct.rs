//! Interface reconstruction on primitive variables.
//!
//! `Constant` passes the adjacent cell averages through, `LimitedLinear`
//! applies minmod-limited slopes. Slopes that would push a face density or
//! pressure below the admissibility floor fall back to constant in that
//! cell.

use crate::state::{Primitive, ADMISSIBILITY_FLOOR};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconstructionScheme {
    Constant,
    LimitedLinear,
}

impl ReconstructionScheme {
    pub fn parse(name: &str) -> Option<ReconstructionScheme> {
        match name {
            "constant" => Some(ReconstructionScheme::Constant),
            "limited-linear" => Some(ReconstructionScheme::LimitedLinear),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ReconstructionScheme::Constant => "constant",
            ReconstructionScheme::LimitedLinear => "limited-linear",
        }
    }
}

fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() <= b.abs() {
        a
    } else {
        b
    }
}

/// Minmod slope of one cell, component-wise.
fn cell_slope(prev: &Primitive, center: &Primitive, next: &Primitive) -> Primitive {
    Primitive::new(
        minmod(center.rho - prev.rho, next.rho - center.rho),
        minmod(center.vel_x - prev.vel_x, next.vel_x - center.vel_x),
        minmod(center.vel_y - prev.vel_y, next.vel_y - center.vel_y),
        minmod(center.pressure - prev.pressure, next.pressure - center.pressure),
    )
}

fn face_value(w: &Primitive, slope: &Primitive, sign: f64) -> Primitive {
    Primitive::new(
        w.rho + sign * 0.5 * slope.rho,
        w.vel_x + sign * 0.5 * slope.vel_x,
        w.vel_y + sign * 0.5 * slope.vel_y,
        w.pressure + sign * 0.5 * slope.pressure,
    )
}

fn admissible(w: &Primitive) -> bool {
    w.rho > ADMISSIBILITY_FLOOR && w.pressure > ADMISSIBILITY_FLOOR
}

/// Reconstructs the left/right interface states of one grid line.
///
/// `line` must carry two ghost cells on each side (length `n + 4`); the
/// result has `n + 1` interface pairs, pair `k` belonging to the interface
/// between interior cells `k-1` and `k`.
pub fn reconstruct_line(
    line: &[Primitive],
    scheme: ReconstructionScheme,
) -> Vec<(Primitive, Primitive)> {
    let n = line.len() - 4;
    match scheme {
        ReconstructionScheme::Constant => (0..=n)
            .map(|k| (line[k + 1], line[k + 2]))
            .collect(),
        ReconstructionScheme::LimitedLinear => {
            // Slopes for the n + 2 cells adjacent to any interface.
            let slopes: Vec<Primitive> = (1..=n + 2)
                .map(|k| {
                    let slope = cell_slope(&line[k - 1], &line[k], &line[k + 1]);
                    let lo = face_value(&line[k], &slope, -1.0);
                    let hi = face_value(&line[k], &slope, 1.0);
                    if admissible(&lo) && admissible(&hi) {
                        slope
                    } else {
                        Primitive::new(0.0, 0.0, 0.0, 0.0)
                    }
                })
                .collect();
            (0..=n)
                .map(|k| {
                    (
                        face_value(&line[k + 1], &slopes[k], 1.0),
                        face_value(&line[k + 2], &slopes[k + 1], -1.0),
                    )
                })
                .collect()
        }
    }
}
