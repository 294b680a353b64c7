//! Static Cartesian grid and cell-averaged fields.

use crate::error::{Error, Result};
use crate::state::{conserved_to_primitive, primitive_to_conserved, Conserved, GasModel, Primitive};

/// Uniform Cartesian grid on `[x_min, x_max] x [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
}

impl Grid2D {
    pub fn new(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Grid2D> {
        if !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::InvalidGrid(format!(
                "bounds must be ordered, got [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidGrid(format!(
                "cell counts must be at least 1, got {nx} x {ny}"
            )));
        }
        Ok(Grid2D {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
            dx: (x_max - x_min) / nx as f64,
            dy: (y_max - y_min) / ny as f64,
        })
    }

    /// Unit square, the domain of every experiment in this crate.
    pub fn unit_square(nx: usize, ny: usize) -> Result<Grid2D> {
        Grid2D::new(0.0, 1.0, 0.0, 1.0, nx, ny)
    }

    pub fn cell_center_x(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn cell_center_y(&self, j: usize) -> f64 {
        self.y_min + (j as f64 + 0.5) * self.dy
    }

    /// Interface position `x_{i-1/2} = x_min + i dx`.
    pub fn interface_x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn n_cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }
}

/// Boundary treatment of one axis: periodic wrap-around or transmissive
/// (zeroth-order extrapolation) ghost cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryPolicy {
    Periodic,
    Transmissive,
}

/// One boundary policy per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Boundaries {
    pub x: BoundaryPolicy,
    pub y: BoundaryPolicy,
}

impl Boundaries {
    pub fn periodic() -> Boundaries {
        Boundaries {
            x: BoundaryPolicy::Periodic,
            y: BoundaryPolicy::Periodic,
        }
    }

    /// Riemann-problem setup: open ends in x, periodic (trivial) in y.
    pub fn riemann() -> Boundaries {
        Boundaries {
            x: BoundaryPolicy::Transmissive,
            y: BoundaryPolicy::Periodic,
        }
    }
}

/// Grid geometry plus the cell-averaged conserved states, stored row-major
/// with y as the outer index.
#[derive(Debug, Clone)]
pub struct Field2D {
    pub grid: Grid2D,
    pub cells: Vec<Conserved>,
    pub time: f64,
}

impl Field2D {
    pub fn uniform(grid: Grid2D, state: Conserved) -> Field2D {
        Field2D {
            grid,
            cells: vec![state; grid.n_cells()],
            time: 0.0,
        }
    }

    /// Samples a primitive-variable profile at the cell centers.
    pub fn from_primitive_fn(
        grid: Grid2D,
        gas: &GasModel,
        f: impl Fn(f64, f64) -> Primitive,
    ) -> Field2D {
        let mut cells = Vec::with_capacity(grid.n_cells());
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let w = f(grid.cell_center_x(i), grid.cell_center_y(j));
                cells.push(primitive_to_conserved(&w, gas));
            }
        }
        Field2D {
            grid,
            cells,
            time: 0.0,
        }
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.grid.nx + i
    }

    pub fn get(&self, i: usize, j: usize) -> Conserved {
        self.cells[self.idx(i, j)]
    }

    /// Primitive states of all cells; an inadmissible cell fails with its
    /// index and the field time attached.
    pub fn primitives(&self, gas: &GasModel) -> Result<Vec<Primitive>> {
        let mut out = Vec::with_capacity(self.cells.len());
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let w = conserved_to_primitive(&self.cells[self.idx(i, j)], gas)
                    .map_err(|e| e.at_cell(i, j, self.time))?;
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Index of the first non-finite cell, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                if !self.cells[self.idx(i, j)].is_finite() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Component-wise integral over the domain, `sum q dx dy`.
    pub fn total(&self) -> Conserved {
        let mut acc = Conserved::ZERO;
        for q in &self.cells {
            acc = acc + *q;
        }
        acc * self.grid.cell_area()
    }
}
