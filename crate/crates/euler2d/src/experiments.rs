//! Experiment setups and the run harness.
//!
//! Three initial conditions cover the test roster: the standing-sound-wave
//! Riemann problem (also used by the contact test), a stationary pure
//! contact, and the Gresho vortex family parameterized by its maximal local
//! Mach number.

use std::time::Instant;

use crate::config::{Experiment, RunConfig};
use crate::diagnostics::DiagnosticsRecord;
use crate::error::Result;
use crate::flux::FluxKind;
use crate::grid::{Boundaries, Field2D, Grid2D};
use crate::output::{write_diagnostics_csv, write_field_csv};
use crate::reconstruct::ReconstructionScheme;
use crate::solver::evolve;
use crate::state::{GasModel, Primitive};

/// Standing sound wave: `(rho, u, p) = (1, 0.75, 1)` left of `x = 0.5` and
/// `(0.125, 0, 0.1)` right of it, on the unit interval.
pub fn setup_sound_wave(nx: usize, gas: &GasModel) -> Field2D {
    let grid = Grid2D::unit_square(nx, 1).expect("nx >= 2");
    Field2D::from_primitive_fn(grid, gas, |x, _| {
        if x < 0.5 {
            Primitive::new(1.0, 0.75, 0.0, 1.0)
        } else {
            Primitive::new(0.125, 0.0, 0.0, 0.1)
        }
    })
}

/// The contact-property test of the paper prints the same Riemann data as
/// the standing sound wave.
pub fn setup_contact(nx: usize, gas: &GasModel) -> Field2D {
    setup_sound_wave(nx, gas)
}

/// Stationary contact: density jump 1 -> 0.5 at constant velocity zero and
/// constant unit pressure. Any flux with the contact property holds this
/// exactly.
pub fn setup_pure_contact(nx: usize, gas: &GasModel) -> Field2D {
    let grid = Grid2D::unit_square(nx, 1).expect("nx >= 2");
    Field2D::from_primitive_fn(grid, gas, |x, _| {
        if x < 0.5 {
            Primitive::new(1.0, 0.0, 0.0, 1.0)
        } else {
            Primitive::new(0.5, 0.0, 0.0, 1.0)
        }
    })
}

/// Gresho vortex on the unit square, centered at (0.5, 0.5):
///
/// ```text
/// v_phi = 5r          p = p_c + 25 r^2 / 2                      r < 0.2
/// v_phi = 2 - 5r      p = p_c + 4 ln(5r) + 4 - 20 r + 25 r^2/2  0.2 <= r < 0.4
/// v_phi = 0           p = p_c + 4 ln 2 - 2                      r >= 0.4
/// ```
///
/// with the pressure floor `p_c = 1 / (2 gamma mach_ref^2)` that sets the
/// maximal local Mach number to about `sqrt(2) mach_ref`.
pub fn setup_gresho(nx: usize, ny: usize, mach_ref: f64, gas: &GasModel) -> Field2D {
    let grid = Grid2D::unit_square(nx, ny).expect("nx, ny >= 2");
    let p_c = 1.0 / (2.0 * gas.gamma * mach_ref * mach_ref);
    Field2D::from_primitive_fn(grid, gas, |x, y| {
        let dx = x - 0.5;
        let dy = y - 0.5;
        let r = dx.hypot(dy);
        let (v_phi, p) = if r < 0.2 {
            (5.0 * r, p_c + 12.5 * r * r)
        } else if r < 0.4 {
            (
                2.0 - 5.0 * r,
                p_c + 4.0 * (5.0 * r).ln() + 4.0 - 20.0 * r + 12.5 * r * r,
            )
        } else {
            (0.0, p_c + 4.0 * 2.0f64.ln() - 2.0)
        };
        if r == 0.0 {
            return Primitive::new(1.0, 0.0, 0.0, p);
        }
        // e_phi = (-sin phi, cos phi) = (-dy, dx) / r
        Primitive::new(1.0, -v_phi * dy / r, v_phi * dx / r, p)
    })
}

/// Outcome of one experiment run.
#[derive(Debug)]
pub struct ExperimentResult {
    pub final_field: Field2D,
    pub records: Vec<DiagnosticsRecord>,
    /// Wall-clock seconds spent in the solver loop. Not embedded in any
    /// output file so identical configs produce bit-identical CSVs.
    pub wall_time: f64,
}

fn initial_field(config: &RunConfig, gas: &GasModel) -> Field2D {
    match config.experiment {
        Experiment::SoundWave => setup_sound_wave(config.nx, gas),
        Experiment::Contact => setup_contact(config.nx, gas),
        Experiment::PureContact => setup_pure_contact(config.nx, gas),
        Experiment::Gresho => setup_gresho(config.nx, config.ny, config.mach_ref, gas),
    }
}

fn boundaries(config: &RunConfig) -> Boundaries {
    match config.experiment {
        Experiment::Gresho => Boundaries::periodic(),
        _ => Boundaries::riemann(),
    }
}

/// Runs the configured experiment without touching the filesystem.
pub fn run_in_memory(config: &RunConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let gas = GasModel::new(config.gamma, config.gas_constant);
    let field = initial_field(config, &gas);
    let bcs = boundaries(config);

    let started = Instant::now();
    let mut records = vec![DiagnosticsRecord::measure(&field, config.flux, &gas)?];
    let mut step = 0usize;
    let mut record_error = None;
    let final_field = evolve(
        field,
        config.t_end,
        config.flux,
        config.reconstruction,
        bcs,
        config.cfl,
        &gas,
        |f| {
            step += 1;
            if step % config.output_stride == 0 && record_error.is_none() {
                match DiagnosticsRecord::measure(f, config.flux, &gas) {
                    Ok(r) => records.push(r),
                    Err(e) => record_error = Some(e),
                }
            }
        },
    )?;
    if let Some(e) = record_error {
        return Err(e);
    }
    if records.last().map(|r| r.time) != Some(final_field.time) {
        records.push(DiagnosticsRecord::measure(&final_field, config.flux, &gas)?);
    }

    Ok(ExperimentResult {
        final_field,
        records,
        wall_time: started.elapsed().as_secs_f64(),
    })
}

/// Runs the experiment and writes `field.csv` and `diagnostics.csv` into the
/// configured output directory, both prefixed with the resolved config.
pub fn run(config: &RunConfig) -> Result<ExperimentResult> {
    let result = run_in_memory(config)?;
    let gas = GasModel::new(config.gamma, config.gas_constant);
    let header = config.header_entries();
    std::fs::create_dir_all(&config.output_dir)?;
    write_field_csv(
        &config.output_dir.join("field.csv"),
        &result.final_field,
        &gas,
        &header,
    )?;
    write_diagnostics_csv(
        &config.output_dir.join("diagnostics.csv"),
        &result.records,
        &header,
    )?;
    Ok(result)
}

/// Reference configuration: the standing sound wave under local
/// Lax-Friedrichs on a fine grid, the profile every other scheme is
/// compared against.
pub fn reference_config(nx: usize) -> RunConfig {
    let mut config = RunConfig::defaults(Experiment::SoundWave);
    config.flux = FluxKind::Llf;
    config.nx = nx;
    config.reconstruction = ReconstructionScheme::Constant;
    // Diagnostics rows are expensive at reference resolution.
    config.output_stride = 100;
    config.output_dir = std::path::PathBuf::from("out/reference");
    config
}

/// Runs the reference profile in memory (default resolution 100000 cells
/// when driven from the CLI).
pub fn run_reference(nx: usize) -> Result<ExperimentResult> {
    run_in_memory(&reference_config(nx))
}

/// Block-averages a fine 1-d density profile onto `coarse` cells.
///
/// The fine resolution must be an integer multiple of the coarse one.
pub fn downsample_density(fine: &Field2D, gas: &GasModel, coarse: usize) -> Result<Vec<f64>> {
    let nx = fine.grid.nx;
    assert!(
        nx % coarse == 0,
        "fine resolution {nx} is not a multiple of {coarse}"
    );
    let block = nx / coarse;
    let prims = fine.primitives(gas)?;
    Ok((0..coarse)
        .map(|i| prims[i * block..(i + 1) * block].iter().map(|w| w.rho).sum::<f64>() / block as f64)
        .collect())
}
