//! CSV writers. Values are printed with Rust's shortest round-trip `f64`
//! formatting, so files carry full double precision with a '.' decimal
//! separator.

use std::io::{BufWriter, Write};
use std::path::Path;

use crate::diagnostics::{entropy_field, mach_field, DiagnosticsRecord};
use crate::error::Result;
use crate::grid::Field2D;
use crate::scaling::ScalingReport;
use crate::state::GasModel;

fn write_header(out: &mut impl Write, entries: &[(String, String)]) -> std::io::Result<()> {
    for (key, value) in entries {
        writeln!(out, "# {key}={value}")?;
    }
    Ok(())
}

/// Field snapshot, one row per cell, row-major with y as the outer loop.
pub fn write_field_csv(
    path: &Path,
    field: &Field2D,
    gas: &GasModel,
    header: &[(String, String)],
) -> Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut out, header)?;
    writeln!(out, "x,y,rho,u,v,p,mach,entropy")?;
    let prims = field.primitives(gas)?;
    let mach = mach_field(field, gas);
    let entropy = entropy_field(field, gas);
    for j in 0..field.grid.ny {
        for i in 0..field.grid.nx {
            let k = field.idx(i, j);
            let w = &prims[k];
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                field.grid.cell_center_x(i),
                field.grid.cell_center_y(j),
                w.rho,
                w.vel_x,
                w.vel_y,
                w.pressure,
                mach[k],
                entropy[k]
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Diagnostics time series.
pub fn write_diagnostics_csv(
    path: &Path,
    records: &[DiagnosticsRecord],
    header: &[(String, String)],
) -> Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut out, header)?;
    writeln!(out, "{}", DiagnosticsRecord::CSV_HEADER)?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.time, r.total_entropy, r.total_kinetic_energy, r.max_mach, r.ke_balance_residual
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Scaling report: one row per matrix entry with the fitted exponent and the
/// per-level non-dimensional magnitudes.
pub fn write_scaling_csv(out: &mut impl Write, report: &ScalingReport) -> std::io::Result<()> {
    write!(out, "flux,row,col,slope,structural_zero")?;
    for level in &report.mach_levels {
        write!(out, ",mag_m{level}")?;
    }
    writeln!(out)?;
    for row in 0..4 {
        for col in 0..4 {
            write!(
                out,
                "{},{},{},{},{}",
                report.kind.name(),
                row + 1,
                col + 1,
                report.fitted_exponents[row][col],
                report.structural_zero[row][col]
            )?;
            for level in &report.magnitudes {
                write!(out, ",{}", level[row][col])?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}
