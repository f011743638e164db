//! CSV output with full double precision and a two-column reader for sampled
//! histories and forcings.

use std::io::Write;
use std::path::Path;

use crate::error::{FddeError, Result};
use crate::solvers::Trajectory;

/// 17 significant digits: enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(e: impl std::fmt::Display) -> FddeError {
    FddeError::Io(e.to_string())
}

/// Writes a header and rows of floats, comma-separated with LF endings.
pub fn write_table<W: Write>(mut out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    writeln!(out, "{}", header.join(",")).map_err(io_err)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(FddeError::Usage(format!(
                "row has {} columns, header has {}",
                row.len(),
                header.len()
            )));
        }
        let line: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
        writeln!(out, "{}", line.join(",")).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

/// `t,y` rows of a trajectory.
pub fn write_trajectory<W: Write>(out: W, traj: &Trajectory) -> Result<()> {
    write_table(out, &["t", "y"], traj.points().map(|(t, y)| vec![t, y]))
}

/// `t,y_caputo,y_phitau,diff` rows of two trajectories on the same grid.
pub fn write_comparison<W: Write>(out: W, caputo: &Trajectory, phitau: &Trajectory) -> Result<()> {
    if caputo.len() != phitau.len() || caputo.h() != phitau.h() {
        return Err(FddeError::Usage("trajectories are on different grids".into()));
    }
    let rows = caputo
        .points()
        .zip(phitau.values())
        .map(|((t, a), &b)| vec![t, a, b, b - a]);
    write_table(out, &["t", "y_caputo", "y_phitau", "diff"], rows)
}

/// Reads `(t, value)` pairs from a two-column CSV. A non-numeric first row is
/// treated as a header.
pub fn read_two_columns(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| FddeError::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| FddeError::Io(format!("{}: {e}", path.display())))?;
        if record.len() != 2 {
            return Err(FddeError::Io(format!(
                "{}: row {} has {} columns, expected 2",
                path.display(),
                line + 1,
                record.len()
            )));
        }
        match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
            (Ok(t), Ok(v)) => out.push((t, v)),
            _ if line == 0 => continue,
            _ => {
                return Err(FddeError::Io(format!(
                    "{}: row {} is not numeric",
                    path.display(),
                    line + 1
                )))
            }
        }
    }
    Ok(out)
}
