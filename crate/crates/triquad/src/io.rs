//! CSV formats.
//!
//! - signals: header `x,re,im`;
//! - densities: header `x,density`;
//! - Wigner functions: header `q,p,w`, rows with `q` outer and `p` inner.
//!
//! Numbers are written with 17 significant digits.

use std::io::{Read, Write};

use thiserror::Error;
use triquad_core::{Complex64, Grid, IntensityProfile, SampledSignal, WignerGrid};

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("expected header `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },
    #[error("abscissae are not uniformly spaced")]
    NonUniform,
    #[error(transparent)]
    Numerics(#[from] triquad_core::Error),
}

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

fn read_rows<R: Read>(reader: R, header: &[&str]) -> Result<Vec<Vec<f64>>, CsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(CsvError::Header {
            expected: header.join(","),
            found: found.join(","),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = i + 2;
        if record.len() != header.len() {
            return Err(CsvError::Row {
                line,
                message: format!("expected {} fields, found {}", header.len(), record.len()),
            });
        }
        let row = record
            .iter()
            .map(|f| match f.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CsvError::Row {
                    line,
                    message: format!("`{f}` is not a finite number"),
                }),
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Recovers a uniform grid from its abscissae.
pub fn grid_from_points(xs: &[f64]) -> Result<Grid, CsvError> {
    if xs.len() < 2 {
        return Err(CsvError::Numerics(triquad_core::Error::InvalidGrid(
            "at least two points are required",
        )));
    }
    let n = xs.len();
    let dx = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    let grid = Grid::new(xs[0], dx, n)?;
    for (j, x) in xs.iter().enumerate() {
        if (x - grid.point(j)).abs() > 1e-6 * dx {
            return Err(CsvError::NonUniform);
        }
    }
    Ok(grid)
}

pub fn read_signal<R: Read>(reader: R) -> Result<SampledSignal, CsvError> {
    let rows = read_rows(reader, &["x", "re", "im"])?;
    let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let grid = grid_from_points(&xs)?;
    let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    Ok(SampledSignal::new(grid, values)?)
}

pub fn write_signal<W: Write>(writer: W, psi: &SampledSignal) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "re", "im"])?;
    for (x, v) in psi.grid().points().zip(psi.values()) {
        w.write_record([format_number(x), format_number(v.re), format_number(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_density<R: Read>(reader: R) -> Result<IntensityProfile, CsvError> {
    let rows = read_rows(reader, &["x", "density"])?;
    let xs: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let grid = grid_from_points(&xs)?;
    Ok(IntensityProfile::new(
        grid,
        rows.iter().map(|r| r[1]).collect(),
    )?)
}

pub fn write_density<W: Write>(writer: W, profile: &IntensityProfile) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "density"])?;
    for (x, d) in profile.grid().points().zip(profile.density()) {
        w.write_record([format_number(x), format_number(*d)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_wigner<R: Read>(reader: R) -> Result<WignerGrid, CsvError> {
    let rows = read_rows(reader, &["q", "p", "w"])?;
    let Some(first) = rows.first() else {
        return Err(CsvError::Row {
            line: 2,
            message: "no data rows".to_string(),
        });
    };
    let np = rows.iter().take_while(|r| r[0] == first[0]).count();
    if np < 2 || rows.len() % np != 0 {
        return Err(CsvError::NonUniform);
    }
    let ps: Vec<f64> = rows[..np].iter().map(|r| r[1]).collect();
    let qs: Vec<f64> = rows.iter().step_by(np).map(|r| r[0]).collect();
    let p = grid_from_points(&ps)?;
    let q = grid_from_points(&qs)?;
    for (k, r) in rows.iter().enumerate() {
        if r[0] != qs[k / np] || r[1] != ps[k % np] {
            return Err(CsvError::Row {
                line: k + 2,
                message: "rows are not a q-major lattice".to_string(),
            });
        }
    }
    Ok(WignerGrid::new(q, p, rows.iter().map(|r| r[2]).collect())?)
}

pub fn write_wigner<W: Write>(writer: W, w: &WignerGrid) -> Result<(), CsvError> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["q", "p", "w"])?;
    let np = w.p_grid().len();
    for (i, q) in w.q_grid().points().enumerate() {
        for (j, p) in w.p_grid().points().enumerate() {
            out.write_record([
                format_number(q),
                format_number(p),
                format_number(w.values()[i * np + j]),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}
