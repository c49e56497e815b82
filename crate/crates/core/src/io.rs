//! CSV persistence for fields, profiles, and time series.
//!
//! Field files carry a `x,u` header and 17-significant-digit decimals so a
//! write/read round trip reproduces samples bit-for-bit.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::{real, Scalar};

/// 17 significant digits: enough to round-trip any f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_field_csv<T: Scalar>(path: &Path, field: &Field<T>) -> Result<()> {
    write_columns(path, "x,u", (0..field.len()).map(|i| {
        vec![field.grid().node(i).to_f64_lossy(), field.values()[i].to_f64_lossy()]
    }))
}

/// Read a `x,u` CSV back as coordinate and value vectors.
pub fn read_field_csv<T: Scalar>(path: &Path) -> Result<(Vec<T>, Vec<T>)> {
    let file = BufReader::new(File::open(path)?);
    let mut xs = Vec::new();
    let mut us = Vec::new();
    for (lineno, line) in file.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with(|c: char| c.is_alphabetic())) {
            continue;
        }
        let mut parts = line.split(',');
        let (x, u) = match (parts.next(), parts.next()) {
            (Some(x), Some(u)) => (x, u),
            _ => {
                return Err(Error::InvalidField(format!(
                    "line {} of {} is not `x,u`",
                    lineno + 1,
                    path.display()
                )))
            }
        };
        let parse = |s: &str| -> Result<T> {
            s.trim()
                .parse::<f64>()
                .map(real)
                .map_err(|e| Error::InvalidField(format!("bad number {s:?}: {e}")))
        };
        xs.push(parse(x)?);
        us.push(parse(u)?);
    }
    Ok((xs, us))
}

/// Write a profile as `x,f`.
pub fn write_profile_csv(path: &Path, xs: &[f64], fs: &[f64]) -> Result<()> {
    write_columns(path, "x,f", xs.iter().zip(fs).map(|(&x, &f)| vec![x, f]))
}

/// Write an N-wave snapshot as `x,u,t`.
pub fn write_nwave_csv(path: &Path, xs: &[f64], us: &[f64], t: f64) -> Result<()> {
    write_columns(path, "x,u,t", xs.iter().zip(us).map(|(&x, &u)| vec![x, u, t]))
}

/// Generic writer: header plus rows of equally long float columns.
pub fn write_columns(
    path: &Path,
    header: &str,
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| fmt(v)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Frame;
    use crate::grid::Grid1D;

    #[test]
    fn field_round_trips_bit_exactly() {
        let dir = std::env::temp_dir().join("cdasym-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.csv");
        let g = Grid1D::new(-3.0, 3.0, 64).unwrap();
        let f = Field::from_fn(g.clone(), 0.25, Frame::Physical, |x: f64| (x * 1.7).sin() / 3.0).unwrap();
        write_field_csv(&path, &f).unwrap();
        let (xs, us) = read_field_csv::<f64>(&path).unwrap();
        assert_eq!(us.len(), f.len());
        for i in 0..f.len() {
            assert_eq!(xs[i], g.node(i));
            assert_eq!(us[i], f.values()[i]);
        }
        std::fs::remove_file(path).ok();
    }
}
