//! Named initial-data generators.
//!
//! Generators are analytically normalized, sampled on the grid, and then
//! discretely renormalized so the trapezoid mass matches the request exactly
//! at t = 0. Zero-mass shapes (the dipole) skip the renormalization and rely
//! on grid symmetry instead.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::field::{Field, Frame};
use crate::grid::Grid1D;
use crate::quadrature::trapezoid_integral;
use crate::scalar::{real, Scalar};

/// Generator parameters stay `f64` so configs serialize plainly; sampling
/// converts into the field's scalar type.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum InitialData {
    Gaussian { mass: f64, width: f64, center: f64 },
    Box { mass: f64, width: f64 },
    Dipole { amplitude: f64, separation: f64 },
    File { path: PathBuf },
    /// Sum of two Gaussians; the mixed-sign shapes used by the asymptotics
    /// checks need it.
    TwoGaussians { masses: [f64; 2], widths: [f64; 2], centers: [f64; 2] },
}

fn gaussian_density(x: f64, width: f64, center: f64) -> f64 {
    let z = (x - center) / width;
    (-0.5 * z * z).exp() / (width * (2.0 * std::f64::consts::PI).sqrt())
}

/// Sample a generator on `grid`.
pub fn make_initial<T: Scalar>(gen: &InitialData, grid: &Grid1D<T>) -> Result<Field<T>> {
    let mut field = match gen {
        InitialData::Gaussian { mass, width, center } => {
            require_positive_width(*width)?;
            Field::from_fn(grid.clone(), T::zero(), Frame::Physical, |x| {
                real::<T>(mass * gaussian_density(x.to_f64_lossy(), *width, *center))
            })?
        }
        InitialData::TwoGaussians { masses, widths, centers } => {
            require_positive_width(widths[0].min(widths[1]))?;
            Field::from_fn(grid.clone(), T::zero(), Frame::Physical, |x| {
                let x = x.to_f64_lossy();
                real::<T>(
                    masses[0] * gaussian_density(x, widths[0], centers[0])
                        + masses[1] * gaussian_density(x, widths[1], centers[1]),
                )
            })?
        }
        InitialData::Box { mass, width } => sample_box(grid, *mass, *width)?,
        InitialData::Dipole { amplitude, separation } => {
            require_positive_width(*separation)?;
            let half = separation / 2.0;
            Field::from_fn(grid.clone(), T::zero(), Frame::Physical, |x| {
                let x = x.to_f64_lossy();
                real::<T>(
                    amplitude * (gaussian_density(x, 1.0, half) - gaussian_density(x, 1.0, -half)),
                )
            })?
        }
        InitialData::File { path } => {
            let (_, values) = crate::io::read_field_csv::<T>(path)?;
            if values.len() != grid.len() {
                return Err(Error::ShapeMismatch { expected: grid.len(), got: values.len() });
            }
            Field::new(grid.clone(), values, T::zero(), Frame::Physical)?
        }
    };

    if let Some(mass) = target_mass(gen) {
        renormalize_mass(&mut field, real::<T>(mass))?;
    }
    Ok(field)
}

fn require_positive_width(w: f64) -> Result<()> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("generator width must be positive, got {w}")))
    }
}

fn target_mass(gen: &InitialData) -> Option<f64> {
    match gen {
        InitialData::Gaussian { mass, .. } | InitialData::Box { mass, .. } => Some(*mass),
        InitialData::TwoGaussians { masses, .. } => Some(masses[0] + masses[1]),
        InitialData::Dipole { .. } | InitialData::File { .. } => None,
    }
}

/// Box of total mass `mass` on `[-width/2, width/2]`. Edge nodes take half the
/// plateau value, which makes the trapezoid mass exact when the edges land on
/// nodes.
fn sample_box<T: Scalar>(grid: &Grid1D<T>, mass: f64, width: f64) -> Result<Field<T>> {
    require_positive_width(width)?;
    let half = width / 2.0;
    let plateau = mass / width;
    let edge_tol = grid.dx().to_f64_lossy() * 1e-9;
    Field::from_fn(grid.clone(), T::zero(), Frame::Physical, |x| {
        let x = x.to_f64_lossy().abs();
        if (x - half).abs() <= edge_tol {
            real::<T>(plateau / 2.0)
        } else if x < half {
            real::<T>(plateau)
        } else {
            T::zero()
        }
    })
}

/// Scale the samples so the trapezoid mass equals `mass` exactly.
fn renormalize_mass<T: Scalar>(field: &mut Field<T>, mass: T) -> Result<()> {
    let discrete = trapezoid_integral(field)?;
    if mass == T::zero() {
        return Ok(());
    }
    if discrete.abs() < real::<T>(1e-300) || (discrete / mass).to_f64_lossy() < 0.5 {
        return Err(Error::DomainTooSmall(format!(
            "generator mass {discrete} too far from requested {mass}; widen the grid"
        )));
    }
    let scale = mass / discrete;
    for v in field.values_mut() {
        *v *= scale;
    }
    Ok(())
}
