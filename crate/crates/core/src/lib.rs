//! Numerical laboratory for 1D scalar convection-diffusion equations
//! `u_t - u_xx = a (F(u))_x`.
//!
//! The crate provides three layers:
//!
//! * closed forms ([`exact`]): heat kernel, linear convection, the
//!   exponential substitution for the quadratic flux, self-similar profiles,
//!   and hyperbolic source-type waves;
//! * numerics ([`solver`], [`spectral`]): IMEX and monotone-upwind time
//!   integration in physical and similarity variables, plus the weighted
//!   Hermite expansion that solves the similarity-frame heat equation exactly;
//! * diagnostics ([`diagnostics`]): frame transforms, decay-rate regression,
//!   attractor distances, and the regime classifier.
//!
//! All numerical kernels are generic over [`scalar::Scalar`] (`f32`/`f64`);
//! the aliases below fix the production `f64` instantiations.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod exact;
pub mod field;
pub mod grid;
pub mod initial;
pub mod io;
pub mod nonlinearity;
pub mod quadrature;
pub mod scalar;
pub mod solver;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use field::Frame;
pub use quadrature::Exponent;

/// Production scalar type.
pub type Real = f64;
pub type Grid64 = grid::Grid1D<Real>;
pub type Field64 = field::Field<Real>;
pub type Nonlinearity64 = nonlinearity::Nonlinearity<Real>;
pub type RunConfig64 = config::RunConfig<Real>;
pub type Trajectory64 = solver::Trajectory<Real>;
pub type Basis64 = spectral::WeightedBasis<Real>;
