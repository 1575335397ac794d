//! Surface displacements of a half-space under a normal point load in dipolar
//! (strain-gradient) elasticity with a single gradient coefficient `c`.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: material constants and normalisation;
//! * [`specfun`]: Bessel, modified Bessel and modified Struve functions;
//! * [`spectral`]: the dimensionless spectral kernels of the solution;
//! * [`quadrature`]: oscillatory Bessel quadrature on the half-line;
//! * [`transform`]: numerical certification of the transform-domain solution;
//! * [`surface`]: the normalized and dimensional surface displacements;
//! * [`superposition`]: settlements under distributed axisymmetric pressure.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod error;
pub mod model;
pub mod quadrature;
pub mod specfun;
pub mod spectral;
pub mod superposition;
pub mod surface;
pub mod transform;

pub use error::{Error, Result};
