//! Material constants, the point load and the conversion between physical and
//! normalized quantities.
//!
//! Everything downstream of this module works with dimensionless radii
//! `r' = r / sqrt(c)` and displacements scaled by `P / (mu sqrt(c))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest admissible Poisson ratio. The constitutive map diverges at 0.5.
pub const NU_MAX: f64 = 0.5 - 1e-6;

/// Isotropic dipolar-gradient material: shear modulus, Poisson ratio and the
/// gradient coefficient `c` (length squared).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub mu: f64,
    pub nu: f64,
    pub c: f64,
}

impl Material {
    /// Builds a material and checks it.
    pub fn new(mu: f64, nu: f64, c: f64) -> Result<Self> {
        let m = Self { mu, nu, c };
        validate(&m)?;
        Ok(m)
    }

    /// Intrinsic length `sqrt(c)`.
    pub fn length_scale(&self) -> f64 {
        self.c.sqrt()
    }

    /// Lame's first constant, `2 mu nu / (1 - 2 nu)`.
    pub fn lame_lambda(&self) -> f64 {
        2.0 * self.mu * self.nu / (1.0 - 2.0 * self.nu)
    }
}

/// Normal point load at the origin. Positive values press into the half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointLoad {
    pub p: f64,
}

impl PointLoad {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite("P"));
        }
        Ok(Self { p })
    }
}

/// Checks positive definiteness of the strain-energy density:
/// `mu > 0`, `c > 0` and `-1 < nu < 0.5`.
pub fn validate(m: &Material) -> Result<()> {
    for (name, v) in [("mu", m.mu), ("nu", m.nu), ("c", m.c)] {
        if !v.is_finite() {
            return Err(Error::NonFinite(name));
        }
    }
    if m.mu <= 0.0 {
        return Err(Error::NonPositiveShearModulus(m.mu));
    }
    if m.c <= 0.0 {
        return Err(Error::NonPositiveGradientCoefficient(m.c));
    }
    if m.nu > NU_MAX {
        return Err(Error::IncompressibleLimit(m.nu));
    }
    if m.nu <= -1.0 {
        return Err(Error::PoissonRatioOutOfRange(m.nu));
    }
    Ok(())
}

/// `r' = r / sqrt(c)`.
pub fn normalize_radius(r: f64, c: f64) -> f64 {
    debug_assert!(r >= 0.0 && c > 0.0);
    r / c.sqrt()
}

/// Inverse of [`normalize_radius`].
pub fn physical_radius(r_prime: f64, c: f64) -> f64 {
    r_prime * c.sqrt()
}

/// Converts normalized surface displacements to lengths:
/// `u_r = P ur_hat / (4 pi mu sqrt(c))`, `u3 = P u3_hat / (2 pi mu sqrt(c))`.
pub fn dimensionalize(ur_hat: f64, u3_hat: f64, material: &Material, load: &PointLoad) -> (f64, f64) {
    let base = load.p / (PI * material.mu * material.length_scale());
    (0.25 * base * ur_hat, 0.5 * base * u3_hat)
}

/// Inverse of [`dimensionalize`].
pub fn normalize_displacements(u_r: f64, u3: f64, material: &Material, load: &PointLoad) -> (f64, f64) {
    let base = PI * material.mu * material.length_scale() / load.p;
    (4.0 * base * u_r, 2.0 * base * u3)
}
