//! Numerical certification of the transform-domain solution.
//!
//! Under the double Laplace transform in `(x1, x2)` with images `(p, q)` the
//! displacement equations become ODEs in the depth `x3`. Their bounded
//! solutions combine `exp(-beta x3)` and `exp(-gamma x3)` with
//! `beta = (-p^2 - q^2)^(1/2)`, `gamma = (1/c - p^2 - q^2)^(1/2)`, both on the
//! branch with non-negative real part. This module rebuilds the coefficients,
//! displacements and (dipolar) stresses from their closed forms and checks
//! the boundary conditions, the governing ODEs and the roots of the operator
//! determinant to rounding level.

mod field;
mod operator;
mod state;
mod tracked;
mod verify;

pub use field::{Balance, ExpField};
pub use operator::{
    determinant, determinant_roots_check, operator_matrix, operator_matrix_over, relative_taylor_coefficients,
    DeterminantReport, Jet, Majorant, RootCheck, Scalar, DERIVATIVE_TOL, NONROOT_MIN, ROOT_TOL,
};
pub use state::{
    boundary_residuals, ode_residual, ode_residual_of, transformed_state, BoundaryResiduals, OdeResiduals,
    SolutionFields, TransformedState, BOUNDARY_LABELS,
};
pub use tracked::Tracked;
pub use verify::{sample_pq, verify, Perturbation, SampleReport, VerificationReport, VerifyConfig};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{self, Material, PointLoad};

/// `(beta, gamma)` on the branch `Re >= 0`.
pub fn branches(p: Complex64, q: Complex64, c: f64) -> (Complex64, Complex64) {
    let s = p * p + q * q;
    ((-s).sqrt(), (1.0 / c - s).sqrt())
}

/// `beta - gamma = -(1/c) / (beta + gamma)`, free of cancellation.
pub(crate) fn beta_minus_gamma(beta: Tracked, gamma: Tracked, c: f64) -> Tracked {
    -1.0 / (c * (beta + gamma))
}

/// `N = 4 (c beta gamma)^3 - (1 + 2 c beta^2)(2 (c beta gamma)^2 - nu + 1)`
/// rewritten as `-2 c (c beta gamma)^2 (gamma - beta)^2 - (1 + 2 c beta^2)(1 - nu)`.
pub(crate) fn big_n(beta: Tracked, gamma: Tracked, nu: f64, c: f64) -> Tracked {
    let cbg = c * beta * gamma;
    let gmb = -beta_minus_gamma(beta, gamma, c);
    -2.0 * c * cbg * cbg * gmb * gmb - (1.0 + 2.0 * c * beta * beta) * (1.0 - nu)
}

/// `N` exactly as written, for comparison.
pub fn big_n_direct(beta: Complex64, gamma: Complex64, nu: f64, c: f64) -> Complex64 {
    let cbg = c * beta * gamma;
    4.0 * cbg * cbg * cbg - (1.0 + 2.0 * c * beta * beta) * (2.0 * cbg * cbg - nu + 1.0)
}

/// Relative size below which `N` is treated as zero.
const N_GUARD: f64 = 1e-12;

/// A point `(p, q)` of the transform plane with the solution coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformSample {
    pub p: Complex64,
    pub q: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    /// `A1, A2, A3`.
    pub a: [Complex64; 3],
    /// `B1, B2, B3`.
    pub b: [Complex64; 3],
    pub big_n: Complex64,
    /// Running magnitudes of `A1..A3, B1..B3` (see [`Tracked`]).
    pub magnitudes: [f64; 6],
    pub material: Material,
    pub load: PointLoad,
}

impl TransformSample {
    /// The sample with coefficient `index` (0..3 for `A`, 3..6 for `B`)
    /// multiplied by `1 + rel`.
    pub fn perturbed(&self, index: usize, rel: f64) -> Result<Self> {
        let mut s = *self;
        let f = 1.0 + rel;
        match index {
            0..=2 => s.a[index] *= f,
            3..=5 => s.b[index - 3] *= f,
            _ => return Err(Error::Domain(format!("coefficient index {index} out of range 0..6"))),
        }
        Ok(s)
    }

    /// `A1..A3, B1..B3` in order.
    pub fn coefficients(&self) -> [Complex64; 6] {
        [self.a[0], self.a[1], self.a[2], self.b[0], self.b[1], self.b[2]]
    }

    pub(crate) fn tracked_coefficients(&self) -> [Tracked; 6] {
        let v = self.coefficients();
        std::array::from_fn(|i| Tracked::with_magnitude(v[i], self.magnitudes[i]))
    }
}

/// The coefficients `A1..A3`, `B1..B3` and `N` at `(p, q)`.
pub fn solution_coefficients(
    p: Complex64,
    q: Complex64,
    material: &Material,
    load: &PointLoad,
) -> Result<TransformSample> {
    model::validate(material)?;
    if !(p.re.is_finite() && p.im.is_finite() && q.re.is_finite() && q.im.is_finite()) {
        return Err(Error::NonFinite("p, q"));
    }
    let (mu, nu, c, pl) = (material.mu, material.nu, material.c, load.p);
    let (beta, gamma) = branches(p, q, c);
    let degenerate = |magnitude: f64| Error::DegenerateDeterminant { magnitude, p: p.to_string(), q: q.to_string() };
    // the general solution divides by p, beta and gamma
    if p.norm() == 0.0 || beta.norm() == 0.0 || gamma.norm() == 0.0 {
        return Err(degenerate(0.0));
    }
    let (pt, qt) = (Tracked::exact(p), Tracked::exact(q));
    let (beta_t, gamma_t) = (Tracked::exact(beta), Tracked::exact(gamma));
    let n = big_n(beta_t, gamma_t, nu, c);
    if !(n.v.norm() > N_GUARD * n.m) {
        return Err(degenerate(n.v.norm()));
    }
    let (b2, b3, g2) = (beta_t * beta_t, beta_t * beta_t * beta_t, gamma_t * gamma_t);
    let c2 = c * c;
    let shared = 2.0 * c2 * b2 * g2 - nu + 1.0;
    let bmg = beta_minus_gamma(beta_t, gamma_t, c);
    let a1 = pl / (mu * beta_t * n) * ((3.0 - 2.0 * nu) * c2 * b3 * gamma_t - (1.0 - nu) * shared);
    let a2 = -pl * qt / (2.0 * mu * b2 * n) * (4.0 * nu * c2 * b3 * gamma_t + (1.0 - 2.0 * nu) * shared);
    let a3 = pl / (2.0 * mu * n) * (2.0 * c2 * b2 * gamma_t * bmg - 1.0 + nu);
    let bb1 = pl * c * pt / (mu * n) * (c * g2 - nu);
    let bb2 = pl * c * qt / (mu * n) * (c * g2 - nu);
    let bb3 = -pl * c * b2 / (mu * gamma_t * n) * (c * b2 + nu);
    let all = [a1, a2, a3, bb1, bb2, bb3];
    Ok(TransformSample {
        p,
        q,
        beta,
        gamma,
        a: [a1.v, a2.v, a3.v],
        b: [bb1.v, bb2.v, bb3.v],
        big_n: n.v,
        magnitudes: std::array::from_fn(|i| all[i].m),
        material: *material,
        load: *load,
    })
}
