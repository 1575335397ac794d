//! The symmetric operator `[K]` of the transformed Navier system with
//! `d = d/dx3` as a scalar symbol, and a certificate for the roots of its
//! determinant `(d^2 + p^2 + q^2)^3 [1 - c (d^2 + p^2 + q^2)]^3`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Arithmetic needed to evaluate `[K]` and its determinant.
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn constant(v: Complex64) -> Self;
}

impl Scalar for Complex64 {
    fn constant(v: Complex64) -> Self {
        v
    }
}

/// Truncated Taylor expansion in `d` to third order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet(pub [Complex64; 4]);

impl Jet {
    pub fn variable(at: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Jet([at, Complex64::new(1.0, 0.0), z, z])
    }
}

impl Add for Jet {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Jet(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl Sub for Jet {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Jet(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }
}

impl Mul for Jet {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Jet(std::array::from_fn(|k| (0..=k).map(|i| self.0[i] * o.0[k - i]).sum()))
    }
}

impl Scalar for Jet {
    fn constant(v: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Jet([v, z, z, z])
    }
}

/// Coefficientwise bound of a [`Jet`]: subtraction adds magnitudes, so the
/// same expression evaluated here bounds every intermediate term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Majorant(pub [f64; 4]);

impl Majorant {
    pub fn variable(at: Complex64) -> Self {
        Majorant([at.norm(), 1.0, 0.0, 0.0])
    }
}

impl Add for Majorant {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Majorant(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Majorant {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + o
    }
}

impl Mul for Majorant {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Majorant(std::array::from_fn(|k| (0..=k).map(|i| self.0[i] * o.0[k - i]).sum()))
    }
}

impl Scalar for Majorant {
    fn constant(v: Complex64) -> Self {
        Majorant([v.norm(), 0.0, 0.0, 0.0])
    }
}

fn real<T: Scalar>(v: f64) -> T {
    T::constant(Complex64::new(v, 0.0))
}

/// `[K](p, q, d)` over any [`Scalar`].
pub fn operator_matrix_over<T: Scalar>(p: T, q: T, d: T, nu: f64, c: f64) -> [[T; 3]; 3] {
    let (p2, q2, d2) = (p * p, q * q, d * d);
    let g = real::<T>(1.0) - real::<T>(c) * (d2 + p2 + q2);
    let s = real::<T>(1.0 - 2.0 * nu);
    let l = real::<T>(2.0 * (1.0 - nu));
    let k11 = (s * (d2 + q2) + l * p2) * g;
    let k22 = (s * (d2 + p2) + l * q2) * g;
    let k33 = (s * (p2 + q2) + l * d2) * g;
    let k12 = p * q * g;
    let k13 = p * d * g;
    let k23 = q * d * g;
    [[k11, k12, k13], [k12, k22, k23], [k13, k23, k33]]
}

/// `[K](p, q, d)`; symmetric by construction.
pub fn operator_matrix(p: Complex64, q: Complex64, d: Complex64, nu: f64, c: f64) -> [[Complex64; 3]; 3] {
    operator_matrix_over(p, q, d, nu, c)
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<T: Scalar>(k: &[[T; 3]; 3]) -> T {
    k[0][0] * (k[1][1] * k[2][2] - k[1][2] * k[2][1]) - k[0][1] * (k[1][0] * k[2][2] - k[1][2] * k[2][0])
        + k[0][2] * (k[1][0] * k[2][1] - k[1][1] * k[2][0])
}

/// `|Taylor coefficient k of det K| / bound` at `d`, for `k = 0..=3`.
pub fn relative_taylor_coefficients(p: Complex64, q: Complex64, d: Complex64, nu: f64, c: f64) -> [f64; 4] {
    let kj = operator_matrix_over(Jet::constant(p), Jet::constant(q), Jet::variable(d), nu, c);
    let km = operator_matrix_over(Majorant::constant(p), Majorant::constant(q), Majorant::variable(d), nu, c);
    let det = determinant(&kj);
    let bound = determinant(&km);
    std::array::from_fn(|k| if bound.0[k] == 0.0 { det.0[k].norm() } else { det.0[k].norm() / bound.0[k] })
}

/// Largest relative `|det K|` accepted at a root.
pub const ROOT_TOL: f64 = 1e-10;
/// Relative size separating vanishing from non-vanishing Taylor
/// coefficients: some 500 ulp, while vanishing ones come out near 1 ulp.
pub const DERIVATIVE_TOL: f64 = 1e-13;
/// Smallest relative `|det K|` accepted at the generic point.
pub const NONROOT_MIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCheck {
    pub label: &'static str,
    pub d: Complex64,
    /// Relative Taylor coefficients of `det K` at `d`, orders 0 to 3.
    pub relative: [f64; 4],
}

impl RootCheck {
    /// Number of leading Taylor coefficients that vanish: the value below
    /// [`ROOT_TOL`], derivatives below [`DERIVATIVE_TOL`].
    pub fn multiplicity(&self) -> usize {
        if self.relative[0] >= ROOT_TOL {
            return 0;
        }
        1 + self.relative[1..].iter().take_while(|&&r| r < DERIVATIVE_TOL).count()
    }

    fn is_triple_root(&self) -> bool {
        self.multiplicity() == 3
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeterminantReport {
    pub p: Complex64,
    pub q: Complex64,
    pub roots: [RootCheck; 4],
    /// `d = beta + gamma`. Close to the root `gamma` when `|beta|` is small,
    /// so reported but not part of the verdict.
    pub beta_plus_gamma: RootCheck,
    /// A point farther from the origin than every root.
    pub generic: RootCheck,
}

impl DeterminantReport {
    pub fn max_root_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.relative[0]).fold(0.0, f64::max)
    }

    pub fn min_non_root(&self) -> f64 {
        self.generic.relative[0]
    }

    /// Every root is triple and the generic point is clearly not a root.
    pub fn passed(&self) -> bool {
        self.failure().is_none()
    }

    /// The first failing check, if any.
    pub fn failure(&self) -> Option<(&'static str, Complex64)> {
        self.roots
            .iter()
            .find(|r| !r.is_triple_root())
            .or_else(|| (self.generic.relative[0] <= NONROOT_MIN).then_some(&self.generic))
            .map(|r| (r.label, r.d))
    }
}

/// Checks that `d = +-beta, +-gamma` are triple roots of `det K` and that two
/// generic points are not.
pub fn determinant_roots_check(p: Complex64, q: Complex64, nu: f64, c: f64) -> Result<DeterminantReport> {
    let s = p * p + q * q;
    let size = (p.norm_sqr() + q.norm_sqr()).max(f64::MIN_POSITIVE);
    if s.norm() <= 1e-8 * size || (c * s - 1.0).norm() <= 1e-8 {
        return Err(Error::DegenerateDeterminant { magnitude: s.norm(), p: p.to_string(), q: q.to_string() });
    }
    let (beta, gamma) = super::branches(p, q, c);
    let check = |label, d| RootCheck { label, d, relative: relative_taylor_coefficients(p, q, d, nu, c) };
    // |d| = 3 (|p| + |q| + c^-1/2) keeps d^2 + p^2 + q^2 and 1 - c(...) away from 0
    let radius = 3.0 * (p.norm() + q.norm() + 1.0 / c.sqrt());
    let generic = Complex64::from_polar(radius, std::f64::consts::PI / 5.0);
    Ok(DeterminantReport {
        p,
        q,
        roots: [check("+beta", beta), check("-beta", -beta), check("+gamma", gamma), check("-gamma", -gamma)],
        beta_plus_gamma: check("beta+gamma", beta + gamma),
        generic: check("generic", generic),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetric() {
        let k = operator_matrix(c(0.3, 1.2), c(-0.7, 0.4), c(2.0, -1.0), 0.3, 0.8);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k[i][j], k[j][i]);
            }
        }
    }

    #[test]
    fn closed_form_determinant() {
        // det K = 2 (1 - nu) (1 - 2 nu)^2 s^3 (1 - c s)^3, s = d^2 + p^2 + q^2
        let (p, q, d, nu, cc) = (c(0.3, 1.2), c(-0.7, 0.4), c(2.0, -1.0), 0.3f64, 0.8);
        let s = d * d + p * p + q * q;
        let expected = 2.0 * (1.0 - nu) * (1.0 - 2.0 * nu).powi(2) * (s * (1.0 - cc * s)).powi(3);
        let det = determinant(&operator_matrix(p, q, d, nu, cc));
        assert!((det - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn jet_derivatives() {
        // f(d) = d^3 at d = 2: 8, 12, 6, 1
        let x = Jet::variable(c(2.0, 0.0));
        let y = x * x * x;
        assert_eq!(y.0, [c(8.0, 0.0), c(12.0, 0.0), c(6.0, 0.0), c(1.0, 0.0)]);
        let m = Majorant::variable(c(0.0, 2.0)) - Majorant::constant(c(1.0, 0.0));
        assert_eq!(m.0, [3.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(determinant_roots_check(c(1.0, 0.0), c(0.0, 1.0), 0.3, 1.0).is_err());
        // p^2 + q^2 = 1/c
        assert!(determinant_roots_check(c(0.5, 0.0), c(0.0, 0.0), 0.3, 4.0).is_err());
    }
}
