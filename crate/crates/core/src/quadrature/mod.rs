//! Quadrature for the inverse Hankel transforms
//! `int_0^inf f(rho') J_n(rho' r') d rho'` with smooth, algebraically decaying
//! `f`, plus the finite-interval adaptive engine underneath.

mod adaptive;
mod bessel;
mod epsilon;
pub(crate) mod gauss_kronrod;

pub use adaptive::{integrate_adaptive, integrate_tail};
pub use bessel::integrate_bessel;
pub use epsilon::{extrapolate, EpsilonTable};

use crate::error::{Error, Result};

/// How the tail of the zero-partitioned sum is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailAccel {
    /// Plain partial sums; converged once a single interval contributes
    /// less than the tolerance.
    None,
    /// Wynn's epsilon algorithm on the alternating partial sums.
    Epsilon,
}

/// Tolerances and budgets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_zero_intervals: usize,
    pub tail_accel: TailAccel,
    /// Bisection budget of the adaptive engine on a single interval.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_zero_intervals: 200,
            tail_accel: TailAccel::Epsilon,
            max_subdivisions: 500,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_zero_intervals < 8 {
            return Err(Error::Domain("max_zero_intervals must be at least 8".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Tolerance target for a value of magnitude `v`.
    pub fn target(&self, v: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * v.abs())
    }
}

/// Value with its error estimate. `converged` implies
/// `err_est <= max(rel_tol |value|, abs_tol)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub err_est: f64,
    pub intervals_used: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Exact zero with no work done.
    pub fn exact_zero() -> Self {
        Self { value: 0.0, err_est: 0.0, intervals_used: 0, converged: true }
    }
}
