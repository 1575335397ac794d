//! Globally adaptive bisection driven by the G7K15 panel error.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gauss_kronrod::{gk15, Panel};
use super::{QuadratureResult, QuadratureSpec};
use crate::error::{Error, Result};

struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Outcome of the bisection loop. `converged == false` carries the best
/// estimate reached when the subdivision budget ran out.
pub(crate) fn adaptive_core<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureResult> {
    let first = gk15(f, a, b);
    if let Some(at) = first.nan_at {
        return Err(Error::NanIntegrand { at });
    }
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(ByError(first));
    let mut panels = 1;

    while error > abs_tol.max(rel_tol * value.abs()) {
        if panels >= max_subdivisions {
            return Ok(QuadratureResult { value, err_est: error, intervals_used: panels, converged: false });
        }
        let worst = heap.pop().expect("heap holds at least one panel").0;
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further in floating point
            heap.push(ByError(worst));
            return Ok(QuadratureResult { value, err_est: error, intervals_used: panels, converged: false });
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        if let Some(at) = left.nan_at.or(right.nan_at) {
            return Err(Error::NanIntegrand { at });
        }
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
        panels += 1;
        // resum periodically to shed accumulated rounding in the running totals
        if panels % 64 == 0 {
            value = heap.iter().map(|p| p.0.value).sum();
            error = heap.iter().map(|p| p.0.error).sum();
        }
    }
    value = heap.iter().map(|p| p.0.value).sum();
    error = heap.iter().map(|p| p.0.error).sum();
    Ok(QuadratureResult { value, err_est: error, intervals_used: panels, converged: true })
}

/// Integrates `f` over the finite interval `[a, b]` to the tolerances of
/// `spec`.
pub fn integrate_adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    let res = adaptive_core(f, a, b, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)?;
    if !res.converged {
        return Err(Error::SubdivisionLimit { limit: spec.max_subdivisions, a, b });
    }
    Ok(res)
}

/// `int_a^inf f` for `a > 0` through the substitution `t = 1/x`. The
/// integrand must decay at least like `x^-2`.
pub fn integrate_tail<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("tail start must be positive, got {a}")));
    }
    let g = |t: f64| {
        let x = 1.0 / t;
        f(x) * x * x
    };
    integrate_adaptive(&g, 0.0, 1.0 / a, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_integrals() {
        let spec = QuadratureSpec::default();
        let r = integrate_adaptive(&|_| 1.0, 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
        assert!(r.converged);
        let r = integrate_adaptive(&|x| x, 0.0, 1.0, &spec).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tail_substitution() {
        let spec = QuadratureSpec::default();
        let r = integrate_tail(&|x: f64| x.powi(-3), 1.0, &spec).unwrap();
        assert!((r.value - 0.5).abs() < 1e-13, "{}", r.value);
    }

    #[test]
    fn peaked_integrand() {
        let spec = QuadratureSpec::default();
        let r = integrate_adaptive(&|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, &spec).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value - exact).abs() < 1e-9 * exact);
        assert!(r.err_est >= (r.value - exact).abs() * 0.1);
    }

    #[test]
    fn subdivision_limit_is_an_error() {
        let spec = QuadratureSpec { max_subdivisions: 3, ..QuadratureSpec::default() };
        let e = integrate_adaptive(&|x: f64| (1.0 / (x + 1e-9)).sin(), 0.0, 1.0, &spec).unwrap_err();
        assert!(matches!(e, Error::SubdivisionLimit { .. }));
    }

    #[test]
    fn nan_is_reported() {
        let spec = QuadratureSpec::default();
        let e = integrate_adaptive(&|_x: f64| f64::NAN, 0.0, 1.0, &spec).unwrap_err();
        assert!(matches!(e, Error::NanIntegrand { .. }));
    }

    #[test]
    fn bad_bounds() {
        let spec = QuadratureSpec::default();
        assert!(integrate_adaptive(&|x| x, 1.0, 1.0, &spec).is_err());
    }
}
