use super::adaptive::adaptive_core;
use super::epsilon::EpsilonTable;
use super::{QuadratureResult, QuadratureSpec, TailAccel};
use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_zero, BesselOrder};

/// Extrapolation is trusted only after this many partial sums.
const MIN_TERMS: usize = 6;
/// Per-interval tolerances are this fraction of the global ones.
const LOCAL_FACTOR: f64 = 0.01;

/// `int_0^inf f(x) J_n(x r) dx`.
///
/// For `r > 0` the half-line is cut at the scaled zeros `j_{n,k} / r`, each
/// piece is integrated adaptively and the alternating partial sums are
/// extrapolated. For `r = 0`, `J1` gives exactly 0 and `J0 = 1` reduces to
/// `int_0^1 f + int_0^1 f(1/t) / t^2 dt`.
///
/// `f` must be continuous and decay at least like `x^-2`, except that the
/// conditionally convergent cases with bounded `f` (such as `f = 1`) are
/// handled for `r > 0` by the extrapolation.
pub fn integrate_bessel<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    order: BesselOrder,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r' must be finite and >= 0, got {r}")));
    }
    if r == 0.0 {
        return match order {
            BesselOrder::One => Ok(QuadratureResult::exact_zero()),
            BesselOrder::Zero => at_origin(f, spec),
        };
    }

    let g = |x: f64| f(x) * bessel_j(order, x * r);
    let local_rel = spec.rel_tol * LOCAL_FACTOR;
    let local_abs = spec.abs_tol * LOCAL_FACTOR;

    let mut table = EpsilonTable::new();
    let mut partial = 0.0;
    let mut quad_err = 0.0;
    let mut best = (f64::NAN, f64::INFINITY);
    let mut lower = 0.0;
    for k in 1..=spec.max_zero_intervals {
        let upper = bessel_zero(order, k) / r;
        let piece = adaptive_core(&g, lower, upper, local_rel, local_abs, spec.max_subdivisions)?;
        partial += piece.value;
        quad_err += piece.err_est;
        lower = upper;

        let (estimate, extrap_err) = match spec.tail_accel {
            TailAccel::Epsilon => table.push(partial),
            TailAccel::None => (partial, piece.value.abs()),
        };
        let err = extrap_err + quad_err;
        if err < best.1 {
            best = (estimate, err);
        }
        if k >= MIN_TERMS && err <= spec.target(estimate) {
            return Ok(QuadratureResult { value: estimate, err_est: err, intervals_used: k, converged: true });
        }
    }
    Ok(QuadratureResult { value: best.0, err_est: best.1, intervals_used: spec.max_zero_intervals, converged: false })
}

fn at_origin<F: Fn(f64) -> f64 + ?Sized>(f: &F, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    let head = adaptive_core(f, 0.0, 1.0, spec.rel_tol * 0.5, spec.abs_tol * 0.5, spec.max_subdivisions)?;
    let tail_fn = |t: f64| {
        let x = 1.0 / t;
        f(x) * x * x
    };
    let tail = adaptive_core(&tail_fn, 0.0, 1.0, spec.rel_tol * 0.5, spec.abs_tol * 0.5, spec.max_subdivisions)?;
    let value = head.value + tail.value;
    let err_est = head.err_est + tail.err_est;
    Ok(QuadratureResult {
        value,
        err_est,
        intervals_used: head.intervals_used + tail.intervals_used,
        converged: head.converged && tail.converged && err_est <= spec.target(value),
    })
}
