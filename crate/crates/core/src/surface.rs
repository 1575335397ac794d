//! Surface displacements under the point load.
//!
//! Normalized quantities use `r' = r / sqrt(c)` and
//! `u_r = P/(4 pi mu sqrt c) ur_hat`, `u3 = P/(2 pi mu sqrt c) u3_hat`:
//!
//! ```text
//! ur_hat(r') = (1 - 2nu) [K1(r') - 1/r'] + (1 - nu) int_0^inf G(rho') rho' J1(rho' r') d rho'
//! u3_hat(r') = (pi (1 - nu)/2) [I0 - L0](r') - (1 - nu) int_0^inf H(rho') rho' J0(rho' r') d rho'
//! ```
//!
//! The tangential displacement vanishes identically.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{self, Material, PointLoad};
use crate::quadrature::{integrate_bessel, QuadratureResult, QuadratureSpec};
use crate::specfun::{i0_minus_l0, k1_minus_inv, BesselOrder};
use crate::spectral::Kernels;

/// Poisson ratios accepted by the normalized functions. The incompressible
/// limit is included here since nothing normalized divides by `1 - 2nu`.
pub fn check_nu(nu: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::NonFinite("nu"));
    }
    if !(nu > -1.0 && nu <= 0.5) {
        return Err(Error::PoissonRatioOutOfRange(nu));
    }
    Ok(())
}

fn check_r(r_p: f64) -> Result<()> {
    if !(r_p >= 0.0) || !r_p.is_finite() {
        return Err(Error::Domain(format!("r' must be finite and >= 0, got {r_p}")));
    }
    Ok(())
}

fn require_converged(q: QuadratureResult, value: f64) -> Result<f64> {
    if q.converged {
        Ok(value)
    } else {
        Err(Error::NotConverged { value, err_est: q.err_est })
    }
}

/// `(1 - nu) int G rho' J1(rho' r')` together with its quadrature record.
fn radial_gradient_integral(kernels: &Kernels, r_p: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    let f = |x: f64| kernels.g(x) * x;
    let mut q = integrate_bessel(&f, BesselOrder::One, r_p, spec)?;
    let w = 1.0 - kernels.nu();
    q.value *= w;
    q.err_est *= w;
    Ok(q)
}

/// `-(1 - nu) int H rho' J0(rho' r')` together with its quadrature record.
fn vertical_gradient_integral(kernels: &Kernels, r_p: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    let f = |x: f64| kernels.h(x) * x;
    let mut q = integrate_bessel(&f, BesselOrder::Zero, r_p, spec)?;
    let w = 1.0 - kernels.nu();
    q.value *= -w;
    q.err_est *= w;
    Ok(q)
}

/// `ur_hat` with its quadrature record; does not fail on non-convergence.
pub fn ur_hat_detailed(r_p: f64, nu: f64, spec: &QuadratureSpec) -> Result<(f64, QuadratureResult)> {
    check_nu(nu)?;
    check_r(r_p)?;
    if r_p == 0.0 {
        return Ok((0.0, QuadratureResult::exact_zero()));
    }
    let kernels = Kernels::new(nu)?;
    let q = radial_gradient_integral(&kernels, r_p, spec)?;
    let closed = if nu == 0.5 { 0.0 } else { (1.0 - 2.0 * nu) * k1_minus_inv(r_p)? };
    Ok((closed + q.value, q))
}

/// `u3_hat` with its quadrature record; does not fail on non-convergence.
pub fn u3_hat_detailed(r_p: f64, nu: f64, spec: &QuadratureSpec) -> Result<(f64, QuadratureResult)> {
    check_nu(nu)?;
    check_r(r_p)?;
    let kernels = Kernels::new(nu)?;
    let q = vertical_gradient_integral(&kernels, r_p, spec)?;
    let closed = FRAC_PI_2 * (1.0 - nu) * i0_minus_l0(r_p);
    Ok((closed + q.value, q))
}

/// Normalized radial surface displacement; exactly 0 at `r' = 0`.
pub fn ur_hat(r_p: f64, nu: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (v, q) = ur_hat_detailed(r_p, nu, spec)?;
    require_converged(q, v)
}

/// Normalized vertical surface displacement; finite at `r' = 0`.
pub fn u3_hat(r_p: f64, nu: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (v, q) = u3_hat_detailed(r_p, nu, spec)?;
    require_converged(q, v)
}

/// Normalized classical counterparts `(ur, u3) = (-(1 - 2nu)/r', (1 - nu)/r')`.
pub fn classical_hat(r_p: f64, nu: f64) -> Option<(f64, f64)> {
    (r_p > 0.0).then(|| (-(1.0 - 2.0 * nu) / r_p, (1.0 - nu) / r_p))
}

/// Classical surface field `(u_r, u_theta, u3)` at physical radius `r`.
pub fn classical_surface(r: f64, material: &Material, load: &PointLoad) -> Result<(f64, f64, f64)> {
    model::validate(material)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("the classical field is singular at r = 0; got r = {r}")));
    }
    let (mu, nu, p) = (material.mu, material.nu, load.p);
    Ok((-p * (1.0 - 2.0 * nu) / (4.0 * PI * mu * r), 0.0, p * (1.0 - nu) / (2.0 * PI * mu * r)))
}

/// Dimensional surface field `(u_r, u_theta, u3)` at physical radius `r >= 0`.
pub fn surface_displacement(
    r: f64,
    material: &Material,
    load: &PointLoad,
    spec: &QuadratureSpec,
) -> Result<(f64, f64, f64)> {
    model::validate(material)?;
    let r_p = model::normalize_radius(r, material.c);
    let ur = ur_hat(r_p, material.nu, spec)?;
    let u3 = u3_hat(r_p, material.nu, spec)?;
    let (u_r, u_3) = model::dimensionalize(ur, u3, material, load);
    Ok((u_r, 0.0, u_3))
}

/// The six normalized parts of the surface field: classical, first and
/// second gradient terms of the radial (`i_*`) and vertical (`ii_*`) parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub i_class: f64,
    pub i_grad1: f64,
    pub i_grad2: f64,
    pub ii_class: f64,
    pub ii_grad1: f64,
    pub ii_grad2: f64,
}

impl Decomposition {
    pub fn ur_hat(&self) -> f64 {
        self.i_class + self.i_grad1 + self.i_grad2
    }
    pub fn u3_hat(&self) -> f64 {
        self.ii_class + self.ii_grad1 + self.ii_grad2
    }
}

pub fn decompose(r_p: f64, nu: f64, spec: &QuadratureSpec) -> Result<Decomposition> {
    check_nu(nu)?;
    if !(r_p > 0.0) || !r_p.is_finite() {
        return Err(Error::Domain(format!("decomposition needs r' > 0, got {r_p}")));
    }
    let kernels = Kernels::new(nu)?;
    let qi = radial_gradient_integral(&kernels, r_p, spec)?;
    let qii = vertical_gradient_integral(&kernels, r_p, spec)?;
    let i_grad2 = require_converged(qi, qi.value)?;
    let ii_grad2 = require_converged(qii, qii.value)?;
    let k1 = k1_minus_inv(r_p)? + 1.0 / r_p;
    Ok(Decomposition {
        i_class: -(1.0 - 2.0 * nu) / r_p,
        i_grad1: (1.0 - 2.0 * nu) * k1,
        i_grad2,
        ii_class: (1.0 - nu) / r_p,
        ii_grad1: -(1.0 - nu) / r_p + FRAC_PI_2 * (1.0 - nu) * i0_minus_l0(r_p),
        ii_grad2,
    })
}

/// Normalized surface displacements on a grid of `r'`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceProfile {
    pub nu: f64,
    pub r_prime: Vec<f64>,
    pub u3_hat: Vec<f64>,
    pub ur_hat: Vec<f64>,
    /// Absent at `r' = 0`.
    pub u3_class_hat: Vec<Option<f64>>,
    pub ur_class_hat: Vec<Option<f64>>,
    pub quad_u3: Vec<QuadratureResult>,
    pub quad_ur: Vec<QuadratureResult>,
}

/// `r' = 0` followed by `n` log-spaced points on `[r_min, r_max]`.
pub fn log_grid(r_min: f64, r_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || n < 2 {
        return Err(Error::Domain(format!("invalid grid [{r_min}, {r_max}] with {n} points")));
    }
    let (a, b) = (r_min.ln(), r_max.ln());
    let mut grid = vec![0.0];
    grid.extend((0..n).map(|k| if k == n - 1 { r_max } else { (a + (b - a) * k as f64 / (n - 1) as f64).exp() }));
    Ok(grid)
}

/// The default grid: 0 plus 200 log-spaced points on `[1e-3, 20]`.
pub fn default_grid() -> Vec<f64> {
    log_grid(1e-3, 20.0, 200).expect("valid default grid")
}

impl SurfaceProfile {
    /// Evaluates all grid points in parallel; the output order follows `grid`.
    /// Non-converged points are kept and flagged in the quadrature records.
    pub fn compute(grid: &[f64], nu: f64, spec: &QuadratureSpec) -> Result<Self> {
        check_nu(nu)?;
        spec.validate()?;
        let rows: Vec<_> = grid
            .par_iter()
            .map(|&r| -> Result<_> {
                let (ur, qr) = ur_hat_detailed(r, nu, spec)?;
                let (u3, q3) = u3_hat_detailed(r, nu, spec)?;
                Ok((ur, qr, u3, q3))
            })
            .collect::<Result<_>>()?;
        let mut p = Self {
            nu,
            r_prime: grid.to_vec(),
            u3_hat: Vec::with_capacity(grid.len()),
            ur_hat: Vec::with_capacity(grid.len()),
            u3_class_hat: Vec::with_capacity(grid.len()),
            ur_class_hat: Vec::with_capacity(grid.len()),
            quad_u3: Vec::with_capacity(grid.len()),
            quad_ur: Vec::with_capacity(grid.len()),
        };
        for (&r, (ur, qr, u3, q3)) in grid.iter().zip(rows) {
            let class = classical_hat(r, nu);
            p.ur_hat.push(ur);
            p.u3_hat.push(u3);
            p.ur_class_hat.push(class.map(|c| c.0));
            p.u3_class_hat.push(class.map(|c| c.1));
            p.quad_ur.push(qr);
            p.quad_u3.push(q3);
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.r_prime.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r_prime.is_empty()
    }

    pub fn all_converged(&self) -> bool {
        self.quad_u3.iter().chain(&self.quad_ur).all(|q| q.converged)
    }
}

/// `u3_hat(0, nu)`, the settlement under the load.
pub fn max_settlement(nu: f64, spec: &QuadratureSpec) -> Result<f64> {
    u3_hat(0.0, nu, spec)
}

/// Linear least-squares fit of the maximum settlement against `nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct SettlementFit {
    pub intercept: f64,
    pub slope: f64,
    pub nu: Vec<f64>,
    pub settlement: Vec<f64>,
    pub quad_err: Vec<f64>,
    /// Largest `|settlement - (intercept + slope nu)|` over the grid.
    pub max_residual: f64,
}

/// `nu = 0, 0.05, ..., 0.45`.
pub fn sweep_grid() -> Vec<f64> {
    (0..10).map(|k| k as f64 * 0.05).collect()
}

pub fn settlement_fit(spec: &QuadratureSpec) -> Result<SettlementFit> {
    settlement_fit_over(&sweep_grid(), spec)
}

pub fn settlement_fit_over(nus: &[f64], spec: &QuadratureSpec) -> Result<SettlementFit> {
    if nus.len() < 2 {
        return Err(Error::Domain("a linear fit needs at least two values of nu".into()));
    }
    let values: Vec<(f64, QuadratureResult)> =
        nus.par_iter().map(|&nu| u3_hat_detailed(0.0, nu, spec)).collect::<Result<_>>()?;
    if let Some((v, q)) = values.iter().find(|(_, q)| !q.converged) {
        return Err(Error::NotConverged { value: *v, err_est: q.err_est });
    }
    let ys: Vec<f64> = values.iter().map(|v| v.0).collect();
    let (intercept, slope) = linear_fit(nus, &ys);
    let max_residual = nus.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).abs()).fold(0.0, f64::max);
    Ok(SettlementFit {
        intercept,
        slope,
        nu: nus.to_vec(),
        settlement: ys,
        quad_err: values.iter().map(|v| v.1.err_est).collect(),
        max_residual,
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

const PEAK_SCAN_MIN: f64 = 0.02;
const PEAK_SCAN_MAX: f64 = 10.0;
const PEAK_SCAN_POINTS: usize = 120;

/// The extremum of `ur_hat` of largest magnitude on `(0, 10]`, as
/// `(r', ur_hat(r'))`: a log-spaced scan followed by golden-section refinement.
pub fn radial_peak(nu: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let grid = log_grid(PEAK_SCAN_MIN, PEAK_SCAN_MAX, PEAK_SCAN_POINTS)?;
    let grid = &grid[1..];
    let vals: Vec<f64> = grid.par_iter().map(|&r| ur_hat(r, nu, spec)).collect::<Result<_>>()?;
    let (imax, _) =
        vals.iter().enumerate().fold((0, -1.0), |acc, (i, v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc });
    if imax == 0 || imax == grid.len() - 1 {
        return Ok((grid[imax], vals[imax]));
    }
    let objective = |r: f64| ur_hat(r, nu, spec).map(|v| -v.abs());
    let r = golden_section_min(objective, grid[imax - 1], grid[imax + 1], 1e-7)?;
    Ok((r, ur_hat(r, nu, spec)?))
}

fn golden_section_min(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > tol * (1.0 + a.abs()) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let x = golden_section_min(|x| Ok((x - 1.3).powi(2)), 0.0, 3.0, 1e-10).unwrap();
        assert!((x - 1.3).abs() < 1e-8);
    }

    #[test]
    fn linear_fit_exact_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 0.5 * x).collect();
        let (a, b) = linear_fit(&xs, &ys);
        assert!((a - 2.0).abs() < 1e-14 && (b + 0.5).abs() < 1e-14);
    }

    #[test]
    fn grid_shape() {
        let g = default_grid();
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - 1e-3).abs() < 1e-18);
        assert_eq!(*g.last().unwrap(), 20.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn nu_range() {
        assert!(check_nu(0.5).is_ok());
        assert!(check_nu(-0.99).is_ok());
        assert!(check_nu(0.51).is_err());
        assert!(check_nu(-1.0).is_err());
        assert!(check_nu(f64::NAN).is_err());
    }
}
