//! Dimensionless spectral kernels of the surface solution.
//!
//! With `rho'` the normalized transform variable and `gamma' = sqrt(1 + rho'^2)`
//! the kernels are
//!
//! ```text
//! Lambda = 4 (rho' gamma')^3 - (1 + 2 rho'^2) (2 (rho' gamma')^2 - nu + 1)
//! G      = rho' [4 gamma'^2 rho' (gamma' - rho') - 2 rho'^2 - 3 + 2 nu] / ((1 + rho'^2) Lambda)
//! H      = rho' [(1 + 2 rho'^2 - 2 gamma' rho') gamma' rho' - 1 + nu] / ((1 + rho'^2) Lambda)
//! ```
//!
//! As written these lose every significant digit for large `rho'`. Using
//! `gamma' - rho' = 1 / (gamma' + rho')` and
//! `1 + 2 rho'^2 - 2 gamma' rho' = (gamma' - rho')^2` they become
//!
//! ```text
//! Lambda = -2 (rho' gamma')^2 / (rho' + gamma')^2 - (1 + 2 rho'^2) (1 - nu)
//! G      = -rho' [2 gamma'^2 / (rho' + gamma')^2 + 1 - 2 nu] / (gamma'^2 Lambda)
//! H      =  rho' [gamma' rho' / (rho' + gamma')^2 - 1 + nu] / (gamma'^2 Lambda)
//! ```
//!
//! which are what the solver evaluates. The rewritten `Lambda` is a sum of two
//! negative terms whenever `nu < 1`, so the integrands have no poles for any
//! admissible material.

use crate::error::{Error, Result};
use crate::model::{Material, PointLoad};

/// `gamma' = sqrt(1 + rho'^2)`.
pub fn gamma_prime(rho_p: f64) -> f64 {
    rho_p.hypot(1.0)
}

/// `1 / (gamma' + rho')`, the cancellation-free `gamma' - rho'`.
#[inline]
fn gamma_minus_rho(rho_p: f64, gamma_p: f64) -> f64 {
    1.0 / (gamma_p + rho_p)
}

/// `Lambda(rho')` in the rationalized form.
pub fn lambda_cap(rho_p: f64, nu: f64) -> f64 {
    let g = gamma_prime(rho_p);
    let t = gamma_minus_rho(rho_p, g);
    let rg = rho_p * g;
    -2.0 * rg * rg * t * t - (1.0 + 2.0 * rho_p * rho_p) * (1.0 - nu)
}

/// `Lambda(rho')` exactly as the polynomial in `rho' gamma'` is written.
/// Accurate only for moderate `rho'`; kept as an independent evaluation path.
pub fn lambda_cap_direct(rho_p: f64, nu: f64) -> f64 {
    let g = gamma_prime(rho_p);
    let rg = rho_p * g;
    4.0 * rg.powi(3) - (1.0 + 2.0 * rho_p * rho_p) * (2.0 * rg * rg - nu + 1.0)
}

/// A point of the spectral axis with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub rho_p: f64,
    pub gamma_p: f64,
    pub lambda_cap: f64,
}

impl SpectralPoint {
    pub fn new(rho_p: f64, nu: f64) -> Result<Self> {
        if !(rho_p >= 0.0) || !rho_p.is_finite() {
            return Err(Error::Domain(format!("rho' must be finite and >= 0, got {rho_p}")));
        }
        Ok(Self { rho_p, gamma_p: gamma_prime(rho_p), lambda_cap: lambda_cap(rho_p, nu) })
    }

    fn checked_lambda(&self, nu: f64) -> Result<f64> {
        let l = self.lambda_cap;
        if l == 0.0 || !l.is_finite() {
            return Err(Error::SpectralPole { rho_p: self.rho_p, nu });
        }
        Ok(l)
    }

    /// `G(rho')`.
    pub fn kernel_g(&self, nu: f64) -> Result<f64> {
        let l = self.checked_lambda(nu)?;
        Ok(g_unchecked(self.rho_p, self.gamma_p, l, nu))
    }

    /// `H(rho')`.
    pub fn kernel_h(&self, nu: f64) -> Result<f64> {
        let l = self.checked_lambda(nu)?;
        Ok(h_unchecked(self.rho_p, self.gamma_p, l, nu))
    }
}

#[inline]
fn g_unchecked(rho_p: f64, g: f64, lambda: f64, nu: f64) -> f64 {
    let t = gamma_minus_rho(rho_p, g);
    -rho_p * (2.0 * g * g * t * t + 1.0 - 2.0 * nu) / (g * g * lambda)
}

#[inline]
fn h_unchecked(rho_p: f64, g: f64, lambda: f64, nu: f64) -> f64 {
    let t = gamma_minus_rho(rho_p, g);
    rho_p * (g * rho_p * t * t - 1.0 + nu) / (g * g * lambda)
}

/// `G(rho', nu)`; errors if `Lambda` vanishes.
pub fn kernel_g(rho_p: f64, nu: f64) -> Result<f64> {
    SpectralPoint::new(rho_p, nu)?.kernel_g(nu)
}

/// `H(rho', nu)`; errors if `Lambda` vanishes.
pub fn kernel_h(rho_p: f64, nu: f64) -> Result<f64> {
    SpectralPoint::new(rho_p, nu)?.kernel_h(nu)
}

/// `G` with `gamma' - rho'` and `Lambda` taken literally.
pub fn kernel_g_direct(rho_p: f64, nu: f64) -> f64 {
    let g = gamma_prime(rho_p);
    rho_p * (4.0 * g * g * rho_p * (g - rho_p) - 2.0 * rho_p * rho_p - 3.0 + 2.0 * nu)
        / ((1.0 + rho_p * rho_p) * lambda_cap_direct(rho_p, nu))
}

/// `H` with every factor taken literally.
pub fn kernel_h_direct(rho_p: f64, nu: f64) -> f64 {
    let g = gamma_prime(rho_p);
    rho_p * ((1.0 + 2.0 * rho_p * rho_p - 2.0 * g * rho_p) * g * rho_p - 1.0 + nu)
        / ((1.0 + rho_p * rho_p) * lambda_cap_direct(rho_p, nu))
}

/// Largest `rho'` of the grid on which `Lambda < 0` is confirmed.
pub const POLE_SCAN_MAX: f64 = 1e4;
const POLE_SCAN_POINTS: usize = 4000;

/// The `G` and `H` kernels for one Poisson ratio, with the absence of
/// spectral poles confirmed on a dense logarithmic grid at construction.
#[derive(Debug, Clone, Copy)]
pub struct Kernels {
    nu: f64,
}

impl Kernels {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::NonFinite("nu"));
        }
        let scan = std::iter::once(0.0)
            .chain((0..POLE_SCAN_POINTS).map(|k| 10f64.powf(-6.0 + 10.0 * k as f64 / (POLE_SCAN_POINTS - 1) as f64)));
        for rho_p in scan {
            let l = lambda_cap(rho_p, nu);
            if !(l < 0.0) {
                return Err(Error::SpectralPole { rho_p, nu });
            }
        }
        Ok(Self { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    #[inline]
    pub fn g(&self, rho_p: f64) -> f64 {
        let g = gamma_prime(rho_p);
        g_unchecked(rho_p, g, lambda_cap(rho_p, self.nu), self.nu)
    }

    #[inline]
    pub fn h(&self, rho_p: f64) -> f64 {
        let g = gamma_prime(rho_p);
        h_unchecked(rho_p, g, lambda_cap(rho_p, self.nu), self.nu)
    }
}

/// The three additive terms of each dimensional spectral amplitude:
/// the classical `1/rho` pole, the first gradient term and the part carrying
/// `N` in its denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeTerms {
    pub f1: [f64; 3],
    pub f2: [f64; 3],
}

impl AmplitudeTerms {
    pub fn f1(&self) -> f64 {
        self.f1.iter().sum()
    }
    pub fn f2(&self) -> f64 {
        self.f2.iter().sum()
    }
}

/// `N` on the inversion contour (`beta = rho`, `gamma = sqrt(1/c + rho^2)`),
/// rationalized. Equals `Lambda(sqrt(c) rho)`.
pub fn contour_n(rho: f64, nu: f64, c: f64) -> f64 {
    let gamma = (1.0 / c + rho * rho).sqrt();
    let crg = c * rho * gamma;
    let s = rho + gamma;
    -2.0 * crg * crg / (c * s * s) - (1.0 + 2.0 * c * rho * rho) * (1.0 - nu)
}

/// Terms of the dimensional amplitudes `F1(rho)`, `F2(rho)` with raw
/// parameters; no admissibility check, so `nu = 0.5` is allowed.
pub fn spectral_amplitude_terms(rho: f64, mu: f64, nu: f64, c: f64, p: f64) -> Result<AmplitudeTerms> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("F1, F2 have a pole at rho = 0; got rho = {rho}")));
    }
    let gamma = (1.0 / c + rho * rho).sqrt();
    // gamma - rho = (1/c) / (gamma + rho)
    let gmr = 1.0 / (c * (gamma + rho));
    let n = contour_n(rho, nu, c);
    let denom = 1.0 + c * rho * rho;

    let f1 = [
        -p * (1.0 - 2.0 * nu) / (2.0 * mu * rho),
        p * c * rho * (1.0 - 2.0 * nu) / (2.0 * mu * denom),
        p * c * (1.0 - nu) * rho * (4.0 * c * c * gamma * gamma * rho * gmr - 2.0 * c * rho * rho - 3.0 + 2.0 * nu)
            / (2.0 * mu * denom * n),
    ];
    // 1 + 2 c rho^2 - 2 c rho gamma = c (gamma - rho)^2
    let bracket = c * (c * gmr * gmr) * gamma * rho - 1.0 + nu;
    let f2 = [
        p * (1.0 - nu) / (mu * rho),
        -p * (1.0 - nu) * c * rho / (mu * denom),
        -p * c * (1.0 - nu) * rho * bracket / (mu * denom * n),
    ];
    Ok(AmplitudeTerms { f1, f2 })
}

/// `(F1(rho), F2(rho))` for a validated material and load.
pub fn spectral_amplitudes_f(rho: f64, material: &Material, load: &PointLoad) -> Result<(f64, f64)> {
    crate::model::validate(material)?;
    let t = spectral_amplitude_terms(rho, material.mu, material.nu, material.c, load.p)?;
    Ok((t.f1(), t.f2()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gamma_prime_examples() {
        assert_eq!(gamma_prime(0.0), 1.0);
        assert!((gamma_prime(3f64.sqrt()) - 2.0).abs() < 1e-15);
        assert!((gamma_prime(10.0) - 10.049_875_621_120_89).abs() < 1e-13);
    }

    #[test]
    fn lambda_examples() {
        for nu in [0.0, 0.3, 0.45, -0.5] {
            assert!((lambda_cap(0.0, nu) + (1.0 - nu)).abs() < 1e-15);
        }
        // mpmath: -2.786291501015239609...
        assert!((lambda_cap(1.0, 0.3) + 2.786_291_501_015_24).abs() < 1e-13);
        assert!((lambda_cap_direct(1.0, 0.3) + 2.786_291_501_015_24).abs() < 1e-12);
        for nu in [0.0, 0.3, 0.49] {
            let rho = 1e5;
            let ratio = lambda_cap(rho, nu) / (rho * rho);
            assert!((ratio - (2.0 * nu - 2.5)).abs() < 1e-8, "{ratio}");
        }
    }

    #[test]
    fn kernels_vanish_at_origin() {
        assert_eq!(kernel_g(0.0, 0.3).unwrap(), 0.0);
        assert_eq!(kernel_h(0.0, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn dual_path_agreement() {
        // direct and rationalized forms at rho' = 1
        let h1 = kernel_h(1.0, 0.3).unwrap();
        let h2 = kernel_h_direct(1.0, 0.3);
        assert!((h1 - h2).abs() < 1e-13, "{h1} vs {h2}");
        for k in 0..=100 {
            let rho = k as f64 / 100.0;
            for nu in [0.0, 0.25, 0.45] {
                assert!((kernel_g(rho, nu).unwrap() - kernel_g_direct(rho, nu)).abs() < 1e-13);
                assert!((kernel_h(rho, nu).unwrap() - kernel_h_direct(rho, nu)).abs() < 1e-13);
                assert!((lambda_cap(rho, nu) - lambda_cap_direct(rho, nu)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn kernels_decay_like_inverse_cube() {
        for nu in [0.0, 0.3, 0.45] {
            let a = kernel_g(1e3, nu).unwrap() * 1e9;
            let b = kernel_g(1e4, nu).unwrap() * 1e12;
            assert!((a / b - 1.0).abs() < 1e-5);
            // G ~ -(3/2 - 2nu) / ((2nu - 5/2) rho'^3)
            let lead = -(1.5 - 2.0 * nu) / (2.0 * nu - 2.5);
            assert!((b / lead - 1.0).abs() < 1e-6, "{b} vs {lead}");
            let h = kernel_h(1e4, nu).unwrap() * 1e12;
            let lead_h = (nu - 0.75) / (2.0 * nu - 2.5);
            assert!((h / lead_h - 1.0).abs() < 1e-6, "{h} vs {lead_h}");
        }
    }

    #[test]
    fn kernels_bounded_with_interior_extremum() {
        for nu in [0.0, 0.3, 0.45] {
            let grid: Vec<f64> = (0..2000).map(|k| 10f64.powf(-4.0 + 8.0 * k as f64 / 1999.0)).collect();
            for f in [kernel_g as fn(f64, f64) -> Result<f64>, kernel_h] {
                let vals: Vec<f64> = grid.iter().map(|&r| f(r, nu).unwrap().abs()).collect();
                let (imax, vmax) =
                    vals.iter().enumerate().fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
                assert!(vmax.is_finite() && vmax < 10.0);
                assert!(imax > 0 && imax < grid.len() - 1);
            }
        }
    }

    #[test]
    fn no_poles_on_dense_grid() {
        for k in 0..50 {
            let nu = k as f64 / 100.0;
            assert!(Kernels::new(nu).is_ok());
            for j in 0..=20_000 {
                let rho = 1e4 * j as f64 / 20_000.0;
                assert!(lambda_cap(rho, nu) < 0.0);
            }
        }
    }

    #[test]
    fn pole_scan_rejects_unphysical_nu() {
        // Lambda(0) = nu - 1 vanishes at nu = 1
        assert!(matches!(Kernels::new(1.0), Err(Error::SpectralPole { .. })));
    }

    #[test]
    fn amplitude_f1_incompressible() {
        let t = spectral_amplitude_terms(2.0, 1.0, 0.5, 0.3, 1.0).unwrap();
        assert_eq!(t.f1[0], 0.0);
        assert_eq!(t.f1[1], 0.0);
        assert!(spectral_amplitude_terms(0.0, 1.0, 0.3, 1.0, 1.0).is_err());
    }

    #[test]
    fn f2_classical_limit() {
        let (mu, nu, p) = (2.0, 0.3, 5.0);
        let m = Material::new(mu, nu, 1e-12).unwrap();
        for rho in [0.1, 1.0, 10.0] {
            let (_, f2) = spectral_amplitudes_f(rho, &m, &PointLoad { p }).unwrap();
            let classical = p * (1.0 - nu) / (mu * rho);
            assert!((f2 / classical - 1.0).abs() < 1e-9, "{f2} vs {classical}");
        }
    }

    #[test]
    fn contour_n_is_lambda() {
        for &c in &[1e-6f64, 0.3, 7.0] {
            for &rp in &[0.0, 0.1, 1.0, 3.0, 50.0] {
                let rho = rp / c.sqrt();
                let n = contour_n(rho, 0.3, c);
                assert!((n - lambda_cap(rp, 0.3)).abs() <= 1e-13 * n.abs());
            }
        }
    }

    proptest! {
        #[test]
        fn gamma_identity(rho in 0.0..1e6f64) {
            let g = gamma_prime(rho);
            prop_assert!(g >= 1.0);
            // (g - rho)(g + rho) = 1 with the rationalized difference
            let lhs = (g * g - rho * rho - 1.0).abs();
            prop_assert!(lhs <= 4.0 * f64::EPSILON * g * g.max(1.0));
        }

        #[test]
        fn normalized_integrands_match_amplitudes(
            rp in 1e-3..1e3f64, nu in 0.0..0.49f64, c in 1e-4..1e2f64,
            mu in 0.1..10.0f64, p in 0.1..10.0f64,
        ) {
            let rho = rp / c.sqrt();
            let t = spectral_amplitude_terms(rho, mu, nu, c, p).unwrap();
            let lhs1 = 2.0 * mu / (p * c.sqrt()) * t.f1() * rp;
            let rhs1 = -(1.0 - 2.0 * nu) + (1.0 - 2.0 * nu) * rp * rp / (1.0 + rp * rp)
                + (1.0 - nu) * kernel_g(rp, nu).unwrap() * rp;
            prop_assert!((lhs1 - rhs1).abs() <= 1e-11 * (1.0 + rhs1.abs()), "{} {}", lhs1, rhs1);
            let lhs2 = mu / (p * c.sqrt()) * t.f2() * rp;
            let rhs2 = (1.0 - nu) - (1.0 - nu) * rp * rp / (1.0 + rp * rp)
                - (1.0 - nu) * kernel_h(rp, nu).unwrap() * rp;
            prop_assert!((lhs2 - rhs2).abs() <= 1e-11 * (1.0 + rhs2.abs()), "{} {}", lhs2, rhs2);
        }
    }
}
