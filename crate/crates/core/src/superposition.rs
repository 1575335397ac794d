//! Settlement under distributed axisymmetric surface pressure, using the
//! point-load settlement as a Green's function:
//!
//! ```text
//! u3(r) = int_0^a0 p(r0) r0 int_0^2pi g3(|x - x0|) d phi d r0,
//! g3(d) = u3_hat(d / sqrt c) / (2 pi mu sqrt c)
//! ```
//!
//! `u3_hat` is tabulated once per Poisson ratio and interpolated.

use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{self, Material};
use crate::quadrature::{integrate_adaptive, QuadratureSpec};
use crate::surface::{check_nu, u3_hat};

/// Smallest positive table node.
pub const TABLE_R_MIN: f64 = 1e-4;
/// Largest table node; beyond it `u3_hat = (1 - nu)/r' + kappa/r'^3`.
pub const TABLE_R_MAX: f64 = 1e3;
pub const TABLE_NODES: usize = 400;

/// `u3_hat(r')` for one Poisson ratio, tabulated on log-spaced nodes with the
/// value at `r' = 0`, interpolated by local cubics in `ln r'`.
#[derive(Debug, Clone, PartialEq)]
pub struct SettlementKernel {
    nu: f64,
    origin: f64,
    ln_nodes: Vec<f64>,
    values: Vec<f64>,
    tail_kappa: f64,
}

impl SettlementKernel {
    /// Evaluates the nodes in parallel; the table does not depend on the
    /// thread count.
    pub fn build(nu: f64, spec: &QuadratureSpec) -> Result<Self> {
        check_nu(nu)?;
        let (a, b) = (TABLE_R_MIN.ln(), TABLE_R_MAX.ln());
        let ln_nodes: Vec<f64> = (0..TABLE_NODES).map(|k| a + (b - a) * k as f64 / (TABLE_NODES - 1) as f64).collect();
        let values: Vec<f64> = ln_nodes.par_iter().map(|&x| u3_hat(x.exp(), nu, spec)).collect::<Result<_>>()?;
        let origin = u3_hat(0.0, nu, spec)?;
        let last = *values.last().expect("non-empty table");
        let tail_kappa = (last - (1.0 - nu) / TABLE_R_MAX) * TABLE_R_MAX.powi(3);
        Ok(Self { nu, origin, ln_nodes, values, tail_kappa })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Interpolated `u3_hat(r')`.
    pub fn u3_hat(&self, r_p: f64) -> f64 {
        let r = r_p.abs();
        if r >= TABLE_R_MAX {
            return (1.0 - self.nu) / r + self.tail_kappa / (r * r * r);
        }
        if r <= TABLE_R_MIN {
            return self.origin + (self.values[0] - self.origin) * r / TABLE_R_MIN;
        }
        let x = r.ln();
        let h = self.ln_nodes[1] - self.ln_nodes[0];
        let n = self.ln_nodes.len();
        let i = (((x - self.ln_nodes[0]) / h).floor() as usize).min(n - 2);
        let start = i.saturating_sub(1).min(n - 4);
        let xs = &self.ln_nodes[start..start + 4];
        let ys = &self.values[start..start + 4];
        (0..4)
            .map(|j| {
                let w: f64 = (0..4).filter(|&m| m != j).map(|m| (x - xs[m]) / (xs[j] - xs[m])).product();
                w * ys[j]
            })
            .sum()
    }
}

/// A pressure distribution `p(r0)` on the disc `r0 <= radius`.
#[derive(Clone)]
pub struct AxisymmetricLoad {
    pressure: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    radius: f64,
    label: String,
}

impl fmt::Debug for AxisymmetricLoad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxisymmetricLoad").field("radius", &self.radius).field("label", &self.label).finish()
    }
}

impl AxisymmetricLoad {
    pub fn new(pressure: impl Fn(f64) -> f64 + Send + Sync + 'static, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!("load radius must be positive, got {radius}")));
        }
        Ok(Self { pressure: Arc::new(pressure), radius, label: "custom".into() })
    }

    /// Constant pressure over a disc.
    pub fn uniform_disc(pressure: f64, radius: f64) -> Result<Self> {
        if !pressure.is_finite() {
            return Err(Error::NonFinite("pressure"));
        }
        let mut l = Self::new(move |_| pressure, radius)?;
        l.label = format!("uniform disc p={pressure} a={radius}");
        Ok(l)
    }

    /// Uniform disc carrying the total force `resultant`.
    pub fn disc_with_resultant(resultant: f64, radius: f64) -> Result<Self> {
        Self::uniform_disc(resultant / (PI * radius * radius), radius)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn pressure(&self, r0: f64) -> f64 {
        if r0 <= self.radius {
            (self.pressure)(r0)
        } else {
            0.0
        }
    }

    /// `2 pi int_0^a0 p(r0) r0 dr0`.
    pub fn resultant(&self, spec: &QuadratureSpec) -> Result<f64> {
        let f = |r: f64| (self.pressure)(r) * r;
        Ok(2.0 * PI * integrate_adaptive(&f, 0.0, self.radius, spec)?.value)
    }
}

/// Relative tolerance of the two nested integrals.
const CONVOLUTION_REL_TOL: f64 = 1e-8;

/// `u3` at each of `eval_radii`, building the kernel table first.
pub fn settlement_profile(
    load: &AxisymmetricLoad,
    material: &Material,
    eval_radii: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    model::validate(material)?;
    let kernel = SettlementKernel::build(material.nu, spec)?;
    settlement_profile_with(&kernel, load, material, eval_radii, spec)
}

/// As [`settlement_profile`] with a prebuilt kernel for `material.nu`.
pub fn settlement_profile_with(
    kernel: &SettlementKernel,
    load: &AxisymmetricLoad,
    material: &Material,
    eval_radii: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    model::validate(material)?;
    if kernel.nu() != material.nu {
        return Err(Error::Domain(format!("kernel built for nu = {} used with nu = {}", kernel.nu(), material.nu)));
    }
    if let Some(&r) = eval_radii.iter().find(|r| !(**r >= 0.0) || !r.is_finite()) {
        return Err(Error::Domain(format!("evaluation radius must be finite and >= 0, got {r}")));
    }
    eval_radii.par_iter().map(|&r| settlement_at(kernel, load, material, r, spec)).collect()
}

fn settlement_at(
    kernel: &SettlementKernel,
    load: &AxisymmetricLoad,
    material: &Material,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let sc = material.c.sqrt();
    let outer_spec = QuadratureSpec { rel_tol: spec.rel_tol.max(CONVOLUTION_REL_TOL), abs_tol: 1e-300, ..*spec };
    let inner_spec = QuadratureSpec { rel_tol: outer_spec.rel_tol * 0.1, ..outer_spec };
    let failure = Cell::new(None);
    // int_0^2pi g(d) d phi, symmetric about phi = 0
    let outer = |r0: f64| {
        let ring = if r == 0.0 || r0 == 0.0 {
            2.0 * PI * kernel.u3_hat((r + r0) / sc)
        } else {
            let g = |phi: f64| {
                let d2 = (r * r + r0 * r0 - 2.0 * r * r0 * phi.cos()).max(0.0);
                kernel.u3_hat(d2.sqrt() / sc)
            };
            match integrate_adaptive(&g, 0.0, PI, &inner_spec) {
                Ok(q) => 2.0 * q.value,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            }
        };
        load.pressure(r0) * r0 * ring
    };
    let a0 = load.radius();
    let breaks: &[f64] = if r > 0.0 && r < a0 { &[0.0, r, a0] } else { &[0.0, a0] };
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += integrate_adaptive(&outer, w[0], w[1], &outer_spec)?.value;
    }
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(total / (2.0 * PI * material.mu * sc))
}
