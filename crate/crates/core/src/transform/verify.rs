use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::operator::{determinant_roots_check, DeterminantReport};
use super::solution_coefficients;
use super::state::{ode_residual_of, BoundaryResiduals, TransformedState};
use crate::error::Result;
use crate::model::{self, Material, PointLoad};

/// Scales one coefficient of every sample before the checks, to show that
/// they detect a wrong solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    /// 0..3 for `A1..A3`, 3..6 for `B1..B3`.
    pub index: usize,
    pub rel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub material: Material,
    pub load: PointLoad,
    pub threshold: f64,
    pub perturbation: Option<Perturbation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 1,
            material: Material { mu: 1.0, nu: 0.3, c: 1.0 },
            load: PointLoad { p: 1.0 },
            threshold: 1e-10,
            perturbation: None,
        }
    }
}

/// Random `(p, q)` whose real and imaginary parts have log-uniform magnitude
/// in `[0.01, 10] / sqrt(c)` and random signs.
pub fn sample_pq<R: Rng>(rng: &mut R, c: f64) -> (Complex64, Complex64) {
    let scale = 1.0 / c.sqrt();
    let mut part = || {
        let m = 10f64.powf(rng.gen_range(-2.0..1.0)) * scale;
        if rng.gen::<bool>() {
            m
        } else {
            -m
        }
    };
    let p = Complex64::new(part(), part());
    let q = Complex64::new(part(), part());
    (p, q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub index: usize,
    pub p: Complex64,
    pub q: Complex64,
    /// Depth of the ODE and route checks.
    pub x3: f64,
    pub boundary: [f64; 6],
    pub boundary_worst: (&'static str, f64),
    pub ode: f64,
    pub route: f64,
    pub stress: f64,
    pub determinant: DeterminantReport,
}

impl SampleReport {
    /// Largest of the residuals, in units of the threshold.
    fn badness(&self, threshold: f64) -> f64 {
        let det = if self.determinant.passed() { 0.0 } else { f64::INFINITY };
        [self.boundary_worst.1, self.ode, self.route, self.stress].iter().map(|r| r / threshold).fold(det, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub config: VerifyConfig,
    pub samples: Vec<SampleReport>,
}

fn arg_max(values: impl Iterator<Item = f64>) -> (usize, f64) {
    values.enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc })
}

impl VerificationReport {
    pub fn max_boundary(&self) -> (usize, f64) {
        arg_max(self.samples.iter().map(|s| s.boundary_worst.1))
    }

    pub fn max_ode(&self) -> (usize, f64) {
        arg_max(self.samples.iter().map(|s| s.ode))
    }

    pub fn max_route(&self) -> (usize, f64) {
        arg_max(self.samples.iter().map(|s| s.route))
    }

    pub fn max_stress(&self) -> (usize, f64) {
        arg_max(self.samples.iter().map(|s| s.stress))
    }

    pub fn max_determinant_root(&self) -> f64 {
        self.samples.iter().map(|s| s.determinant.max_root_residual()).fold(0.0, f64::max)
    }

    pub fn min_determinant_non_root(&self) -> f64 {
        self.samples.iter().map(|s| s.determinant.min_non_root()).fold(f64::INFINITY, f64::min)
    }

    pub fn triple_roots(&self) -> usize {
        self.samples.iter().flat_map(|s| s.determinant.roots.iter()).filter(|r| r.multiplicity() == 3).count()
    }

    pub fn worst_sample(&self) -> Option<&SampleReport> {
        let (i, _) = arg_max(self.samples.iter().map(|s| s.badness(self.config.threshold)));
        self.samples.get(i)
    }

    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.badness(self.config.threshold) < 1.0)
    }

    /// Per-sample residuals as CSV, one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "sample,p_re,p_im,q_re,q_im,x3,res_p1,res_p2,res_p3,res_r1,res_r2,res_r3,ode,route,stress,det_root_max,det_non_root_min,triple\n",
        );
        for s in &self.samples {
            let mut row =
                vec![s.index.to_string(), fmt_e(s.p.re), fmt_e(s.p.im), fmt_e(s.q.re), fmt_e(s.q.im), fmt_e(s.x3)];
            row.extend(s.boundary.iter().map(|&v| fmt_e(v)));
            row.extend([s.ode, s.route, s.stress].iter().map(|&v| fmt_e(v)));
            row.push(fmt_e(s.determinant.max_root_residual()));
            row.push(fmt_e(s.determinant.min_non_root()));
            row.push(s.determinant.roots.iter().all(|r| r.multiplicity() == 3).to_string());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn fmt_e(v: f64) -> String {
    format!("{v:.6e}")
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.6e}{:+.6e}i", z.re, z.im)
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "transform-domain verification")?;
        writeln!(f, "material: mu={} nu={} c={}  load P={}", c.material.mu, c.material.nu, c.material.c, c.load.p)?;
        writeln!(f, "samples: {}  seed: {}  threshold: {:e}", c.samples, c.seed, c.threshold)?;
        if let Some(pert) = c.perturbation {
            writeln!(f, "perturbation: coefficient {} scaled by 1{:+e}", pert.index, pert.rel)?;
        }
        let (ib, b) = self.max_boundary();
        let label = self.samples.get(ib).map_or("-", |s| s.boundary_worst.0);
        writeln!(f, "max boundary residual: {b:.3e} (sample {ib}, {label})")?;
        let (io, o) = self.max_ode();
        writeln!(f, "max ODE residual: {o:.3e} (sample {io})")?;
        let (ir, r) = self.max_route();
        writeln!(f, "max displacement route mismatch: {r:.3e} (sample {ir})")?;
        let (is, s) = self.max_stress();
        writeln!(f, "max stress route mismatch: {s:.3e} (sample {is})")?;
        writeln!(
            f,
            "determinant: {}/{} triple roots, max root residual {:.3e}, min non-root value {:.3e}",
            self.triple_roots(),
            4 * self.samples.len(),
            self.max_determinant_root(),
            self.min_determinant_non_root()
        )?;
        if let Some(w) = self.worst_sample() {
            writeln!(f, "worst sample: {} p={} q={} x3={:.6e}", w.index, fmt_c(w.p), fmt_c(w.q), w.x3)?;
            if let Some((label, d)) = w.determinant.failure() {
                writeln!(f, "determinant check failed at d={} ({label})", fmt_c(d))?;
            }
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Draws the samples from `seed` and checks each one. Samples are evaluated
/// in parallel; the report does not depend on the thread count.
pub fn verify(config: &VerifyConfig) -> Result<VerificationReport> {
    model::validate(&config.material)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sqrt_c = config.material.c.sqrt();
    let draws: Vec<(Complex64, Complex64, f64)> = (0..config.samples)
        .map(|_| {
            let (p, q) = sample_pq(&mut rng, config.material.c);
            let x3 = rng.gen_range(0.0..3.0) * sqrt_c;
            (p, q, x3)
        })
        .collect();
    let samples = draws
        .par_iter()
        .enumerate()
        .map(|(index, &(p, q, x3))| -> Result<SampleReport> {
            let mut s = solution_coefficients(p, q, &config.material, &config.load)?;
            if let Some(pert) = config.perturbation {
                s = s.perturbed(pert.index, pert.rel)?;
            }
            let bc = BoundaryResiduals::of(&s);
            let state = TransformedState::new(&s, x3);
            let ode = ode_residual_of(&state.fields.u_closed, p, q, config.material.nu, config.material.c, x3);
            Ok(SampleReport {
                index,
                p,
                q,
                x3,
                boundary: bc.relative(),
                boundary_worst: bc.worst(),
                ode: ode.max_relative(),
                route: state.route_mismatch,
                stress: state.stress_mismatch,
                determinant: determinant_roots_check(p, q, config.material.nu, config.material.c)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { config: *config, samples })
}
