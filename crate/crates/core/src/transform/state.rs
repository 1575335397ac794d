use num_complex::Complex64;

use super::field::{Balance, ExpField};
use super::tracked::Tracked;
use super::{solution_coefficients, TransformSample};
use crate::error::Result;
use crate::model::{Material, PointLoad};

fn cx(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// The displacement and stress fields of one sample as functions of depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionFields {
    /// Displacements from the explicit closed forms.
    pub u_closed: [ExpField; 3],
    /// Displacements from the general solution with the coefficients.
    pub u_general: [ExpField; 3],
    /// Stresses from their explicit expressions in the coefficients.
    pub tau: [[ExpField; 3]; 3],
}

impl SolutionFields {
    pub fn new(s: &TransformSample) -> Self {
        Self { u_closed: closed_displacements(s), u_general: general_displacements(s), tau: explicit_stresses(s) }
    }
}

fn closed_displacements(s: &TransformSample) -> [ExpField; 3] {
    let (p, q) = (Tracked::exact(s.p), Tracked::exact(s.q));
    let (beta, gamma) = (Tracked::exact(s.beta), Tracked::exact(s.gamma));
    let (mu, nu, c, pl) = (s.material.mu, s.material.nu, s.material.c, s.load.p);
    let n = super::big_n(beta, gamma, nu, c);
    let c2 = c * c;
    let (b2, b3, g2) = (beta * beta, beta * beta * beta, gamma * gamma);
    let shared = 2.0 * c2 * b2 * g2 - nu + 1.0;
    let lead = 4.0 * nu * c2 * b3 * gamma + (1.0 - 2.0 * nu) * shared;
    let bmg = super::beta_minus_gamma(beta, gamma, c);
    let lin = 2.0 * c2 * b2 * gamma * bmg - 1.0 + nu;
    let f = |a, b, g| ExpField::tracked(beta, gamma, a, b, g);
    [
        f(
            -pl * p / (2.0 * mu * b2 * n) * lead,
            pl * p / (2.0 * mu * beta * n) * (1.0 - nu - 2.0 * c2 * b2 * gamma * bmg),
            pl * c * p / (mu * n) * (c * g2 - nu),
        ),
        f(
            -pl * q / (2.0 * mu * b2 * n) * lead,
            -pl * q / (2.0 * mu * beta * n) * lin,
            pl * c * q / (mu * n) * (c * g2 - nu),
        ),
        f(
            pl / (mu * beta * n) * ((3.0 - 2.0 * nu) * c2 * b3 * gamma - (1.0 - nu) * shared),
            pl / (2.0 * mu * n) * lin,
            -pl * c * b2 / (mu * gamma * n) * (c * b2 + nu),
        ),
    ]
}

fn general_displacements(s: &TransformSample) -> [ExpField; 3] {
    let (p, q) = (Tracked::exact(s.p), Tracked::exact(s.q));
    let (beta, gamma) = (Tracked::exact(s.beta), Tracked::exact(s.gamma));
    let nu = s.material.nu;
    let [a1, a2, a3, b1, b2, b3] = s.tracked_coefficients();
    let f = |a, b, g| ExpField::tracked(beta, gamma, a, b, g);
    [f((a1 * beta - a2 * q - a3 * (3.0 - 4.0 * nu)) / p, -a3 * p / beta, b1), f(a2, -a3 * q / beta, b2), f(a1, a3, b3)]
}

fn explicit_stresses(s: &TransformSample) -> [[ExpField; 3]; 3] {
    let (p, q) = (Tracked::exact(s.p), Tracked::exact(s.q));
    let (beta, gamma) = (Tracked::exact(s.beta), Tracked::exact(s.gamma));
    let (mu, nu) = (s.material.mu, s.material.nu);
    let [a1, a2, a3, b1, b2, b3] = s.tracked_coefficients();
    let k = 2.0 * mu / (1.0 - 2.0 * nu);
    let f = |a, b, g| ExpField::tracked(beta, gamma, a, b, g);
    let t11 = f(
        2.0 * mu * (a1 * beta - a2 * q - a3 * (3.0 - 2.0 * nu)),
        -2.0 * mu * a3 * p * p / beta,
        k * (b1 * (1.0 - nu) * p + b2 * nu * q - b3 * nu * gamma),
    );
    let t22 = f(
        2.0 * mu * (a2 * q - a3 * 2.0 * nu),
        -2.0 * mu * a3 * q * q / beta,
        k * (b1 * nu * p + b2 * (1.0 - nu) * q - b3 * nu * gamma),
    );
    let t12 = f(
        mu / p * (a1 * q * beta + a2 * (p * p - q * q) - a3 * (3.0 - 4.0 * nu) * q),
        -mu / p * a3 * 2.0 * p * p * q / beta,
        mu * (b1 * q + b2 * p),
    );
    let t33 = f(
        2.0 * mu * (-a1 * beta + a3 * (1.0 - 2.0 * nu)),
        -2.0 * mu * a3 * beta,
        k * (b1 * nu * p + b2 * nu * q - b3 * (1.0 - nu) * gamma),
    );
    let t31 = f(
        mu / p
            * (a1 * (2.0 * p * p + q * q) + a2 * q * beta
                - a3 / beta * (4.0 * (1.0 - nu) * p * p + (3.0 - 4.0 * nu) * q * q)),
        mu / p * a3 * 2.0 * p * p,
        -mu * (b1 * gamma - b3 * p),
    );
    let t32 = f(mu * (a1 * q - a2 * beta - a3 * q / beta), mu * a3 * q * 2.0, -mu * (b2 * gamma - b3 * q));
    [[t11, t12, t31], [t12, t22, t32], [t31, t32, t33]]
}

/// Stresses from the constitutive law applied to a displacement field.
pub(crate) fn constitutive_stresses(
    u: &[ExpField; 3],
    p: Complex64,
    q: Complex64,
    material: &Material,
) -> [[ExpField; 3]; 3] {
    let (mu, lambda) = (material.mu, material.lame_lambda());
    let du3 = u[2].derivative();
    let e = u[0] * p + u[1] * q + du3;
    let t11 = e * lambda + u[0] * (2.0 * mu * p);
    let t22 = e * lambda + u[1] * (2.0 * mu * q);
    let t33 = e * lambda + du3 * (2.0 * mu);
    let t12 = (u[0] * q + u[1] * p) * mu;
    let t31 = (u[2] * p + u[0].derivative()) * mu;
    let t32 = (u[2] * q + u[1].derivative()) * mu;
    [[t11, t12, t31], [t12, t22, t32], [t31, t32, t33]]
}

fn mismatch(x: &ExpField, y: &ExpField, x3: f64) -> f64 {
    let scale = x.magnitude(x3) + y.magnitude(x3);
    if scale == 0.0 {
        0.0
    } else {
        (x.eval(x3) - y.eval(x3)).norm() / scale
    }
}

/// All transformed quantities of one sample at depth `x3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedState {
    pub x3: f64,
    /// Displacements from the closed forms.
    pub u_star: [Complex64; 3],
    /// Displacements from the general solution with the coefficients.
    pub u_star_general: [Complex64; 3],
    /// `tau*_{kl}` from the explicit stress expressions.
    pub tau_star: [[Complex64; 3]; 3],
    /// `tau*_{kl}` from the constitutive law applied to `u_star`.
    pub tau_constitutive: [[Complex64; 3]; 3],
    /// `m*_{rkl} = c d_r tau*_{kl}` with `d_1 -> p`, `d_2 -> q`, `d_3 -> d/dx3`.
    pub m_star: [[[Complex64; 3]; 3]; 3],
    pub fields: SolutionFields,
    /// Largest relative difference between the two displacement routes.
    pub route_mismatch: f64,
    /// Largest relative difference between the two stress routes.
    pub stress_mismatch: f64,
}

impl TransformedState {
    pub fn new(s: &TransformSample, x3: f64) -> Self {
        let fields = SolutionFields::new(s);
        let c = s.material.c;
        let tau_c = constitutive_stresses(&fields.u_closed, s.p, s.q, &s.material);
        let ev3 = |f: &[ExpField; 3]| std::array::from_fn(|i| f[i].eval(x3));
        let ev33 = |t: &[[ExpField; 3]; 3]| std::array::from_fn(|i| std::array::from_fn(|j| t[i][j].eval(x3)));
        let tau_star: [[Complex64; 3]; 3] = ev33(&fields.tau);
        let dtau: [[Complex64; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| fields.tau[i][j].derivative().eval(x3)));
        let m_star = std::array::from_fn(|r| {
            std::array::from_fn(|k| {
                std::array::from_fn(|l| match r {
                    0 => c * s.p * tau_star[k][l],
                    1 => c * s.q * tau_star[k][l],
                    _ => c * dtau[k][l],
                })
            })
        });
        let mut route_mismatch: f64 = 0.0;
        for i in 0..3 {
            route_mismatch = route_mismatch.max(mismatch(&fields.u_closed[i], &fields.u_general[i], x3));
        }
        let mut stress_mismatch: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                stress_mismatch = stress_mismatch.max(mismatch(&fields.tau[i][j], &tau_c[i][j], x3));
            }
        }
        Self {
            x3,
            u_star: ev3(&fields.u_closed),
            u_star_general: ev3(&fields.u_general),
            tau_star,
            tau_constitutive: ev33(&tau_c),
            m_star,
            fields,
            route_mismatch,
            stress_mismatch,
        }
    }
}

/// State of the solution at `(p, q, x3)`.
pub fn transformed_state(
    p: Complex64,
    q: Complex64,
    x3: f64,
    material: &Material,
    load: &PointLoad,
) -> Result<TransformedState> {
    if !(x3 >= 0.0) || !x3.is_finite() {
        return Err(crate::Error::Domain(format!("x3 must be finite and >= 0, got {x3}")));
    }
    Ok(TransformedState::new(&solution_coefficients(p, q, material, load)?, x3))
}

pub const BOUNDARY_LABELS: [&str; 6] = ["P1", "P2", "P3+P", "R1", "R2", "R3"];

/// The transformed surface conditions, each with the size of its largest term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryResiduals {
    pub conditions: [Balance; 6],
}

impl BoundaryResiduals {
    pub fn of(s: &TransformSample) -> Self {
        let tau = explicit_stresses(s);
        let (p, q, c) = (s.p, s.q, s.material.c);
        let conditions = std::array::from_fn(|i| {
            let k = i % 3;
            if i < 3 {
                let b = Balance::new()
                    .term(cx(1.0), &tau[2][k], 0, 0.0)
                    .term(-c * p * p, &tau[2][k], 0, 0.0)
                    .term(-c * q * q, &tau[2][k], 0, 0.0)
                    .term(cx(-c), &tau[2][k], 2, 0.0)
                    .term(-c * p, &tau[0][k], 1, 0.0)
                    .term(-c * q, &tau[1][k], 1, 0.0);
                if k == 2 {
                    b.constant(cx(s.load.p))
                } else {
                    b
                }
            } else {
                Balance::new().term(cx(c), &tau[2][k], 1, 0.0)
            }
        });
        Self { conditions }
    }

    pub fn values(&self) -> [Complex64; 6] {
        std::array::from_fn(|i| self.conditions[i].sum)
    }

    pub fn relative(&self) -> [f64; 6] {
        std::array::from_fn(|i| self.conditions[i].relative())
    }

    /// `(label, relative residual)` of the worst condition.
    pub fn worst(&self) -> (&'static str, f64) {
        let rel = self.relative();
        let (i, v) =
            rel.iter().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        (BOUNDARY_LABELS[i], v)
    }
}

/// Boundary residuals `P1*, P2*, P3* + P, R1*, R2*, R3*` at `(p, q)`.
pub fn boundary_residuals(
    p: Complex64,
    q: Complex64,
    material: &Material,
    load: &PointLoad,
) -> Result<BoundaryResiduals> {
    Ok(BoundaryResiduals::of(&solution_coefficients(p, q, material, load)?))
}

/// The three transformed equilibrium equations at one depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeResiduals {
    pub equations: [Balance; 3],
}

impl OdeResiduals {
    pub fn values(&self) -> [Complex64; 3] {
        std::array::from_fn(|i| self.equations[i].sum)
    }

    pub fn relative(&self) -> [f64; 3] {
        std::array::from_fn(|i| self.equations[i].relative())
    }

    pub fn max_relative(&self) -> f64 {
        self.relative().into_iter().fold(0.0, f64::max)
    }
}

/// `(1 - c s - c d^2)[(s + d^2) u_k + (1 - 2nu)^-1 D_k e]` for a displacement
/// field, with `s = p^2 + q^2`, `D = (p, q, d)` and `e = p u1 + q u2 + d u3`.
pub fn ode_residual_of(u: &[ExpField; 3], p: Complex64, q: Complex64, nu: f64, c: f64, x3: f64) -> OdeResiduals {
    let s = p * p + q * q;
    let kappa = 1.0 / (1.0 - 2.0 * nu);
    // e as (factor, component, derivative order)
    let e = [(p, 0usize, 0usize), (q, 1, 0), (cx(1.0), 2, 1)];
    let equations = std::array::from_fn(|k| {
        let mut inner = vec![(s, k, 0usize), (cx(1.0), k, 2)];
        for &(f, j, n) in &e {
            match k {
                0 => inner.push((kappa * p * f, j, n)),
                1 => inner.push((kappa * q * f, j, n)),
                _ => inner.push((kappa * f, j, n + 1)),
            }
        }
        let mut b = Balance::new();
        for &(f, j, n) in &inner {
            b = b.term((1.0 - c * s) * f, &u[j], n, x3).term(-c * f, &u[j], n + 2, x3);
        }
        b
    });
    OdeResiduals { equations }
}

/// ODE residuals of the closed-form displacements at `(p, q, x3)`.
pub fn ode_residual(
    p: Complex64,
    q: Complex64,
    x3: f64,
    material: &Material,
    load: &PointLoad,
) -> Result<OdeResiduals> {
    let s = solution_coefficients(p, q, material, load)?;
    let u = closed_displacements(&s);
    Ok(ode_residual_of(&u, s.p, s.q, material.nu, material.c, x3))
}
