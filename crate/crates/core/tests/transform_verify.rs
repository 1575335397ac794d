use num_complex::Complex64;

use gradient_boussinesq::model::{Material, PointLoad};
use gradient_boussinesq::transform::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn material() -> Material {
    Material::new(1.0, 0.3, 1.0).unwrap()
}

fn unit_load() -> PointLoad {
    PointLoad::new(1.0).unwrap()
}

#[test]
fn default_sweep_certifies_solution() {
    let report = verify(&VerifyConfig::default()).unwrap();
    println!("{report}");
    assert!(report.passed());
    assert!(report.max_boundary().1 < 1e-10);
    assert!(report.max_ode().1 < 1e-10);
    assert!(report.max_route().1 < 1e-12);
    assert_eq!(report.triple_roots(), 400);
    assert!(report.max_determinant_root() < 1e-10);
}

#[test]
fn several_materials_and_seeds() {
    for (nu, cc, seed) in [(0.0, 0.01, 2), (0.45, 50.0, 3), (-0.3, 1e-4, 4), (0.49, 1e4, 5)] {
        let cfg = VerifyConfig {
            samples: 300,
            seed,
            material: Material::new(2.5, nu, cc).unwrap(),
            load: PointLoad::new(-3.0).unwrap(),
            ..VerifyConfig::default()
        };
        let r = verify(&cfg).unwrap();
        assert!(r.passed(), "nu={nu} c={cc}\n{r}");
    }
}

#[test]
fn report_is_reproducible() {
    let cfg = VerifyConfig { samples: 50, seed: 42, ..VerifyConfig::default() };
    let a = verify(&cfg).unwrap();
    let b = verify(&cfg).unwrap();
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(a.to_csv(), b.to_csv());
    let other = verify(&VerifyConfig { seed: 43, ..cfg }).unwrap();
    assert_ne!(a.to_csv(), other.to_csv());
}

#[test]
fn perturbed_coefficients_are_detected() {
    for index in 0..6 {
        let cfg = VerifyConfig { perturbation: Some(Perturbation { index, rel: 1e-6 }), ..VerifyConfig::default() };
        let r = verify(&cfg).unwrap();
        let weakest = r.samples.iter().map(|s| s.boundary_worst.1).fold(f64::INFINITY, f64::min);
        let (_, strongest) = r.max_boundary();
        println!("coefficient {index}: boundary residual {strongest:.2e} (smallest per sample {weakest:.2e})");
        assert!(strongest >= 1e-8, "coefficient {index}: {strongest:e}");
        // every sample moves well above the rounding level of ~1e-16, though a
        // coefficient that is small at a given (p, q) moves it less
        assert!(weakest > 1e-13, "coefficient {index}: {weakest:e}");
        assert!(!r.passed());
        let text = r.to_string();
        assert!(text.contains("result: FAIL") && text.contains("worst sample:"));
    }
}

#[test]
fn boundary_residuals_linear_in_load() {
    let (p, q) = (c(0.3, -1.2), c(2.0, 0.4));
    let m = material();
    let s1 = solution_coefficients(p, q, &m, &unit_load()).unwrap().perturbed(2, 1e-3).unwrap();
    let s5 = solution_coefficients(p, q, &m, &PointLoad::new(5.0).unwrap()).unwrap().perturbed(2, 1e-3).unwrap();
    let r1 = BoundaryResiduals::of(&s1).values();
    let r5 = BoundaryResiduals::of(&s5).values();
    for (a, b) in r1.iter().zip(r5) {
        assert!((5.0 * a - b).norm() <= 1e-9 * b.norm().max(1e-300));
    }
    let exact = boundary_residuals(p, q, &m, &unit_load()).unwrap();
    assert!(exact.relative().iter().all(|&r| r < 1e-14));
}

#[test]
fn displacement_routes_and_dipolar_stresses() {
    let m = Material::new(1.7, 0.22, 0.3).unwrap();
    let (p, q) = (c(-0.8, 0.5), c(1.1, 2.3));
    let st = transformed_state(p, q, 0.4, &m, &unit_load()).unwrap();
    for k in 0..3 {
        let (x, y) = (st.u_star[k], st.u_star_general[k]);
        assert!((x - y).norm() <= 1e-12 * x.norm().max(y.norm()));
        assert_eq!(st.m_star[0][2][k], 0.3 * p * st.tau_star[2][k]);
        assert_eq!(st.m_star[1][2][k], 0.3 * q * st.tau_star[2][k]);
        for l in 0..3 {
            let (a, b) = (st.tau_star[k][l], st.tau_constitutive[k][l]);
            assert!((a - b).norm() <= 1e-11 * a.norm().max(b.norm()), "tau{k}{l}: {a} vs {b}");
        }
    }
    assert!(st.route_mismatch < 1e-14 && st.stress_mismatch < 1e-14);
    assert!(transformed_state(p, q, -1.0, &m, &unit_load()).is_err());
}

#[test]
fn fields_decay_with_depth() {
    let m = material();
    for (p, q) in [(c(0.3, -1.2), c(2.0, 0.4)), (c(0.05, 0.02), c(-0.01, 0.07))] {
        let s = solution_coefficients(p, q, &m, &unit_load()).unwrap();
        let surface = TransformedState::new(&s, 0.0);
        let deep = TransformedState::new(&s, 50.0 / s.beta.re);
        let top = surface.u_star.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let bottom = deep.u_star.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(bottom <= 1e-15 * top, "{bottom} vs {top}");
        let tb = deep.tau_star.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        let tt = surface.tau_star.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(tb <= 1e-15 * tt);
    }
}

#[test]
fn ode_residual_examples() {
    let m = material();
    let zero = [ExpField::zero(c(1.0, 0.0), c(2.0, 0.0)); 3];
    let r = ode_residual_of(&zero, c(0.3, 0.0), c(0.1, 0.2), 0.3, 1.0, 0.5);
    assert!(r.values().iter().all(|z| z.norm() == 0.0));
    let r = ode_residual(c(0.3, -1.2), c(2.0, 0.4), 0.7, &m, &unit_load()).unwrap();
    assert!(r.max_relative() < 1e-10);
    // strongly gradient-dominated material: a = 1/sqrt(c) is tiny
    let big_c = Material::new(1.0, 0.3, 1e6).unwrap();
    let r = ode_residual(c(2e-3, 1e-3), c(-1e-3, 4e-3), 300.0, &big_c, &unit_load()).unwrap();
    assert!(r.max_relative() < 1e-10);
}

#[test]
fn determinant_examples() {
    let (p, q, nu, cc) = (c(0.3, -1.2), c(2.0, 0.4), 0.3, 1.0);
    let rep = determinant_roots_check(p, q, nu, cc).unwrap();
    assert!(rep.passed(), "{rep:?}");
    for root in &rep.roots {
        assert!(root.relative[0] < 1e-10, "{root:?}");
        assert_eq!(root.multiplicity(), 3);
    }
    assert!(rep.beta_plus_gamma.relative[0] > 1e-3);
    assert!(rep.generic.relative[0] > 1e-3);
    // substitution of the root factors
    let (beta, gamma) = branches(p, q, cc);
    for d in [beta, -beta, gamma, -gamma] {
        let s = d * d + p * p + q * q;
        assert!((s * (1.0 - cc * s)).norm() < 1e-14 * (1.0 + (d * d).norm()).powi(2));
    }
}

#[test]
fn degenerate_sample_rejected() {
    let m = material();
    // p^2 + q^2 = 0 makes beta vanish
    assert!(solution_coefficients(c(1.0, 0.0), c(0.0, 1.0), &m, &unit_load()).is_err());
    assert!(determinant_roots_check(c(1.0, 0.0), c(0.0, 1.0), 0.3, 1.0).is_err());
}
