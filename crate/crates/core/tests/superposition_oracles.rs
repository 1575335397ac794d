use std::sync::OnceLock;

use gradient_boussinesq::model::Material;
use gradient_boussinesq::quadrature::QuadratureSpec;
use gradient_boussinesq::superposition::*;
use gradient_boussinesq::surface::u3_hat;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn kernel_03() -> &'static SettlementKernel {
    static K: OnceLock<SettlementKernel> = OnceLock::new();
    K.get_or_init(|| SettlementKernel::build(0.3, &spec()).unwrap())
}

fn material(c: f64) -> Material {
    Material::new(1.0, 0.3, c).unwrap()
}

#[test]
fn table_matches_direct_quadrature() {
    let k = kernel_03();
    let mut worst: f64 = 0.0;
    for i in 0..60 {
        // offsets chosen to fall between nodes
        let r = 10f64.powf(-4.3 + 0.1237 * i as f64);
        let direct = u3_hat(r, 0.3, &spec()).unwrap();
        worst = worst.max((k.u3_hat(r) - direct).abs() / direct.abs());
    }
    for r in [0.0, 5e-5, 1500.0, 1e4] {
        let direct = u3_hat(r, 0.3, &spec()).unwrap();
        worst = worst.max((k.u3_hat(r) - direct).abs() / direct.abs());
    }
    assert!(worst < 1e-5, "worst table error {worst:e}");
}

#[test]
fn zero_pressure_gives_zero() {
    let load = AxisymmetricLoad::new(|_| 0.0, 2.0).unwrap();
    let u = settlement_profile_with(kernel_03(), &load, &material(1.0), &[0.0, 1.0, 5.0], &spec()).unwrap();
    assert!(u.iter().all(|v| *v == 0.0), "{u:?}");
}

#[test]
fn wide_disc_center_matches_classical() {
    for c in [1.0, 0.25] {
        let m = material(c);
        let a0 = 100.0 * c.sqrt();
        let load = AxisymmetricLoad::uniform_disc(2.0, a0).unwrap();
        let u = settlement_profile_with(kernel_03(), &load, &m, &[0.0], &spec()).unwrap()[0];
        let classical = (1.0 - m.nu) * 2.0 * a0 / m.mu;
        assert!((u / classical - 1.0).abs() < 0.02, "c = {c}: {u} vs {classical}");
    }
}

#[test]
fn small_disc_recovers_point_load() {
    for c in [1.0, 4.0] {
        let m = material(c);
        let sc = c.sqrt();
        let load = AxisymmetricLoad::disc_with_resultant(3.0, 0.01 * sc).unwrap();
        let p = load.resultant(&spec()).unwrap();
        assert!((p - 3.0).abs() < 1e-12);
        let radii: Vec<f64> = [10.0, 20.0, 50.0].iter().map(|x| x * sc).collect();
        let u = settlement_profile_with(kernel_03(), &load, &m, &radii, &spec()).unwrap();
        for (r, v) in radii.iter().zip(&u) {
            let point = p / (2.0 * std::f64::consts::PI * m.mu * sc) * u3_hat(r / sc, 0.3, &spec()).unwrap();
            assert!((v / point - 1.0).abs() < 0.01, "c = {c}, r = {r}: {v} vs {point}");
        }
    }
}

#[test]
fn linear_in_pressure() {
    let m = material(1.0);
    let a = AxisymmetricLoad::new(|r| 1.0 + r, 3.0).unwrap();
    let b = AxisymmetricLoad::new(|r| 2.0 - 0.5 * r * r, 3.0).unwrap();
    let sum = AxisymmetricLoad::new(|r| 2.0 * (1.0 + r) - 3.0 * (2.0 - 0.5 * r * r), 3.0).unwrap();
    let radii = [0.0, 1.5, 3.0, 7.0];
    let ua = settlement_profile_with(kernel_03(), &a, &m, &radii, &spec()).unwrap();
    let ub = settlement_profile_with(kernel_03(), &b, &m, &radii, &spec()).unwrap();
    let us = settlement_profile_with(kernel_03(), &sum, &m, &radii, &spec()).unwrap();
    for i in 0..radii.len() {
        let expect = 2.0 * ua[i] - 3.0 * ub[i];
        let scale = ua[i].abs() + ub[i].abs();
        assert!((us[i] - expect).abs() < 1e-7 * scale, "r = {}: {} vs {expect}", radii[i], us[i]);
    }
}

#[test]
fn spreading_a_fixed_force_lowers_center_settlement() {
    let m = material(1.0);
    let u: Vec<f64> = [0.5, 2.0, 8.0]
        .iter()
        .map(|&a0| {
            let load = AxisymmetricLoad::disc_with_resultant(1.0, a0).unwrap();
            settlement_profile_with(kernel_03(), &load, &m, &[0.0], &spec()).unwrap()[0]
        })
        .collect();
    assert!(u[0] > u[1] && u[1] > u[2], "{u:?}");
}

#[test]
fn shrinking_disc_at_fixed_force_stays_finite() {
    let m = material(1.0);
    let mut prev = None;
    for a0 in [1e-1, 1e-2, 1e-3, 1e-4] {
        let load = AxisymmetricLoad::disc_with_resultant(1.0, a0).unwrap();
        let u = settlement_profile_with(kernel_03(), &load, &m, &[0.0], &spec()).unwrap()[0];
        assert!(u.is_finite() && u > 0.0);
        if let Some(p) = prev {
            assert!(u >= p, "center settlement should rise as the load concentrates");
        }
        prev = Some(u);
    }
    let limit = u3_hat(0.0, 0.3, &spec()).unwrap() / (2.0 * std::f64::consts::PI);
    assert!((prev.unwrap() / limit - 1.0).abs() < 1e-3, "{} vs {limit}", prev.unwrap());
}

#[test]
fn settlement_profile_builds_its_own_kernel() {
    let m = Material::new(2.0, 0.2, 1.0).unwrap();
    let load = AxisymmetricLoad::uniform_disc(1.0, 1.0).unwrap();
    let u = settlement_profile(&load, &m, &[0.0, 2.0], &spec()).unwrap();
    assert!(u[0] > u[1] && u[1] > 0.0);
}

#[test]
fn rejects_mismatched_kernel_and_bad_radii() {
    let load = AxisymmetricLoad::uniform_disc(1.0, 1.0).unwrap();
    let m = Material::new(1.0, 0.2, 1.0).unwrap();
    assert!(settlement_profile_with(kernel_03(), &load, &m, &[0.0], &spec()).is_err());
    assert!(settlement_profile_with(kernel_03(), &load, &material(1.0), &[-1.0], &spec()).is_err());
    assert!(AxisymmetricLoad::uniform_disc(1.0, 0.0).is_err());
}
