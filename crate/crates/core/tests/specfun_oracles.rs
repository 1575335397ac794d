//! Special functions against independent oracles: a frozen mpmath table
//! (tests/oracle/gen_specfun_table.py) and integral representations evaluated
//! here with rules that converge geometrically.

mod common;

use std::f64::consts::PI;

use gradient_boussinesq::specfun::{
    bessel_i0, bessel_j, bessel_j0, bessel_j1, bessel_k1, bessel_zero, i0_minus_l0, k1_minus_inv, struve_l0,
    BesselOrder,
};

const TABLE: &str = include_str!("data/specfun_table.csv");

fn scaled_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

#[test]
fn frozen_table_agreement() {
    let rows = common::read_table(TABLE);
    assert_eq!(rows.len(), 100);
    let mut worst = [0.0f64; 6];
    for row in &rows {
        let x = row[0];
        let got = [bessel_j0(x), bessel_j1(x), bessel_i0(x), bessel_k1(x).unwrap(), struve_l0(x), i0_minus_l0(x)];
        for i in 0..6 {
            let e = scaled_err(got[i], row[i + 1]);
            worst[i] = worst[i].max(e);
            assert!(e <= 1e-10, "column {i} at x = {x}: {} vs {}", got[i], row[i + 1]);
        }
    }
    println!("worst scaled errors (J0 J1 I0 K1 L0 I0-L0): {worst:?}");
}

/// `J_n(x) = (1/2pi) int_0^{2pi} cos(n t - x sin t) dt`, periodic trapezoid.
fn j_trapezoid(n: i32, x: f64) -> f64 {
    let m = 512;
    let h = 2.0 * PI / m as f64;
    (0..m)
        .map(|k| {
            let t = k as f64 * h;
            (n as f64 * t - x * t.sin()).cos()
        })
        .sum::<f64>()
        / m as f64
}

/// `I0(x) = (1/2pi) int_0^{2pi} exp(x cos t) dt`.
fn i0_trapezoid(x: f64) -> f64 {
    let m = 512;
    let h = 2.0 * PI / m as f64;
    (0..m).map(|k| (x * (k as f64 * h).cos()).exp()).sum::<f64>() / m as f64
}

/// `K1(x) = int_0^inf exp(-x cosh t) cosh t dt`, trapezoid on the even
/// integrand.
fn k1_trapezoid(x: f64) -> f64 {
    let h = 0.01;
    let mut sum = 0.5 * (-x).exp();
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let v = (-x * t.cosh()).exp() * t.cosh();
        sum += v;
        if v < 1e-300 || x * t.cosh() > 800.0 {
            break;
        }
        k += 1;
    }
    sum * h
}

/// `L0(x) = (2/pi) int_0^{pi/2} sinh(x cos t) dt`.
fn l0_quadrature(x: f64) -> f64 {
    let nodes = common::gauss_legendre(40);
    2.0 / PI * common::composite_gl(|t| (x * t.cos()).sinh(), 0.0, PI / 2.0, 16, &nodes)
}

#[test]
fn integral_representation_oracles() {
    for x in common::log_grid() {
        let j0 = j_trapezoid(0, x);
        let j1 = j_trapezoid(1, x);
        assert!((bessel_j0(x) - j0).abs() < 1e-13, "J0({x})");
        assert!((bessel_j1(x) - j1).abs() < 1e-13, "J1({x})");
        assert!((bessel_j(BesselOrder::One, x) - j1).abs() < 1e-13);
        assert!(scaled_err(bessel_i0(x), i0_trapezoid(x)) < 1e-13, "I0({x})");
        let k1 = k1_trapezoid(x);
        assert!((bessel_k1(x).unwrap() - k1).abs() < 1e-12 * k1, "K1({x})");
        let l0 = l0_quadrature(x);
        assert!((struve_l0(x) - l0).abs() < 1e-12 * l0.max(1e-300), "L0({x})");
    }
}

#[test]
fn small_argument_asymptotics() {
    // K1 - 1/x = O(x ln x), L0 - 2x/pi = O(x^3), I0 - 1 = O(x^2)
    for k in 0..60 {
        let x = 0.1 * 10f64.powf(-(k as f64) / 10.0);
        let k1 = bessel_k1(x).unwrap();
        let reg = k1_minus_inv(x).unwrap();
        assert!(reg.abs() <= x * x.ln().abs(), "K1 at {x}");
        if x > 1e-4 {
            assert!((k1 - 1.0 / x - reg).abs() < 1e-10, "K1 split at {x}");
        }
        assert!((struve_l0(x) - 2.0 * x / PI).abs() <= 0.1 * x.powi(3) + 1e-300, "L0 at {x}");
        assert!((bessel_i0(x) - 1.0).abs() <= 0.3 * x * x, "I0 at {x}");
    }
}

#[test]
fn difference_decays_like_two_over_pi_x() {
    for &x in &[60.0, 100.0, 300.0, 700.0] {
        let v = i0_minus_l0(x);
        let lead = 2.0 / (PI * x);
        assert!((v / lead - 1.0).abs() < 2.0 / (x * x), "x = {x}");
    }
}

/// Ascending series for J0 and J1, used only to locate zeros below 10.
fn j_series(n: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut t = if n == 0 { 1.0 } else { 0.5 * x };
    let mut s = t;
    for k in 1..80 {
        t *= q / (k as f64 * (k + n) as f64);
        s += t;
    }
    s
}

fn series_zero(n: u32, mut x: f64) -> f64 {
    for _ in 0..50 {
        let h = 1e-6;
        let d = (j_series(n, x + h) - j_series(n, x - h)) / (2.0 * h);
        x -= j_series(n, x) / d;
    }
    x
}

#[test]
fn zeros_against_series_newton() {
    let z01 = series_zero(0, 2.4);
    let z11 = series_zero(1, 3.8);
    assert!((z01 - 2.404_825_557_7).abs() < 1e-9);
    assert!((z11 - 3.831_705_970_2).abs() < 1e-9);
    assert!((bessel_zero(BesselOrder::Zero, 1) - z01).abs() < 1e-9);
    assert!((bessel_zero(BesselOrder::One, 1) - z11).abs() < 1e-9);
    assert!((bessel_zero(BesselOrder::Zero, 2) - series_zero(0, 5.5)).abs() < 1e-9);
    assert!((bessel_zero(BesselOrder::One, 2) - series_zero(1, 7.0)).abs() < 1e-9);
    assert!((bessel_zero(BesselOrder::Zero, 3) - series_zero(0, 8.65)).abs() < 1e-9);
}

#[test]
fn zeros_increase_and_vanish() {
    for order in [BesselOrder::Zero, BesselOrder::One] {
        let mut prev = 0.0;
        for k in 1..=300 {
            let z = bessel_zero(order, k);
            assert!(z > prev);
            assert!(bessel_j(order, z).abs() < 1e-13, "{order:?} zero {k}");
            if k > 1 {
                assert!((z - prev - PI).abs() < 0.2);
            }
            prev = z;
        }
    }
}
