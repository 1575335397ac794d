use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const I_SERIES_MAX: f64 = 30.0;
const K_SERIES_MAX: f64 = 2.0;

/// `I0(x)`; overflows to infinity past `x ~ 713`.
pub fn bessel_i0(x: f64) -> f64 {
    let x = x.abs();
    if x <= I_SERIES_MAX {
        i_series(0, x)
    } else {
        i_asymptotic(0, x)
    }
}

/// `I1(x)`.
pub fn bessel_i1(x: f64) -> f64 {
    let s = x.signum();
    let ax = x.abs();
    if ax == 0.0 {
        return 0.0;
    }
    s * if ax <= I_SERIES_MAX { i_series(1, ax) } else { i_asymptotic(1, ax) }
}

fn i_series(n: u32, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = if n == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

fn i_asymptotic(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut term: f64 = 1.0;
    let mut sum: f64 = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..80u32 {
        if term.abs() > prev || term.abs() < 1e-17 * sum.abs() {
            break;
        }
        sum += term;
        prev = term.abs();
        let odd = (2 * k + 1) as f64;
        term *= -(mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    // split the exponential so that exp(x) itself does not overflow early
    let half = (0.5 * x).exp();
    half * (half / (2.0 * PI * x).sqrt()) * sum
}

/// `K1(x) - 1/x`, which stays bounded (`~ (x/2) ln x`) as `x -> 0`.
pub fn k1_minus_inv(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("K1 needs x > 0, got {x}")));
    }
    if x <= K_SERIES_MAX {
        Ok(k1_regular_part(x))
    } else {
        Ok(k1_steed(x) - 1.0 / x)
    }
}

/// `K1(x)`; a domain error at the pole `x = 0`.
pub fn bessel_k1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("K1 has a pole at 0; need x > 0, got {x}")));
    }
    if x <= K_SERIES_MAX {
        Ok(1.0 / x + k1_regular_part(x))
    } else {
        Ok(k1_steed(x))
    }
}

/// `ln(x/2) I1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] (x^2/4)^k / (k! (k+1)!)`.
fn k1_regular_part(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut psi_a = -EULER_GAMMA; // psi(k+1)
    let mut psi_b = 1.0 - EULER_GAMMA; // psi(k+2)
    let mut t = 1.0; // (x^2/4)^k / (k! (k+1)!)
    let mut sum: f64 = 0.0;
    for k in 0..60 {
        let contrib = (psi_a + psi_b) * t;
        sum += contrib;
        if k > 0 && contrib.abs() < 1e-17 * sum.abs() {
            break;
        }
        let kf = k as f64;
        psi_a += 1.0 / (kf + 1.0);
        psi_b += 1.0 / (kf + 2.0);
        t *= q / ((kf + 1.0) * (kf + 2.0));
    }
    (0.5 * x).ln() * i_series(1, x) - 0.25 * x * sum
}

/// Steed's continued fraction (Temme's CF2) for `K0`, `K1`; valid for
/// `x >= 2`.
fn k1_steed(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    k0 * (x + 0.5 - h) / x
}
