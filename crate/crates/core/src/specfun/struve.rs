use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use super::modified::bessel_i0;
use crate::quadrature::gauss_kronrod::gk15;

const SERIES_MAX: f64 = 30.0;
const DIFF_SERIES_MAX: f64 = 1.0;
const DIFF_ASYMPTOTIC_MIN: f64 = 40.0;

/// Modified Struve function `L0(x)`.
pub fn struve_l0(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    if x == 0.0 {
        return 0.0;
    }
    s * if x <= SERIES_MAX { l0_series(x) } else { bessel_i0(x) - i0_minus_l0(x) }
}

fn l0_series(x: f64) -> f64 {
    // (x/2)^(2k+1) / Gamma(k + 3/2)^2
    let q = 0.25 * x * x;
    let mut term = FRAC_2_PI * x;
    let mut sum = term;
    for k in 0..200 {
        let d = k as f64 + 1.5;
        term *= q / (d * d);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// `I0(x) - L0(x)` for `x >= 0`, without the cancellation of the two
/// exponentially large parts. Decays like `2 / (pi x)`.
pub fn i0_minus_l0(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x <= DIFF_SERIES_MAX {
        bessel_i0(x) - l0_series(x)
    } else if x <= DIFF_ASYMPTOTIC_MIN {
        laplace_integral(x)
    } else {
        asymptotic(x)
    }
}

/// `(2/pi) int_0^{pi/2} exp(-x sin t) dt` on panels that double in width
/// away from the peak at `t = 0`.
fn laplace_integral(x: f64) -> f64 {
    let f = |t: f64| (-x * t.sin()).exp();
    let mut a = 0.0;
    let mut width = 1.0 / x;
    let mut sum: f64 = 0.0;
    while a < FRAC_PI_2 {
        let b = (a + width).min(FRAC_PI_2);
        sum += gk15(&f, a, b).value;
        a = b;
        width *= 2.0;
    }
    FRAC_2_PI * sum
}

/// `(2/pi) sum_k ((2k-1)!!)^2 / x^(2k+1)`, truncated at its smallest term.
fn asymptotic(x: f64) -> f64 {
    let inv2 = 1.0 / (x * x);
    let mut term = 1.0 / x;
    let mut sum: f64 = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        if term > prev || term < 1e-17 * sum {
            break;
        }
        sum += term;
        prev = term;
        let odd = (2 * k + 1) as f64;
        term *= odd * odd * inv2;
    }
    FRAC_2_PI * sum
}
