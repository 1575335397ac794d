use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI};

const SERIES_MAX: f64 = 4.0;
const ASYMPTOTIC_MIN: f64 = 25.0;

/// `J0(x)`. Even in `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_MAX {
        series(0, x)
    } else if x < ASYMPTOTIC_MIN {
        miller(x).0
    } else {
        hankel(0, x)
    }
}

/// `J1(x)`. Odd in `x`.
pub fn bessel_j1(x: f64) -> f64 {
    let s = x.signum();
    let x = x.abs();
    let v = if x <= SERIES_MAX {
        series(1, x)
    } else if x < ASYMPTOTIC_MIN {
        miller(x).1
    } else {
        hankel(1, x)
    };
    if x == 0.0 {
        0.0
    } else {
        s * v
    }
}

fn series(n: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = if n == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    for k in 1..60 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence normalised by `J0 + 2 sum J_2k = 1`.
fn miller(x: f64) -> (f64, f64) {
    let start = 2 * ((x + 40.0 + 2.0 * x.sqrt()) as usize / 2);
    let mut jp1 = 0.0;
    let mut j = 1e-300;
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * j;
        }
        if k - 1 == 1 {
            j1 = j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += j;
    (j / norm, j1 / norm)
}

/// Hankel's asymptotic expansion, summed until the terms stop shrinking.
fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut p: f64 = 0.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60u32 {
        if term.abs() > prev || term.abs() < 1e-17 {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        prev = term.abs();
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let (s, c) = x.sin_cos();
    let (cos_chi, sin_chi) = if n == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    (FRAC_2_PI / x).sqrt() * (p * cos_chi - q * sin_chi)
}
