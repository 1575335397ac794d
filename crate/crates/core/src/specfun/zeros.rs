use std::f64::consts::PI;
use std::sync::OnceLock;

use super::bessel_j::{bessel_j0, bessel_j1};
use super::BesselOrder;

const CACHED: usize = 1024;

fn cache() -> &'static [Vec<f64>; 2] {
    static ZEROS: OnceLock<[Vec<f64>; 2]> = OnceLock::new();
    ZEROS.get_or_init(|| {
        [
            (1..=CACHED).map(|k| compute(BesselOrder::Zero, k)).collect(),
            (1..=CACHED).map(|k| compute(BesselOrder::One, k)).collect(),
        ]
    })
}

/// `k`-th positive zero (`k >= 1`) of `J0` or `J1`.
///
/// # Panics
/// If `k == 0`.
pub fn bessel_zero(order: BesselOrder, k: usize) -> f64 {
    assert!(k >= 1, "zeros are numbered from 1");
    if k <= CACHED {
        cache()[order.as_u8() as usize][k - 1]
    } else {
        compute(order, k)
    }
}

/// McMahon's expansion refined by Newton's method.
fn compute(order: BesselOrder, k: usize) -> f64 {
    let n = order.as_u8() as f64;
    let mu = 4.0 * n * n;
    let beta = (k as f64 + 0.5 * n - 0.25) * PI;
    let e = 8.0 * beta;
    let mut x = beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
    for _ in 0..20 {
        let (f, df) = match order {
            BesselOrder::Zero => (bessel_j0(x), -bessel_j1(x)),
            BesselOrder::One => {
                let j1 = bessel_j1(x);
                (j1, bessel_j0(x) - j1 / x)
            }
        };
        let step = f / df;
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    x
}
