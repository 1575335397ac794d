//! 7-point Gauss / 15-point Kronrod rule with the QUADPACK error heuristic.

/// Kronrod abscissae on [0, 1], descending; the odd-indexed ones are the
/// Gauss nodes, the last is the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One panel estimate.
#[derive(Debug, Clone, Copy)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
    /// First NaN abscissa encountered, if any.
    pub nan_at: Option<f64>,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Applies the G7K15 pair to `f` on `[a, b]`.
pub fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut nan_at = None;
    let mut eval = |x: f64| {
        let y = f(x);
        if y.is_nan() && nan_at.is_none() {
            nan_at = Some(x);
        }
        y
    };

    let f_center = eval(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx);
        let f2 = eval(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half.abs();
    let error = rescale_error((res_k - res_g) * half, res_abs * abs_half, res_asc * abs_half);
    Panel { a, b, value: res_k * half, error, nan_at }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_low_degree_polynomials() {
        let p = gk15(&|x: f64| 3.0 * x.powi(5) - x.powi(2) + 1.0, -1.0, 2.0);
        // 3/6 (64 - 1) - (8 + 1)/3 + 3
        let exact = 0.5 * 63.0 - 3.0 + 3.0;
        assert!((p.value - exact).abs() < 1e-13);
        assert!(p.error < 1e-12);
    }

    #[test]
    fn kronrod_weights_sum_to_one() {
        let s: f64 = WGK[..7].iter().sum::<f64>() * 2.0 + WGK[7];
        assert!((s - 2.0).abs() < 1e-15);
        let g: f64 = WG[..3].iter().sum::<f64>() * 2.0 + WG[3];
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reports_nan() {
        let p = gk15(&|x: f64| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0);
        assert!(p.nan_at.is_some());
    }
}
