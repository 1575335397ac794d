//! Complex values carried together with a running magnitude: the sum of the
//! absolute values of everything that was combined to form them. Rounding
//! error in a computed value is a small multiple of `eps * m`, so residuals
//! divided by `m` are comparable across samples regardless of cancellation.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tracked {
    pub v: Complex64,
    pub m: f64,
}

impl Tracked {
    pub fn exact(v: Complex64) -> Self {
        Self { v, m: v.norm() }
    }

    pub fn real(x: f64) -> Self {
        Self::exact(Complex64::new(x, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    pub fn with_magnitude(v: Complex64, m: f64) -> Self {
        Self { v, m }
    }

    /// Multiplies by an exactly known factor such as an exponential.
    pub fn scale(self, k: Complex64) -> Self {
        Self { v: self.v * k, m: self.m * k.norm() }
    }
}

impl From<f64> for Tracked {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl From<Complex64> for Tracked {
    fn from(v: Complex64) -> Self {
        Self::exact(v)
    }
}

impl Add for Tracked {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { v: self.v + o.v, m: self.m + o.m }
    }
}

impl Sub for Tracked {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { v: self.v - o.v, m: self.m + o.m }
    }
}

impl Mul for Tracked {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { v: self.v * o.v, m: self.m * o.m }
    }
}

impl Div for Tracked {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.v.norm();
        Self { v: self.v / o.v, m: self.m / d + self.v.norm() * o.m / (d * d) }
    }
}

impl Neg for Tracked {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, m: self.m }
    }
}

macro_rules! mixed {
    ($t:ty) => {
        impl Add<$t> for Tracked {
            type Output = Tracked;
            fn add(self, o: $t) -> Tracked {
                self + Tracked::from(o)
            }
        }
        impl Sub<$t> for Tracked {
            type Output = Tracked;
            fn sub(self, o: $t) -> Tracked {
                self - Tracked::from(o)
            }
        }
        impl Mul<$t> for Tracked {
            type Output = Tracked;
            fn mul(self, o: $t) -> Tracked {
                self * Tracked::from(o)
            }
        }
        impl Div<$t> for Tracked {
            type Output = Tracked;
            fn div(self, o: $t) -> Tracked {
                self / Tracked::from(o)
            }
        }
        impl Add<Tracked> for $t {
            type Output = Tracked;
            fn add(self, o: Tracked) -> Tracked {
                Tracked::from(self) + o
            }
        }
        impl Sub<Tracked> for $t {
            type Output = Tracked;
            fn sub(self, o: Tracked) -> Tracked {
                Tracked::from(self) - o
            }
        }
        impl Mul<Tracked> for $t {
            type Output = Tracked;
            fn mul(self, o: Tracked) -> Tracked {
                Tracked::from(self) * o
            }
        }
        impl Div<Tracked> for $t {
            type Output = Tracked;
            fn div(self, o: Tracked) -> Tracked {
                Tracked::from(self) / o
            }
        }
    };
}

mixed!(f64);
mixed!(Complex64);
