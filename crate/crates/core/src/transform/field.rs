use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::tracked::Tracked;

/// A transformed field `(a + b x3) exp(-beta x3) + g exp(-gamma x3)`.
/// Closed under `d/dx3`, which is applied exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpField {
    pub beta: Tracked,
    pub gamma: Tracked,
    pub a: Tracked,
    pub b: Tracked,
    pub g: Tracked,
}

fn tr_pow(z: Tracked, k: usize) -> Tracked {
    (0..k).fold(Tracked::real(1.0), |acc, _| acc * z)
}

impl ExpField {
    pub fn zero(beta: Complex64, gamma: Complex64) -> Self {
        let z = Tracked::zero();
        Self { beta: beta.into(), gamma: gamma.into(), a: z, b: z, g: z }
    }

    pub fn new(beta: Complex64, gamma: Complex64, a: Complex64, b: Complex64, g: Complex64) -> Self {
        Self { beta: beta.into(), gamma: gamma.into(), a: a.into(), b: b.into(), g: g.into() }
    }

    pub fn tracked(beta: Tracked, gamma: Tracked, a: Tracked, b: Tracked, g: Tracked) -> Self {
        Self { beta, gamma, a, b, g }
    }

    pub fn derivative(&self) -> Self {
        Self { a: self.b - self.beta * self.a, b: -self.beta * self.b, g: -self.gamma * self.g, ..*self }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(*self, |f, _| f.derivative())
    }

    /// The separate terms of the `n`-th derivative at `x3`, before any of
    /// them are combined.
    pub fn derivative_parts(&self, n: usize, x3: f64) -> [Tracked; 4] {
        let eb = (-self.beta.v * x3).exp();
        let eg = (-self.gamma.v * x3).exp();
        let mb = -self.beta;
        let cross = if n == 0 { Tracked::zero() } else { (n as f64) * tr_pow(mb, n - 1) * self.b };
        [
            (tr_pow(mb, n) * self.a).scale(eb),
            (tr_pow(mb, n) * self.b * x3).scale(eb),
            cross.scale(eb),
            (tr_pow(-self.gamma, n) * self.g).scale(eg),
        ]
    }

    pub fn eval(&self, x3: f64) -> Complex64 {
        self.derivative_parts(0, x3).iter().map(|t| t.v).sum()
    }

    /// Total magnitude of the terms at `x3`.
    pub fn magnitude(&self, x3: f64) -> f64 {
        self.derivative_parts(0, x3).iter().map(|t| t.m).sum()
    }
}

impl Add for ExpField {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a: self.a + o.a, b: self.b + o.b, g: self.g + o.g, ..self }
    }
}

impl Sub for ExpField {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { a: self.a - o.a, b: self.b - o.b, g: self.g - o.g, ..self }
    }
}

impl Neg for ExpField {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, g: -self.g, ..self }
    }
}

impl Mul<Tracked> for ExpField {
    type Output = Self;
    fn mul(self, k: Tracked) -> Self {
        Self { a: self.a * k, b: self.b * k, g: self.g * k, ..self }
    }
}

impl Mul<Complex64> for ExpField {
    type Output = Self;
    fn mul(self, k: Complex64) -> Self {
        self * Tracked::from(k)
    }
}

impl Mul<f64> for ExpField {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self * Tracked::from(k)
    }
}

/// A sum of terms with the total magnitude that went into it, so a vanishing
/// sum can be judged against the size of what cancelled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Balance {
    pub sum: Complex64,
    pub scale: f64,
}

impl Balance {
    pub fn new() -> Self {
        Self { sum: Complex64::new(0.0, 0.0), scale: 0.0 }
    }

    /// Adds `factor * d^n f / dx3^n` term by term.
    pub fn term(mut self, factor: Complex64, f: &ExpField, n: usize, x3: f64) -> Self {
        for part in f.derivative_parts(n, x3) {
            let t = part * factor;
            self.sum += t.v;
            self.scale += t.m;
        }
        self
    }

    pub fn constant(mut self, v: Complex64) -> Self {
        self.sum += v;
        self.scale += v.norm();
        self
    }

    /// `|sum| / scale`, or `|sum|` when nothing was added.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.sum.norm()
        } else {
            self.sum.norm() / self.scale
        }
    }
}

impl Default for Balance {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = ExpField::new(c(1.3, 0.4), c(2.1, -0.7), c(0.5, 1.0), c(-0.3, 0.2), c(1.5, -0.5));
        let x = 0.37;
        let h = 1e-5;
        let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
        assert!((fd - f.derivative().eval(x)).norm() < 1e-9);
        let fd2 = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
        assert!((fd2 - f.nth_derivative(2).eval(x)).norm() < 1e-4);
    }

    #[test]
    fn derivative_parts_sum_to_derivative() {
        let f = ExpField::new(c(1.3, 0.4), c(2.1, -0.7), c(0.5, 1.0), c(-0.3, 0.2), c(1.5, -0.5));
        for n in 0..5 {
            let s: Complex64 = f.derivative_parts(n, 0.8).iter().map(|t| t.v).sum();
            let d = f.nth_derivative(n).eval(0.8);
            assert!((s - d).norm() < 1e-13 * (1.0 + d.norm()));
        }
    }

    #[test]
    fn balance_relative() {
        let f = ExpField::new(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let b = Balance::new().term(c(1.0, 0.0), &f, 0, 0.0).constant(c(-1.0, 0.0));
        assert_eq!(b.relative(), 0.0);
        assert_eq!(b.scale, 2.0);
        assert_eq!(Balance::new().relative(), 0.0);
    }
}
