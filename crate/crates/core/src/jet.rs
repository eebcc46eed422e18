//! Truncated Taylor series ("jets") for exact derivatives of closed-form
//! dispersion expressions.
//!
//! A `Jet<N>` stores `c[k] = f^(k)(p0) / k!` for `k < N`. Arithmetic follows
//! the usual power-series recurrences, so derivatives of compositions of
//! `+ - * /`, `sqrt`, `sin` and `cos` come out to rounding accuracy.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self { c }
    }

    /// The independent variable evaluated at `p0`.
    pub fn variable(p0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = p0;
        if N > 1 {
            c[1] = 1.0;
        }
        Self { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    pub fn scale(mut self, s: f64) -> Self {
        for v in &mut self.c {
            *v *= s;
        }
        self
    }

    pub fn sqrt(&self) -> Self {
        let a = &self.c;
        let mut b = [0.0; N];
        b[0] = a[0].sqrt();
        for k in 1..N {
            let mut s = a[k];
            for j in 1..k {
                s -= b[j] * b[k - j];
            }
            b[k] = s / (2.0 * b[0]);
        }
        Self { c: b }
    }

    /// Returns `(sin(self), cos(self))`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.c;
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        (s[0], c[0]) = a[0].sin_cos();
        for k in 1..N {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let w = j as f64 * a[j];
                ds += w * c[k - j];
                dc -= w * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = dc / k as f64;
        }
        (Self { c: s }, Self { c })
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for k in 0..N {
            self.c[k] += rhs.c[k];
        }
        self
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for k in 0..N {
            self.c[k] -= rhs.c[k];
        }
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.c[0] += rhs;
        self
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut c = [0.0; N];
        for (i, a) in self.c.iter().enumerate() {
            for j in 0..N - i {
                c[i + j] += a * rhs.c[j];
            }
        }
        Self { c }
    }
}

impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let b = &rhs.c;
        let mut q = [0.0; N];
        for k in 0..N {
            let mut s = self.c[k];
            for j in 1..=k {
                s -= b[j] * q[k - j];
            }
            q[k] = s / b[0];
        }
        Self { c: q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type J = Jet<5>;

    #[test]
    fn polynomial_derivatives_are_exact() {
        let x = J::variable(1.5);
        let f = x * x * x + x * 2.0; // x^3 + 2x
        assert!((f.value() - (3.375 + 3.0)).abs() < 1e-14);
        assert!((f.derivative(1) - (3.0 * 2.25 + 2.0)).abs() < 1e-14);
        assert!((f.derivative(2) - 9.0).abs() < 1e-14);
        assert!((f.derivative(3) - 6.0).abs() < 1e-14);
        assert!(f.derivative(4).abs() < 1e-14);
    }

    #[test]
    fn transcendental_derivatives() {
        let p0 = 0.7_f64;
        let x = J::variable(p0);
        let (s, c) = x.sin_cos();
        assert!((s.derivative(3) + p0.cos()).abs() < 1e-14);
        assert!((c.derivative(4) - p0.cos()).abs() < 1e-14);

        let r = (x * x + 1.0).sqrt();
        let exact2 = 1.0 / (p0 * p0 + 1.0).powf(1.5);
        assert!((r.derivative(2) - exact2).abs() < 1e-14);

        let q = J::constant(1.0) / x;
        assert!((q.derivative(3) + 6.0 / p0.powi(4)).abs() < 1e-12);
    }
}
