//! Dense univariate polynomials and the classical Laguerre and Jacobi families.
//!
//! Coefficients are stored in ascending degree order. The zero polynomial has
//! no coefficients and reports degree `-1`, so that index conventions such as
//! `xi_{-1} = 0` compose without special cases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A real polynomial `c_0 + c_1 v + ... + c_d v^d`.
#[derive(Clone, Default, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(1.0)
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The identity polynomial `v`.
    pub fn identity() -> Self {
        Polynomial::new(vec![0.0, 1.0])
    }

    /// `a + b v`.
    pub fn linear(a: f64, b: f64) -> Self {
        Polynomial::new(vec![a, b])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, v: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * v + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `p(v) -> p(-v)`.
    pub fn reflect(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0.0);
                let b = other.coeffs.get(k).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }

    fn add_ref(&self, other: &Polynomial, sign: f64) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0)
                        + sign * other.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { '-' } else { '+' })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*v", c.abs())?,
                _ => write!(f, "{}*v^{}", c.abs(), k)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $body(self, rhs)
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                $body(&self, &rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Polynomial, b: &Polynomial| a.add_ref(b, 1.0));
forward_binop!(Sub, sub, |a: &Polynomial, b: &Polynomial| a
    .add_ref(b, -1.0));
forward_binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.mul_ref(b));

impl Mul<f64> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, s: f64) -> Polynomial {
        self.scale(s)
    }
}

impl Mul<f64> for Polynomial {
    type Output = Polynomial;
    fn mul(self, s: f64) -> Polynomial {
        self.scale(s)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

pub fn poly_add(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a + b
}

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a * b
}

pub fn poly_scale(a: &Polynomial, s: f64) -> Polynomial {
    a.scale(s)
}

pub fn poly_reflect(a: &Polynomial) -> Polynomial {
    a.reflect()
}

pub fn poly_eval(a: &Polynomial, v: f64) -> f64 {
    a.eval(v)
}

pub fn poly_derivative(a: &Polynomial) -> Polynomial {
    a.derivative()
}

/// Generalized Laguerre polynomial `L_n^(alpha)` from the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+alpha-v) L_k - (k+alpha) L_{k-1}`.
///
/// Any real `alpha` is accepted, including the negative values needed by the
/// second deformed oscillator.
pub fn laguerre(n: usize, alpha: f64) -> Polynomial {
    let mut prev = Polynomial::one();
    if n == 0 {
        return prev;
    }
    let mut cur = Polynomial::linear(1.0 + alpha, -1.0);
    for k in 1..n {
        let kf = k as f64;
        let factor = Polynomial::linear(2.0 * kf + 1.0 + alpha, -1.0);
        let next = (&factor * &cur - prev.scale(kf + alpha)).scale(1.0 / (kf + 1.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^(alpha, beta)` in the monomial basis, from the
/// standard three-term recurrence.
///
/// Returns [`Error::DegenerateRecurrence`] when `2(k+1)(k+alpha+beta+1)(2k+alpha+beta)`
/// vanishes for some intermediate step `k`.
pub fn jacobi(n: usize, alpha: f64, beta: f64) -> Result<Polynomial> {
    let mut prev = Polynomial::one();
    if n == 0 {
        return Ok(prev);
    }
    let s = alpha + beta;
    let mut cur = Polynomial::linear((alpha - beta) / 2.0, (s + 2.0) / 2.0);
    for k in 1..n {
        let kf = k as f64;
        let m = 2.0 * kf + s;
        let denom = 2.0 * (kf + 1.0) * (kf + s + 1.0) * m;
        let scale = 2.0 * (kf + 1.0) * (kf + s.abs() + 1.0) * (2.0 * kf + s.abs());
        if denom.abs() <= 64.0 * f64::EPSILON * scale {
            return Err(Error::DegenerateRecurrence {
                n,
                alpha,
                beta,
                step: k,
            });
        }
        let c1 = (m + 1.0) * (m + 2.0) * m / denom;
        let c0 = (m + 1.0) * (alpha * alpha - beta * beta) / denom;
        let cp = 2.0 * (kf + alpha) * (kf + beta) * (m + 2.0) / denom;
        let next = &Polynomial::linear(c0, c1) * &cur - prev.scale(cp);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Jacobi polynomial `P_n^(alpha, beta)` expanded about `v = 1`, i.e. the
/// returned coefficients are in the variable `t = v - 1`:
///
/// `P_n(1 + t) = sum_m (n+alpha+beta+1)_m (alpha+m+1)_{n-m} / (m! (n-m)!) (t/2)^m`.
///
/// This form stays well conditioned when `|beta|` is large and `t = O(1/beta)`,
/// where the monomial basis loses all precision to cancellation.
pub fn jacobi_about_one(n: usize, alpha: f64, beta: f64) -> Polynomial {
    let nf = n as f64;
    let coeffs = (0..=n)
        .map(|m| {
            let mf = m as f64;
            let mut c =
                pochhammer(nf + alpha + beta + 1.0, m) * pochhammer(alpha + mf + 1.0, n - m);
            c /= factorial(m) * factorial(n - m) * 2f64.powi(m as i32);
            c
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Rising factorial `(a)_k`.
pub(crate) fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Explicit series `sum_k (alpha+k+1)_{n-k}/(n-k)! (-x)^k / k!`.
    fn laguerre_series(n: usize, alpha: f64) -> Vec<f64> {
        (0..=n)
            .map(|k| {
                let binom = pochhammer(alpha + k as f64 + 1.0, n - k) / factorial(n - k);
                binom * if k % 2 == 0 { 1.0 } else { -1.0 } / factorial(k)
            })
            .collect()
    }

    /// Monomial coefficients of `sum_k binom(n+a, n-k) binom(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k)`.
    fn jacobi_series(n: usize, a: f64, b: f64) -> Vec<f64> {
        let mut out = vec![0.0; n + 1];
        let binom = |top: f64, k: usize| pochhammer(top - k as f64 + 1.0, k) / factorial(k);
        for k in 0..=n {
            let c = binom(n as f64 + a, n - k) * binom(n as f64 + b, k);
            // ((x-1)/2)^k ((x+1)/2)^(n-k)
            let mut term = vec![c];
            for _ in 0..k {
                term = mul_vec(&term, &[-0.5, 0.5]);
            }
            for _ in 0..(n - k) {
                term = mul_vec(&term, &[0.5, 0.5]);
            }
            for (o, t) in out.iter_mut().zip(term) {
                *o += t;
            }
        }
        out
    }

    fn mul_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn assert_coeffs_close(p: &Polynomial, expected: &[f64], tol: f64) {
        let q = Polynomial::new(expected.to_vec());
        let scale = q.max_abs_coeff().max(1.0);
        assert!(
            p.max_coeff_diff(&q) <= tol * scale,
            "{p:?} vs {q:?} (tol {tol})"
        );
    }

    #[test]
    fn laguerre_small_cases() {
        assert_eq!(laguerre(0, 1.7), Polynomial::one());
        assert_abs_diff_eq!(laguerre(1, 0.5).eval(2.0), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(laguerre(2, 0.0).eval(1.0), -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(laguerre(1, 0.5).eval(0.0), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_matches_series() {
        for &alpha in &[0.3, 1.5, 4.0, -3.2, -0.5, -7.5] {
            for n in 0..=10 {
                assert_coeffs_close(&laguerre(n, alpha), &laguerre_series(n, alpha), 1e-10);
                assert_eq!(laguerre(n, alpha).degree(), n as isize);
            }
        }
    }

    #[test]
    fn laguerre_ode() {
        for &alpha in &[0.3, 1.5, 4.0] {
            for n in 0..=10 {
                let y = laguerre(n, alpha);
                let dy = y.derivative();
                let d2y = dy.derivative();
                let scale = y.max_abs_coeff();
                for i in 0..20 {
                    let x = 0.1 + 0.6 * i as f64;
                    let r = x * d2y.eval(x) + (alpha + 1.0 - x) * dy.eval(x) + n as f64 * y.eval(x);
                    let mag = scale * (1.0 + x).powi(n as i32);
                    assert!(r.abs() < 1e-9 * mag, "n={n} alpha={alpha} x={x} r={r}");
                }
            }
        }
    }

    #[test]
    fn jacobi_small_cases() {
        assert_eq!(jacobi(0, 3.0, -2.0).unwrap(), Polynomial::one());
        assert_abs_diff_eq!(jacobi(1, 0.0, 0.0).unwrap().eval(0.3), 0.3, epsilon = 1e-15);
        // Legendre P_2 = (3x^2 - 1)/2
        assert_coeffs_close(&jacobi(2, 0.0, 0.0).unwrap(), &[-0.5, 0.0, 1.5], 1e-15);
    }

    #[test]
    fn jacobi_matches_series() {
        let params = [
            (0.3, 1.5),
            (1.5, 0.3),
            (-3.2, 2.5),
            (2.5, -3.2),
            (-4.5, 3.5),
            (0.5, 0.5),
        ];
        for &(a, b) in &params {
            for n in 0..=10 {
                let p = jacobi(n, a, b).unwrap();
                assert_coeffs_close(&p, &jacobi_series(n, a, b), 1e-10);
            }
        }
    }

    #[test]
    fn jacobi_parity() {
        let (n, a, b, x) = (3, 0.4, 1.1, 0.25);
        let lhs = jacobi(n, a, b).unwrap().eval(-x);
        let rhs = -jacobi(n, b, a).unwrap().eval(x);
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-14);
        for &a in &[0.3, 1.5] {
            for &b in &[0.3, 1.5] {
                for n in 0..=10 {
                    let lhs = jacobi(n, a, b).unwrap().reflect();
                    let rhs = jacobi(n, b, a)
                        .unwrap()
                        .scale(if n % 2 == 0 { 1.0 } else { -1.0 });
                    assert!(lhs.max_coeff_diff(&rhs) <= 1e-12 * rhs.max_abs_coeff().max(1.0));
                }
            }
        }
    }

    #[test]
    fn jacobi_degenerate_recurrence_is_reported() {
        // alpha + beta = -2 makes 2k + alpha + beta vanish at k = 1.
        let err = jacobi(3, -1.0, -1.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateRecurrence { step: 1, .. }));
    }

    #[test]
    fn about_one_expansion_agrees_with_monomial() {
        for &(a, b) in &[(0.3, 1.5), (-3.2, 2.5), (2.5, -5.7)] {
            for n in 0..=8 {
                let p = jacobi(n, a, b).unwrap();
                let q = jacobi_about_one(n, a, b);
                for i in 0..11 {
                    let v = -1.0 + 0.2 * i as f64;
                    let scale = p.max_abs_coeff().max(1.0) * 2f64.powi(n as i32);
                    assert!((p.eval(v) - q.eval(v - 1.0)).abs() < 1e-11 * scale);
                }
            }
        }
    }

    #[test]
    fn arithmetic_basics() {
        let one = Polynomial::one();
        assert_eq!(one.reflect(), one);
        assert_eq!(Polynomial::identity().reflect().eval(2.0), -2.0);
        let p = Polynomial::linear(1.0, 1.0) * Polynomial::linear(1.0, -1.0);
        assert_eq!(p, Polynomial::new(vec![1.0, 0.0, -1.0]));
        assert_eq!(p.derivative(), Polynomial::new(vec![0.0, -2.0]));
        assert_eq!(Polynomial::zero().eval(3.7), 0.0);
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!((&p - &p).degree(), -1);
        assert_eq!(Polynomial::constant(4.0).eval(1e300), 4.0);
        assert_eq!(Polynomial::new(vec![2.0, 0.0, 0.0]).degree(), 0);
    }
}
