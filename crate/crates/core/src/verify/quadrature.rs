//! Gauss rules for the generalized Laguerre and Jacobi weights via
//! Golub-Welsch: the nodes are the eigenvalues of the Jacobi matrix of the
//! monic recurrence and the weights are `mu_0` times the squared first
//! components of its normalized eigenvectors.

use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightKind {
    /// `x^alpha e^{-x}` on `(0, inf)`.
    Laguerre { alpha: f64 },
    /// `(1-x)^alpha (1+x)^beta` on `(-1, 1)`.
    Jacobi { alpha: f64, beta: f64 },
}

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub kind: WeightKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `sum_i w_i f(x_i)`, approximating `int weight(x) f(x) dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `N`-point Gauss rule for the given base weight.
pub fn gauss_rule(kind: WeightKind, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::InvalidWeightParams(
            "rule order must be at least 1".into(),
        ));
    }
    let (mut diag, mut off, mu0) = match kind {
        WeightKind::Laguerre { alpha } => {
            if !(alpha > -1.0) || !alpha.is_finite() {
                return Err(Error::InvalidWeightParams(format!(
                    "alpha = {alpha} must exceed -1"
                )));
            }
            let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
            let off: Vec<f64> = (1..order)
                .map(|k| (k as f64 * (k as f64 + alpha)).sqrt())
                .chain(std::iter::once(0.0))
                .collect();
            (diag, off, gamma(alpha + 1.0))
        }
        WeightKind::Jacobi { alpha, beta } => {
            if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
                return Err(Error::InvalidWeightParams(format!(
                    "alpha = {alpha}, beta = {beta} must both exceed -1"
                )));
            }
            let s = alpha + beta;
            let diag: Vec<f64> = (0..order)
                .map(|k| {
                    if k == 0 {
                        (beta - alpha) / (s + 2.0)
                    } else {
                        let m = 2.0 * k as f64 + s;
                        (beta * beta - alpha * alpha) / (m * (m + 2.0))
                    }
                })
                .collect();
            let off: Vec<f64> = (1..order)
                .map(|k| {
                    let kf = k as f64;
                    let b = if k == 1 {
                        4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s).powi(2) * (3.0 + s))
                    } else {
                        let m = 2.0 * kf + s;
                        4.0 * kf * (kf + alpha) * (kf + beta) * (kf + s)
                            / (m * m * (m + 1.0) * (m - 1.0))
                    };
                    b.sqrt()
                })
                .chain(std::iter::once(0.0))
                .collect();
            let mu0 =
                ((s + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
                    - ln_gamma(s + 2.0))
                .exp();
            (diag, off, mu0)
        }
    };
    let mut first = vec![0.0; order];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;
    let mut pairs: Vec<(f64, f64)> = diag
        .into_iter()
        .zip(first)
        .map(|(x, z)| (x, mu0 * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule {
        kind,
        nodes,
        weights,
    })
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
///
/// `diag` is overwritten by the eigenvalues (unsorted). `off[i]` couples rows
/// `i` and `i+1`; `off[n-1]` must be zero on entry. `row` is a row vector that
/// receives the accumulated rotations; starting from `e_0` it ends up holding
/// the first components of the normalized eigenvectors.
pub fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], row: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenSolver);
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = row[i + 1];
                row[i + 1] = s * row[i] + c * z;
                row[i] = c * row[i] - s * z;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn one_point_laguerre() {
        let r = gauss_rule(WeightKind::Laguerre { alpha: 0.0 }, 1).unwrap();
        assert_abs_diff_eq!(r.nodes[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_moments() {
        let r = gauss_rule(WeightKind::Laguerre { alpha: 0.0 }, 2).unwrap();
        assert_abs_diff_eq!(r.integrate(|x| x.powi(3)), 6.0, epsilon = 1e-12);
        for &alpha in &[-0.5, 0.3, 2.7] {
            let r = gauss_rule(WeightKind::Laguerre { alpha }, 8).unwrap();
            for k in 0..16 {
                let exact = gamma(alpha + k as f64 + 1.0);
                assert!((r.integrate(|x| x.powi(k)) / exact - 1.0).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn gauss_legendre_two_point() {
        let r = gauss_rule(
            WeightKind::Jacobi {
                alpha: 0.0,
                beta: 0.0,
            },
            2,
        )
        .unwrap();
        let c = 1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(r.nodes[0], -c, epsilon = 1e-15);
        assert_abs_diff_eq!(r.nodes[1], c, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn jacobi_exact_to_degree_2n_minus_1() {
        // int (1-x)^a (1+x)^b (1+x)^k dx = 2^{a+b+k+1} B(a+1, b+k+1)
        for &(a, b) in &[(0.5, 1.5), (-0.5, -0.5), (2.5, 0.2), (-0.7, 0.7)] {
            let r = gauss_rule(WeightKind::Jacobi { alpha: a, beta: b }, 6).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for k in 0..12 {
                let kf = k as f64;
                let exact =
                    (2f64.ln() * (a + b + kf + 1.0) + ln_gamma(a + 1.0) + ln_gamma(b + kf + 1.0)
                        - ln_gamma(a + b + kf + 2.0))
                    .exp();
                let got = r.integrate(|x| (1.0 + x).powi(k));
                assert!((got / exact - 1.0).abs() < 1e-12, "a={a} b={b} k={k}");
            }
        }
    }

    #[test]
    fn invalid_weights() {
        assert!(gauss_rule(WeightKind::Laguerre { alpha: -1.0 }, 4).is_err());
        assert!(gauss_rule(
            WeightKind::Jacobi {
                alpha: 0.0,
                beta: -2.0
            },
            4
        )
        .is_err());
        assert!(gauss_rule(WeightKind::Laguerre { alpha: 0.0 }, 0).is_err());
    }

    #[test]
    fn large_rules_stay_accurate() {
        let r = gauss_rule(WeightKind::Laguerre { alpha: 1.5 }, 1024).unwrap();
        assert!((r.weights.iter().sum::<f64>() / gamma(2.5) - 1.0).abs() < 1e-12);
        assert!((r.integrate(|x| x * x) / gamma(4.5) - 1.0).abs() < 1e-11);
    }
}
