use crate::error::{Error, Result};
use crate::families::{xi_raw, xpoly_raw, Expansion, Kind};
use crate::poly::Polynomial;
use crate::schrodinger::System;

use super::quadrature::{gauss_rule, WeightKind};

/// Node-doubling controls for the orthogonality integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GramOptions {
    /// Accept once a doubling changes no entry by more than this, relative to
    /// `sqrt(G_nn G_mm)`.
    pub tolerance: f64,
    pub start_nodes: usize,
    pub max_nodes: usize,
}

impl Default for GramOptions {
    fn default() -> Self {
        GramOptions {
            tolerance: 1e-10,
            start_nodes: 32,
            max_nodes: 2048,
        }
    }
}

/// `G_nm = int psi_l^2 P_{l,n} P_{l,m} dx` for `0 <= n, m <= n_max`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub entries: Vec<Vec<f64>>,
    /// Nodes of the accepted rule.
    pub nodes: usize,
    /// Relative change over the last doubling.
    pub change: f64,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size()).map(|i| self.entries[i][i]).collect()
    }

    /// Largest `|G_nm| / sqrt(G_nn G_mm)` over `n != m`.
    pub fn max_relative_off_diagonal(&self) -> f64 {
        let d = self.diagonal();
        let mut worst: f64 = 0.0;
        for i in 0..self.size() {
            for j in 0..self.size() {
                if i != j {
                    worst = worst.max(self.entries[i][j].abs() / (d[i] * d[j]).sqrt());
                }
            }
        }
        worst
    }
}

/// Orthogonality integrals in the `eta` variable.
///
/// Oscillator: `dx psi^2 = (1/2) e^{-eta} eta^{g+l-1/2} / xi^2 d eta`, integrated
/// with the generalized Laguerre rule of `alpha = g + l - 1/2`.
/// DPT: `dx psi^2 = 2^{-(g+h+2l+1)} (1-eta)^{g+l-1/2} (1+eta)^{h+l-1/2} / xi^2 d eta`,
/// integrated with the Jacobi rule of the same exponents.
pub fn gram_matrix(system: &System, n_max: usize, opts: GramOptions) -> Result<GramMatrix> {
    let family = system.family();
    let ell = system.ell();
    let params = system.params();
    let (g, h, lf) = (params.g(), params.h(), ell as f64);
    let xi = xi_raw(family, ell as i32, g, h, Expansion::Monomial)?;
    let polys: Vec<Polynomial> = (0..=n_max)
        .map(|n| xpoly_raw(family, ell, n, &params, Expansion::Monomial).map(|p| p.poly))
        .collect::<Result<_>>()?;
    let (weight, prefactor) = match system.kind() {
        Kind::Laguerre => (
            WeightKind::Laguerre {
                alpha: g + lf - 0.5,
            },
            0.5,
        ),
        Kind::Jacobi => (
            WeightKind::Jacobi {
                alpha: g + lf - 0.5,
                beta: h + lf - 0.5,
            },
            2f64.powf(-(g + h + 2.0 * lf + 1.0)),
        ),
    };

    let evaluate = |nodes: usize| -> Result<Vec<Vec<f64>>> {
        let rule = gauss_rule(weight, nodes)?;
        let mut out = vec![vec![0.0; n_max + 1]; n_max + 1];
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let q = xi.eval(x);
            let vals: Vec<f64> = polys.iter().map(|p| p.eval(x)).collect();
            let wq = prefactor * w / (q * q);
            for i in 0..=n_max {
                for j in i..=n_max {
                    out[i][j] += wq * vals[i] * vals[j];
                }
            }
        }
        for i in 0..=n_max {
            for j in 0..i {
                out[i][j] = out[j][i];
            }
        }
        Ok(out)
    };

    let mut nodes = opts.start_nodes.max(n_max + ell + 1);
    let mut prev = evaluate(nodes)?;
    loop {
        let next_nodes = nodes * 2;
        if next_nodes > opts.max_nodes {
            return Err(Error::NoConvergence {
                nodes,
                change: f64::NAN,
            });
        }
        let cur = evaluate(next_nodes)?;
        let mut change: f64 = 0.0;
        for i in 0..=n_max {
            for j in 0..=n_max {
                let scale = (cur[i][i] * cur[j][j]).sqrt();
                change = change.max((cur[i][j] - prev[i][j]).abs() / scale);
            }
        }
        if change < opts.tolerance {
            return Ok(GramMatrix {
                entries: cur,
                nodes: next_nodes,
                change,
            });
        }
        if next_nodes * 2 > opts.max_nodes {
            return Err(Error::NoConvergence {
                nodes: next_nodes,
                change,
            });
        }
        prev = cur;
        nodes = next_nodes;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{norm_closed, Family, ParamSet};

    #[test]
    fn classical_oscillator_norms() {
        let s = System::classical(ParamSet::laguerre(2.0)).unwrap();
        let gm = gram_matrix(&s, 3, GramOptions::default()).unwrap();
        for (n, d) in gm.diagonal().into_iter().enumerate() {
            let exact = norm_closed(Family::L, 0, n, &ParamSet::laguerre(2.0)).unwrap();
            assert!((d / exact - 1.0).abs() < 1e-10);
        }
        assert!(gm.max_relative_off_diagonal() < 1e-10);
    }

    #[test]
    fn first_l1_norm() {
        let s = System::new(Family::L1, 1, ParamSet::laguerre(1.0)).unwrap();
        let gm = gram_matrix(&s, 0, GramOptions::default()).unwrap();
        assert!((gm.entries[0][0] / 1.107_783_656_815_947_8 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn j1_norms() {
        let p = ParamSet::jacobi(1.0, 2.5);
        let s = System::new(Family::J1, 2, p).unwrap();
        let gm = gram_matrix(&s, 4, GramOptions::default()).unwrap();
        for (n, d) in gm.diagonal().into_iter().enumerate() {
            let exact = norm_closed(Family::J1, 2, n, &p).unwrap();
            assert!((d / exact - 1.0).abs() < 1e-8, "n={n}: {d} vs {exact}");
        }
    }

    #[test]
    fn cap_too_small_reports_no_convergence() {
        let s = System::new(Family::L2, 3, ParamSet::laguerre(0.7)).unwrap();
        let opts = GramOptions {
            tolerance: 1e-30,
            start_nodes: 8,
            max_nodes: 64,
        };
        assert!(matches!(
            gram_matrix(&s, 2, opts),
            Err(Error::NoConvergence { .. })
        ));
    }
}
