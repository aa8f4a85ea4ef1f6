//! Independent spectrum of `-d^2/dx^2 + U_l` from a second-order central
//! difference discretization with Dirichlet walls, solved by Sturm-sequence
//! bisection on the resulting symmetric tridiagonal matrix.

use crate::error::{Error, Result};
use crate::schrodinger::System;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdGrid {
    pub x_lo: f64,
    pub x_hi: f64,
    /// Number of interior grid points.
    pub points: usize,
}

impl FdGrid {
    pub fn new(x_lo: f64, x_hi: f64, points: usize) -> Self {
        FdGrid { x_lo, x_hi, points }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_hi - self.x_lo) / (self.points + 1) as f64
    }

    pub fn doubled(&self) -> FdGrid {
        FdGrid {
            points: 2 * self.points + 1,
            ..*self
        }
    }
}

/// Lowest `k` eigenvalues of the discretized `H_l` on one grid, ascending.
pub fn fd_eigenvalues(system: &System, grid: FdGrid, k: usize) -> Result<Vec<f64>> {
    let (lo, hi) = system.domain();
    if !(grid.x_lo > lo && grid.x_hi < hi && grid.x_lo < grid.x_hi) {
        return Err(Error::DomainError {
            x: if grid.x_lo <= lo {
                grid.x_lo
            } else {
                grid.x_hi
            },
            domain: "FD grid must lie inside the physical domain",
        });
    }
    if grid.points < k.max(3) {
        return Err(Error::GridTooCoarse {
            shift: f64::INFINITY,
        });
    }
    let d = grid.spacing();
    let inv = 1.0 / (d * d);
    let diag = (0..grid.points)
        .map(|i| {
            let x = grid.x_lo + (i + 1) as f64 * d;
            system.potential(x).map(|u| 2.0 * inv + u)
        })
        .collect::<Result<Vec<f64>>>()?;
    let off = -inv;
    Ok((0..k).map(|j| kth_eigenvalue(&diag, off, j)).collect())
}

/// Lowest `k` eigenvalues on `grid`, rejecting the grid when doubling its
/// resolution moves the lowest eigenvalue by more than `tolerance`.
pub fn fd_spectrum(system: &System, grid: FdGrid, k: usize, tolerance: f64) -> Result<Vec<f64>> {
    let coarse = fd_eigenvalues(system, grid, k)?;
    let fine = fd_eigenvalues(system, grid.doubled(), 1)?;
    let shift = (coarse[0] - fine[0]).abs();
    if shift > tolerance {
        return Err(Error::GridTooCoarse { shift });
    }
    Ok(coarse)
}

/// Number of eigenvalues strictly below `lambda` of the tridiagonal matrix
/// with diagonal `diag` and constant off-diagonal `off`.
fn sturm_count(diag: &[f64], off: f64, lambda: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        q = if i == 0 {
            a - lambda
        } else {
            a - lambda - off2 / q
        };
        if q == 0.0 {
            q = -f64::EPSILON * (a.abs() + off.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn kth_eigenvalue(diag: &[f64], off: f64, k: usize) -> f64 {
    let r = 2.0 * off.abs();
    let mut lo = diag.iter().fold(f64::INFINITY, |m, &a| m.min(a - r));
    let mut hi = diag.iter().fold(f64::NEG_INFINITY, |m, &a| m.max(a + r));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
