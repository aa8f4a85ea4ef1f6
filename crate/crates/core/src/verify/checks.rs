//! Individual checks, each producing one [`CheckReport`].

use crate::error::Result;
use crate::families::{norm_closed, xi_raw, xpoly_raw, Expansion, Family, Kind, ParamSet};
use crate::schrodinger::{System, INTERIOR_POINTS};

use super::gram::{gram_matrix, GramOptions};
use super::report::{params, CheckReport, Convergence, Num, ParamValue};
use super::spectrum::{fd_eigenvalues, fd_spectrum, FdGrid};

/// `count` equispaced points on `[lo, hi]`.
pub fn uniform_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

fn system_params(
    family: Family,
    ell: usize,
    p: &ParamSet,
) -> std::collections::BTreeMap<String, ParamValue> {
    let mut m = params([
        ("family", ParamValue::from(family.name())),
        ("ell", ell.into()),
    ]);
    m.insert("g".into(), p.g().into());
    if p.kind() == Kind::Jacobi {
        m.insert("h".into(), p.h().into());
    }
    m
}

/// Gram matrix by quadrature against the closed-form norms. The metric is
/// the larger of the worst relative off-diagonal and the worst relative gap
/// between a diagonal entry and `h_{l,n}`.
pub fn ortho_check(
    family: Family,
    ell: usize,
    p: ParamSet,
    n_max: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    ortho_check_with(family, ell, p, n_max, GramOptions::default(), tolerance)
}

/// `ortho_check` with explicit quadrature controls.
pub fn ortho_check_with(
    family: Family,
    ell: usize,
    p: ParamSet,
    n_max: usize,
    opts: GramOptions,
    tolerance: f64,
) -> Result<CheckReport> {
    let system = System::new(family, ell, p)?;
    let gm = gram_matrix(&system, n_max, opts)?;
    let mut gaps = Vec::with_capacity(n_max + 1);
    for (n, d) in gm.diagonal().into_iter().enumerate() {
        gaps.push((d / norm_closed(family, ell, n, &p)? - 1.0).abs());
    }
    let off = gm.max_relative_off_diagonal();
    let gap = gaps.iter().cloned().fold(0.0, f64::max);
    let mut m = system_params(family, ell, &p);
    m.insert("n_max".into(), n_max.into());
    let mut samples = gaps;
    samples.push(off);
    Ok(CheckReport::new("ortho", m)
        .detail("off_diagonal", off)
        .detail("norm_gap", gap)
        .detail("nodes", gm.nodes as f64)
        .with_samples(&samples, tolerance))
}

/// Normalized eigen-equation residual of `phi_{l,n}` for `n = 0..=n_max` at
/// 100 interior Chebyshev points.
pub fn eigen_check(
    family: Family,
    ell: usize,
    p: ParamSet,
    n_max: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    let system = System::new(family, ell, p)?;
    let xs = system.interior_points(INTERIOR_POINTS);
    let mut samples = Vec::with_capacity((n_max + 1) * xs.len());
    let mut report = CheckReport::new("eigen", {
        let mut m = system_params(family, ell, &p);
        m.insert("n_max".into(), n_max.into());
        m
    });
    for n in 0..=n_max {
        let prof = system.residual_profile(n, &xs)?;
        let worst = prof.iter().fold(0.0, |m: f64, r| m.max(r.abs()));
        report = report.detail(format!("n{n}"), worst);
        samples.extend(prof);
    }
    Ok(report.with_samples(&samples, tolerance))
}

/// Residual of the shape invariance condition at 100 interior points.
pub fn shape_check(family: Family, ell: usize, p: ParamSet, tolerance: f64) -> Result<CheckReport> {
    let system = System::new(family, ell, p)?;
    let xs = system.interior_points(INTERIOR_POINTS);
    let prof = system.shape_profile(&xs)?;
    Ok(CheckReport::new("shape", system_params(family, ell, &p)).with_samples(&prof, tolerance))
}

/// `l = 1` polynomial coincidences, coefficient-wise relative to
/// `max(1, max |coefficient|)`: for the oscillator `xi^L1 + xi^L2 = 0` and
/// `P^L1_{1,n} + P^L2_{1,n} = 0` for `n <= n_max`; for DPT `xi^J1 + xi^J2 = 0`.
pub fn coincidence_poly_check(p: ParamSet, n_max: usize, tolerance: f64) -> Result<CheckReport> {
    let (g, h) = (p.g(), p.h());
    let (f1, f2) = match p.kind() {
        Kind::Laguerre => (Family::L1, Family::L2),
        Kind::Jacobi => (Family::J1, Family::J2),
    };
    let rel = |a: &crate::poly::Polynomial, b: &crate::poly::Polynomial| {
        (a + b).max_abs_coeff() / a.max_abs_coeff().max(b.max_abs_coeff()).max(1.0)
    };
    let mut samples = Vec::new();
    let a = xi_raw(f1, 1, g, h, Expansion::Monomial)?;
    let b = xi_raw(f2, 1, g, h, Expansion::Monomial)?;
    let xi_dev = rel(&a, &b);
    samples.push(xi_dev);
    let mut m = params([(
        "kind",
        ParamValue::from(match p.kind() {
            Kind::Laguerre => "L",
            Kind::Jacobi => "J",
        }),
    )]);
    m.insert("g".into(), g.into());
    let mut report = CheckReport::new("coincidence-poly", m).detail("xi", xi_dev);
    if p.kind() == Kind::Laguerre {
        report.params.insert("n_max".into(), n_max.into());
        let mut worst: f64 = 0.0;
        for n in 0..=n_max {
            let a = xpoly_raw(f1, 1, n, &p, Expansion::Monomial)?.poly;
            let b = xpoly_raw(f2, 1, n, &p, Expansion::Monomial)?.poly;
            let d = rel(&a, &b);
            worst = worst.max(d);
            samples.push(d);
        }
        report = report.detail("eigenpolynomial", worst);
    } else {
        report.params.insert("h".into(), h.into());
    }
    Ok(report.with_samples(&samples, tolerance))
}

/// `U_1^L1 = U_1^L2` pointwise at 50 points, relative to `max(1, |U|)`.
pub fn coincidence_potential_check(g: f64, tolerance: f64) -> Result<CheckReport> {
    let p = ParamSet::laguerre(g);
    let s1 = System::new(Family::L1, 1, p)?;
    let s2 = System::new(Family::L2, 1, p)?;
    let (lo, hi) = s1.ground_state_support();
    let mut samples = Vec::new();
    for x in uniform_points(lo, hi, 50) {
        let a = s1.potential(x)?;
        let b = s2.potential(x)?;
        samples.push((a - b) / a.abs().max(1.0));
    }
    Ok(CheckReport::new(
        "coincidence-potential",
        params([("g", ParamValue::from(g))]),
    )
    .with_samples(&samples, tolerance))
}

/// Dense sign sampling of `xi_l(eta; lambda)` and `xi_l(eta; lambda + delta)` on
/// the physical `eta` domain: `10^4` log-spaced points of `(0, 200]` for the
/// oscillator, `10^4` interior points of `(-1, 1)` for DPT. The metric is the
/// number of sign changes plus sampled zeros.
pub fn sign_check(family: Family, ell: usize, p: ParamSet, tolerance: f64) -> Result<CheckReport> {
    System::new(family, ell, p)?;
    const M: usize = 10_000;
    let etas: Vec<f64> = match family.kind() {
        Kind::Laguerre => {
            let (a, b) = (1e-8f64.ln(), 200f64.ln());
            (0..M)
                .map(|i| (a + (b - a) * i as f64 / (M - 1) as f64).exp())
                .collect()
        }
        Kind::Jacobi => (0..M)
            .map(|i| -1.0 + 2.0 * (i as f64 + 0.5) / M as f64)
            .collect(),
    };
    let mut bad = 0usize;
    let mut min_rel = f64::INFINITY;
    for q in [p, p.shifted(1.0)] {
        let xi = xi_raw(family, ell as i32, q.g(), q.h(), Expansion::AboutOne)?;
        let scale = xi.max_abs_coeff().max(f64::MIN_POSITIVE);
        let shift = if family.kind() == Kind::Jacobi {
            -1.0
        } else {
            0.0
        };
        let mut prev = 0.0f64;
        for &eta in &etas {
            let v = xi.eval(eta + shift);
            min_rel = min_rel.min(v.abs() / scale);
            if v == 0.0 || (prev != 0.0 && v.signum() != prev.signum()) {
                bad += 1;
            }
            prev = v;
        }
    }
    let mut m = system_params(family, ell, &p);
    m.insert("samples".into(), M.into());
    Ok(CheckReport::new("sign", m)
        .detail("min_relative_magnitude", min_rel)
        .finish(bad as f64, tolerance))
}

/// Default FD grid of a system: `(1e-3, 12)` for the oscillator,
/// `(1e-3, pi/2 - 1e-3)` for DPT, 4000 interior points.
pub fn default_grid(kind: Kind) -> FdGrid {
    match kind {
        Kind::Laguerre => FdGrid::new(1e-3, 12.0, 4000),
        Kind::Jacobi => FdGrid::new(1e-3, std::f64::consts::FRAC_PI_2 - 1e-3, 4000),
    }
}

/// Lowest `k` FD eigenvalues against `E_n(lambda + l delta)`; metric is the
/// largest absolute gap.
pub fn spectrum_check(
    family: Family,
    ell: usize,
    p: ParamSet,
    grid: FdGrid,
    k: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    let system = System::new(family, ell, p)?;
    let fd = fd_spectrum(&system, grid, k, tolerance)?;
    let mut m = system_params(family, ell, &p);
    m.insert("points".into(), grid.points.into());
    m.insert("k".into(), k.into());
    let mut report = CheckReport::new("spectrum", m);
    let mut gaps = Vec::with_capacity(k);
    for (n, e) in fd.iter().enumerate() {
        report = report.detail(format!("E{n}"), *e);
        gaps.push(e - system.energy(n));
    }
    Ok(report.with_samples(&gaps, tolerance))
}

/// Observed FD convergence order over `levels` (interior point counts,
/// each roughly double the previous): the log-log slope of the largest
/// eigenvalue error against the spacing. Metric is `|order - 2|`.
pub fn spectrum_order_check(
    family: Family,
    ell: usize,
    p: ParamSet,
    grid: FdGrid,
    levels: &[usize],
    k: usize,
    tolerance: f64,
) -> Result<CheckReport> {
    let system = System::new(family, ell, p)?;
    let mut spacings = Vec::with_capacity(levels.len());
    let mut errs = Vec::with_capacity(levels.len());
    for &points in levels {
        let g = FdGrid { points, ..grid };
        let fd = fd_eigenvalues(&system, g, k)?;
        let err = fd
            .iter()
            .enumerate()
            .map(|(n, e)| (e - system.energy(n)).abs())
            .fold(0.0, f64::max);
        spacings.push(g.spacing());
        errs.push(err);
    }
    let order = super::report::log_log_slope(&spacings, &errs);
    let mut m = system_params(family, ell, &p);
    m.insert("k".into(), k.into());
    let mut report = CheckReport::new("spectrum-order", m).detail("order", order);
    report.convergence.push(Convergence {
        label: "max eigenvalue error".into(),
        levels: levels.iter().map(|&l| Num(l as f64)).collect(),
        values: errs.iter().map(|&e| Num(e)).collect(),
        slope: Num(order),
    });
    report.max = Num(errs.iter().cloned().fold(0.0, f64::max));
    let metric = if order.is_finite() {
        (order - 2.0).abs()
    } else {
        f64::INFINITY
    };
    Ok(report.finish(metric, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_checks_pass() {
        let p = ParamSet::laguerre(1.5);
        assert!(ortho_check(Family::L2, 2, p, 3, 1e-8).unwrap().pass);
        assert!(eigen_check(Family::L2, 2, p, 3, 1e-8).unwrap().pass);
        assert!(
            shape_check(Family::L1, 3, ParamSet::laguerre(1.2), 1e-9)
                .unwrap()
                .pass
        );
        assert!(
            shape_check(Family::J2, 2, ParamSet::jacobi(3.0, 1.0), 1e-9)
                .unwrap()
                .pass
        );
        assert!(
            sign_check(Family::J1, 3, ParamSet::jacobi(0.5, 3.0), 0.0)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn coincidences() {
        assert!(
            coincidence_poly_check(ParamSet::laguerre(0.7), 5, 1e-12)
                .unwrap()
                .pass
        );
        assert!(
            coincidence_poly_check(ParamSet::jacobi(1.0, 2.0), 5, 1e-12)
                .unwrap()
                .pass
        );
        assert!(coincidence_potential_check(2.0, 1e-10).unwrap().pass);
    }

    #[test]
    fn zero_tolerance_is_not_vacuous() {
        let r = eigen_check(Family::J1, 2, ParamSet::jacobi(1.0, 2.5), 2, 0.0).unwrap();
        assert!(r.metric() > 0.0 && !r.pass);
    }
}
