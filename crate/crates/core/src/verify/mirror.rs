//! The `J2` system is the image of `J1` under `x -> pi/2 - x` with `g <-> h`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::families::{norm_raw, xi_raw, xpoly_raw, Expansion, Family, ParamSet};
use crate::poly::Polynomial;
use crate::schrodinger::System;

use super::report::{params, CheckReport, ParamValue};

/// Number of points of the pointwise potential comparison.
pub const MIRROR_POINTS: usize = 50;

fn scaled_diff(a: &Polynomial, b: &Polynomial) -> f64 {
    a.max_coeff_diff(b) / a.max_abs_coeff().max(b.max_abs_coeff()).max(1.0)
}

/// Deviations of the mirror identities at `(g, h)` with `g > h > 0`:
/// `xi^J2(eta; g, h) = (-1)^l xi^J1(-eta; h, g)`,
/// `P^J2_{l,n}(eta; g, h) = (-1)^{l+n} P^J1_{l,n}(-eta; h, g)` (coefficient-wise),
/// `U^J2(x; g, h) = U^J1(pi/2 - x; h, g)` pointwise,
/// `h^J2_{l,n}(g, h) = h^J1_{l,n}(h, g)`, and for `l = 1` also `xi^J1 + xi^J2 = 0`.
///
/// Coefficient deviations are relative to `max(1, max |coefficient|)`, pointwise
/// ones to `max(1, |U|)`; the norm deviation is relative.
pub fn mirror_check(ell: usize, n: usize, g: f64, h: f64, tolerance: f64) -> Result<CheckReport> {
    let p2 = ParamSet::jacobi(g, h);
    let p1 = p2.swapped();
    let j2 = System::new(Family::J2, ell, p2)?;
    let j1 = System::new(Family::J1, ell, p1)?;
    let l = ell as i32;
    let sign_xi = if ell.is_multiple_of(2) { 1.0 } else { -1.0 };
    let sign_p = if (ell + n).is_multiple_of(2) { 1.0 } else { -1.0 };

    let xi2 = xi_raw(Family::J2, l, g, h, Expansion::Monomial)?;
    let xi1 = xi_raw(Family::J1, l, h, g, Expansion::Monomial)?;
    let xi_dev = scaled_diff(&xi2, &(xi1.reflect() * sign_xi));

    let q2 = xpoly_raw(Family::J2, ell, n, &p2, Expansion::Monomial)?.poly;
    let q1 = xpoly_raw(Family::J1, ell, n, &p1, Expansion::Monomial)?.poly;
    let p_dev = scaled_diff(&q2, &(q1.reflect() * sign_p));

    let (lo, hi) = j2.ground_state_support();
    let mut u_dev: f64 = 0.0;
    for x in super::checks::uniform_points(lo, hi, MIRROR_POINTS) {
        let a = j2.potential(x)?;
        let b = j1.potential(FRAC_PI_2 - x)?;
        u_dev = u_dev.max((a - b).abs() / a.abs().max(1.0));
    }

    let n2 = norm_raw(Family::J2, ell, n, &p2);
    let n1 = norm_raw(Family::J1, ell, n, &p1);
    let norm_dev = (n2 / n1 - 1.0).abs();

    let mut report = CheckReport::new(
        "mirror",
        params([
            ("ell", ParamValue::from(ell)),
            ("n", n.into()),
            ("g", g.into()),
            ("h", h.into()),
        ]),
    )
    .detail("xi", xi_dev)
    .detail("eigenpolynomial", p_dev)
    .detail("potential", u_dev)
    .detail("norm", norm_dev);
    let mut samples = vec![xi_dev, p_dev, u_dev, norm_dev];
    if ell == 1 {
        // first DPT deformations coincide up to sign at any couplings
        let a = xi_raw(Family::J1, 1, g, h, Expansion::Monomial)?;
        let b = xi_raw(Family::J2, 1, g, h, Expansion::Monomial)?;
        let dev = (&a + &b).max_abs_coeff() / a.max_abs_coeff().max(1.0);
        report = report.detail("xi_sum_l1", dev);
        samples.push(dev);
    }
    if !samples.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "non-finite mirror deviation at g={g}, h={h}"
        )));
    }
    Ok(report.with_samples(&samples, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_identities_hold() {
        let r = mirror_check(2, 3, 2.0, 0.5, 1e-11).unwrap();
        assert!(r.pass, "{r:?}");
        let r = mirror_check(1, 2, 3.0, 1.0, 1e-11).unwrap();
        assert!(r.pass && r.details.contains_key("xi_sum_l1"), "{r:?}");
    }

    #[test]
    fn mirror_requires_g_above_h() {
        assert!(matches!(
            mirror_check(1, 0, 0.5, 2.0, 1e-10),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn j2_l1_n1_matches_swapped_j1() {
        let a = xpoly_raw(
            Family::J2,
            1,
            1,
            &ParamSet::jacobi(2.0, 1.0),
            Expansion::Monomial,
        )
        .unwrap();
        let b = xpoly_raw(
            Family::J1,
            1,
            1,
            &ParamSet::jacobi(1.0, 2.0),
            Expansion::Monomial,
        )
        .unwrap();
        assert!(a.poly.max_coeff_diff(&b.poly.reflect()) < 1e-13);
    }
}
