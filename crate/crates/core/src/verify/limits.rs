//! Infinite-coupling limits: Jacobi to Laguerre base polynomials, and the
//! DPT families to the oscillator families under `x = x_L / sqrt(h)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::families::{Family, ParamSet};
use crate::poly::{jacobi_about_one, laguerre};
use crate::schrodinger::System;

use super::report::{log_log_slope, params, CheckReport, Convergence, Num, ParamValue};

/// Default coupling schedule for the family limits.
pub const H_SCHEDULE: [f64; 3] = [1e2, 1e3, 1e4];

/// Default schedule for the base-polynomial limit.
pub const BETA_SCHEDULE: [f64; 4] = [1e2, 1e3, 1e4, 1e5];

/// Errors at or below this are treated as exact (no slope to fit).
const EXACT: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitSign {
    Plus,
    Minus,
}

impl LimitSign {
    fn factor(self) -> f64 {
        match self {
            LimitSign::Plus => 1.0,
            LimitSign::Minus => -1.0,
        }
    }
}

/// Which DPT family tends to which oscillator family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitPair {
    J1ToL2,
    J2ToL1,
}

impl LimitPair {
    pub fn families(self) -> (Family, Family) {
        match self {
            LimitPair::J1ToL2 => (Family::J1, Family::L2),
            LimitPair::J2ToL1 => (Family::J2, Family::L1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LimitPair::J1ToL2 => "J1L2",
            LimitPair::J2ToL1 => "J2L1",
        }
    }
}

impl std::str::FromStr for LimitPair {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace(['-', '>', '_'], "").as_str() {
            "J1L2" => Ok(LimitPair::J1ToL2),
            "J2L1" => Ok(LimitPair::J2ToL1),
            _ => Err(format!("unknown limit pair `{s}` (expected J1L2 or J2L1)")),
        }
    }
}

/// Acceptance window for the fitted slope of error against `1/coupling`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeWindow {
    pub lo: f64,
    pub hi: f64,
}

impl Default for SlopeWindow {
    fn default() -> Self {
        SlopeWindow { lo: 0.8, hi: 1.2 }
    }
}

impl SlopeWindow {
    /// `0` at the window centre, `1` at its edges.
    fn score(&self, slope: f64) -> f64 {
        let mid = 0.5 * (self.lo + self.hi);
        let half = 0.5 * (self.hi - self.lo);
        (slope - mid).abs() / half
    }
}

/// Fits and scores one error sequence. Returns the convergence record and a
/// score that is `<= 1` exactly when the sequence is acceptable.
fn score_sequence(
    label: &str,
    levels: &[f64],
    errs: &[f64],
    window: SlopeWindow,
) -> (Convergence, f64) {
    let inv: Vec<f64> = levels.iter().map(|c| 1.0 / c).collect();
    if errs.iter().all(|&e| e <= EXACT) {
        let conv = Convergence {
            label: label.to_string(),
            levels: levels.iter().map(|&l| Num(l)).collect(),
            values: errs.iter().map(|&e| Num(e)).collect(),
            slope: Num(f64::NAN),
        };
        return (conv, 0.0);
    }
    let slope = log_log_slope(&inv, errs);
    let monotone = errs.windows(2).all(|w| w[1] < w[0]);
    let mut score = window.score(slope);
    if !monotone || !slope.is_finite() {
        score = f64::INFINITY;
    }
    let conv = Convergence {
        label: label.to_string(),
        levels: levels.iter().map(|&l| Num(l)).collect(),
        values: errs.iter().map(|&e| Num(e)).collect(),
        slope: Num(slope),
    };
    (conv, score)
}

fn x_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// `P_n^(alpha, +-beta)(1 - 2x/beta) -> L_n^(alpha)(+-x)` as `beta -> inf`.
///
/// The report's metric is a score normalized to tolerance `1`: it exceeds `1`
/// when the fitted slope leaves `window`, the errors fail to decrease, or the
/// error at the largest `beta` exceeds `1e-3` times the fitted constant `C`
/// of `err ~ C / beta`.
pub fn limit_check_base(
    n: usize,
    alpha: f64,
    sign: LimitSign,
    betas: &[f64],
    window: SlopeWindow,
) -> CheckReport {
    let xs = x_grid(0.1, 4.0, 40);
    let s = sign.factor();
    let target = laguerre(n, alpha);
    let errs: Vec<f64> = betas
        .iter()
        .map(|&beta| {
            let p = jacobi_about_one(n, alpha, s * beta);
            xs.iter()
                .map(|&x| {
                    let reference = target.eval(s * x);
                    (p.eval(-2.0 * x / beta) - reference).abs() / reference.abs().max(1.0)
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let (conv, mut score) = score_sequence("base", betas, &errs, window);
    // err ~ C / beta fitted with unit slope over the schedule
    let c = (errs
        .iter()
        .zip(betas)
        .map(|(e, b)| (e.max(f64::MIN_POSITIVE) * b).ln())
        .sum::<f64>()
        / betas.len() as f64)
        .exp();
    let last = *errs.last().unwrap_or(&0.0);
    let bound = 1e-3 * c;
    if last > EXACT {
        score = score.max(last / bound);
    }
    let sign_label = match sign {
        LimitSign::Plus => "+",
        LimitSign::Minus => "-",
    };
    let mut report = CheckReport::new(
        "limit-base",
        params([
            ("n", ParamValue::from(n)),
            ("alpha", alpha.into()),
            ("sign", sign_label.into()),
        ]),
    )
    .detail("fitted_constant", c)
    .detail("error_at_largest", last)
    .detail("slope", conv.slope.0);
    report.convergence.push(conv);
    report.max = Num(errs.iter().cloned().fold(0.0, f64::max));
    report.finish(score, 1.0)
}

/// Per-coupling errors of the four limit relations, each measured as
/// `max |J-side - L-side| / max(1, |L-side|)` over the `x_L` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyLimitErrors {
    pub h: f64,
    pub xi: f64,
    pub prepotential: f64,
    pub potential: f64,
    pub eigenpolynomial: f64,
}

/// Evaluates the four limit relations at one coupling `h`:
/// `xi^J(eta^J(x)) -> xi^L(eta^L(x_L))`,
/// `w^J(x) + (g+l)/2 log h -> w^L(x_L)`, `U^J(x)/h -> U^L(x_L)` and
/// `P^J(eta^J(x)) -> P^L(eta^L(x_L))`, with `x = x_L / sqrt(h)`.
pub fn family_limit_errors(
    pair: LimitPair,
    ell: usize,
    n: usize,
    g: f64,
    h: f64,
    xs_l: &[f64],
) -> Result<FamilyLimitErrors> {
    let (jfam, lfam) = pair.families();
    let jp = ParamSet::jacobi(g, h);
    let jsys = match jfam {
        Family::J1 => System::new(jfam, ell, jp)?,
        // the J2 formulas are continued formally to h > g
        _ => System::new_unchecked(jfam, ell, jp)?,
    };
    let lsys = System::new(lfam, ell, ParamSet::laguerre(g))?;
    let jstate = jsys.eigenstate(n)?;
    let lstate = lsys.eigenstate(n)?;
    let root = h.sqrt();
    let shift = 0.5 * (g + ell as f64) * h.ln();
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let mut out = FamilyLimitErrors {
        h,
        xi: 0.0,
        prepotential: 0.0,
        potential: 0.0,
        eigenpolynomial: 0.0,
    };
    for &xl in xs_l {
        let x = xl / root;
        if !(x < FRAC_PI_2) {
            return Err(Error::DomainError {
                x,
                domain: "0 < x_L / sqrt(h) < pi/2",
            });
        }
        out.xi = out.xi.max(rel(jsys.xi_at(x)?, lsys.xi_at(xl)?));
        out.prepotential = out.prepotential.max(rel(
            jsys.prepotential(x)?.value + shift,
            lsys.prepotential(xl)?.value,
        ));
        out.potential = out
            .potential
            .max(rel(jsys.potential(x)? / h, lsys.potential(xl)?));
        out.eigenpolynomial = out.eigenpolynomial.max(rel(
            jsys.eigenpolynomial_at(&jstate, x)?,
            lsys.eigenpolynomial_at(&lstate, xl)?,
        ));
    }
    Ok(out)
}

/// Limit check for one pair over a coupling schedule. The metric is a
/// score normalized to tolerance `1` (see [`limit_check_base`]); every one of
/// the four error sequences must decrease with a slope inside `window`.
pub fn limit_check_family(
    pair: LimitPair,
    ell: usize,
    n: usize,
    g: f64,
    hs: &[f64],
    window: SlopeWindow,
) -> Result<CheckReport> {
    let h_min = hs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = 4.0f64.min(0.9 * FRAC_PI_2 * h_min.sqrt());
    let xs_l = x_grid(0.5, hi, 40);
    let rows = hs
        .iter()
        .map(|&h| family_limit_errors(pair, ell, n, g, h, &xs_l))
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new(
        "limit-family",
        params([
            ("pair", ParamValue::from(pair.name())),
            ("ell", ell.into()),
            ("n", n.into()),
            ("g", g.into()),
        ]),
    );
    let sequences: [(&str, Vec<f64>); 4] = [
        ("xi", rows.iter().map(|r| r.xi).collect()),
        (
            "prepotential",
            rows.iter().map(|r| r.prepotential).collect(),
        ),
        ("potential", rows.iter().map(|r| r.potential).collect()),
        (
            "eigenpolynomial",
            rows.iter().map(|r| r.eigenpolynomial).collect(),
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut max_err: f64 = 0.0;
    let mut worst_slope_dev: f64 = 0.0;
    let mut worst_slope = f64::NAN;
    for (label, errs) in sequences.iter() {
        let (conv, score) = score_sequence(label, hs, errs, window);
        worst = worst.max(score);
        let s = conv.slope.0;
        if s.is_finite() && (worst_slope.is_nan() || (s - 1.0).abs() > worst_slope_dev) {
            worst_slope_dev = (s - 1.0).abs();
            worst_slope = s;
        }
        max_err = errs.iter().cloned().fold(max_err, f64::max);
        report.convergence.push(conv);
    }
    report.max = Num(max_err);
    let slopes: Vec<f64> = report.convergence.iter().map(|c| c.slope.0).collect();
    let min_slope = slopes
        .iter()
        .cloned()
        .filter(|s| s.is_finite())
        .fold(f64::INFINITY, f64::min);
    let max_slope = slopes
        .iter()
        .cloned()
        .filter(|s| s.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    let report = report
        .detail("slope", worst_slope)
        .detail("slope_min", min_slope)
        .detail("slope_max", max_slope)
        .detail("worst_slope_deviation", worst_slope_dev);
    Ok(report.finish(worst, 1.0))
}
