//! Predefined collections of checks. `Quick` covers `l <= 2`, `n <= 3` at
//! default couplings; `Full` is the complete acceptance matrix.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::Result;
use crate::families::{Family, ParamSet};

use super::checks::{
    coincidence_poly_check, coincidence_potential_check, default_grid, eigen_check,
    ortho_check_with, shape_check, sign_check, spectrum_check, spectrum_order_check,
};
use super::gram::GramOptions;
use super::limits::{
    limit_check_base, limit_check_family, LimitPair, LimitSign, SlopeWindow, BETA_SCHEDULE,
    H_SCHEDULE,
};
use super::mirror::mirror_check;
use super::report::CheckReport;
use super::tolerances::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Ortho,
    Eigen,
    Shape,
    Mirror,
    Coincidence,
    Limit,
    Spectrum,
    Sign,
    All,
}

impl CheckKind {
    fn includes(self, other: CheckKind) -> bool {
        self == CheckKind::All || self == other
    }
}

impl std::str::FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "ortho" => CheckKind::Ortho,
            "eigen" => CheckKind::Eigen,
            "shape" => CheckKind::Shape,
            "mirror" => CheckKind::Mirror,
            "coincidence" => CheckKind::Coincidence,
            "limit" => CheckKind::Limit,
            "spectrum" => CheckKind::Spectrum,
            "sign" => CheckKind::Sign,
            "all" => CheckKind::All,
            _ => return Err(format!("unknown check `{s}`")),
        })
    }
}

/// Oscillator couplings of the full matrix.
pub const FULL_LAGUERRE_G: [f64; 3] = [0.7, 1.5, 3.0];
/// `J1` couplings of the full matrix; `J2` uses them swapped.
pub const FULL_J1_GH: [(f64, f64); 2] = [(1.0, 2.0), (0.5, 3.0)];
/// Couplings of the mirror checks (`g > h`).
pub const MIRROR_GH: [(f64, f64); 2] = [(2.0, 0.5), (3.0, 1.0)];

/// Quadrature node cap of the quick scope.
pub const QUICK_MAX_NODES: usize = 256;

/// `(family, l, params)` combinations of a scope.
pub fn systems(scope: Scope) -> Vec<(Family, usize, ParamSet)> {
    let mut out = Vec::new();
    match scope {
        Scope::Quick => {
            for ell in 1..=2 {
                out.push((Family::L1, ell, ParamSet::laguerre(1.5)));
                out.push((Family::L2, ell, ParamSet::laguerre(1.5)));
                out.push((Family::J1, ell, ParamSet::jacobi(1.0, 2.0)));
                out.push((Family::J2, ell, ParamSet::jacobi(2.0, 1.0)));
            }
        }
        Scope::Full => {
            for ell in 1..=3 {
                for &g in &FULL_LAGUERRE_G {
                    out.push((Family::L1, ell, ParamSet::laguerre(g)));
                    out.push((Family::L2, ell, ParamSet::laguerre(g)));
                }
                for &(g, h) in &FULL_J1_GH {
                    out.push((Family::J1, ell, ParamSet::jacobi(g, h)));
                    out.push((Family::J2, ell, ParamSet::jacobi(h, g)));
                }
            }
        }
    }
    out
}

type Job<'a> = Box<dyn Fn() -> Result<CheckReport> + Send + Sync + 'a>;

/// The checks of `kind` within `scope`, before evaluation.
fn jobs<'a>(kind: CheckKind, scope: Scope, tol: &'a Tolerances) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();
    let (n_ortho, n_eigen, max_nodes) = match scope {
        Scope::Quick => (3, 3, QUICK_MAX_NODES),
        Scope::Full => (5, 4, GramOptions::default().max_nodes),
    };
    let gram = GramOptions {
        max_nodes,
        ..GramOptions::default()
    };
    for (family, ell, p) in systems(scope) {
        if kind.includes(CheckKind::Ortho) {
            jobs.push(Box::new(move || {
                ortho_check_with(family, ell, p, n_ortho, gram, tol.ortho)
            }));
        }
        if kind.includes(CheckKind::Eigen) {
            jobs.push(Box::new(move || {
                eigen_check(family, ell, p, n_eigen, tol.eigen)
            }));
        }
        if kind.includes(CheckKind::Shape) {
            jobs.push(Box::new(move || shape_check(family, ell, p, tol.shape)));
        }
        if kind.includes(CheckKind::Sign) && (scope == Scope::Full || kind == CheckKind::Sign) {
            jobs.push(Box::new(move || sign_check(family, ell, p, tol.sign)));
        }
    }

    if kind.includes(CheckKind::Mirror) {
        let (ells, ns, ghs): (Vec<usize>, Vec<usize>, Vec<(f64, f64)>) = match scope {
            Scope::Quick => (vec![1, 2], vec![3], vec![(2.0, 1.0)]),
            Scope::Full => ((1..=3).collect(), (0..=4).collect(), MIRROR_GH.to_vec()),
        };
        for &(g, h) in &ghs {
            for &ell in &ells {
                for &n in &ns {
                    jobs.push(Box::new(move || mirror_check(ell, n, g, h, tol.mirror)));
                }
            }
        }
    }

    if kind.includes(CheckKind::Coincidence) {
        let (gs, ghs): (Vec<f64>, Vec<(f64, f64)>) = match scope {
            Scope::Quick => (vec![1.5], vec![(1.0, 2.0)]),
            Scope::Full => (
                FULL_LAGUERRE_G.to_vec(),
                FULL_J1_GH.iter().chain(MIRROR_GH.iter()).cloned().collect(),
            ),
        };
        for &g in &gs {
            jobs.push(Box::new(move || {
                coincidence_poly_check(ParamSet::laguerre(g), 5, tol.coincidence_poly)
            }));
            jobs.push(Box::new(move || {
                coincidence_potential_check(g, tol.coincidence_potential)
            }));
        }
        for &(g, h) in &ghs {
            jobs.push(Box::new(move || {
                coincidence_poly_check(ParamSet::jacobi(g, h), 5, tol.coincidence_poly)
            }));
        }
    }

    if kind.includes(CheckKind::Limit) {
        let window = SlopeWindow::default();
        match scope {
            Scope::Quick => {
                jobs.push(Box::new(move || {
                    Ok(
                        limit_check_base(2, 0.5, LimitSign::Plus, &BETA_SCHEDULE, window)
                            .with_tolerance(tol.limit),
                    )
                }));
                jobs.push(Box::new(move || {
                    limit_check_family(LimitPair::J1ToL2, 1, 0, 1.0, &H_SCHEDULE, window)
                        .map(|r| r.with_tolerance(tol.limit))
                }));
                jobs.push(Box::new(move || {
                    limit_check_family(LimitPair::J2ToL1, 2, 1, 1.5, &H_SCHEDULE, window)
                        .map(|r| r.with_tolerance(tol.limit))
                }));
            }
            Scope::Full => {
                for n in [0usize, 1, 2, 4, 8] {
                    for alpha in [0.5, 1.5] {
                        for sign in [LimitSign::Plus, LimitSign::Minus] {
                            jobs.push(Box::new(move || {
                                Ok(limit_check_base(n, alpha, sign, &BETA_SCHEDULE, window)
                                    .with_tolerance(tol.limit))
                            }));
                        }
                    }
                }
                for (pair, g) in [(LimitPair::J1ToL2, 1.0), (LimitPair::J2ToL1, 1.5)] {
                    for ell in 1..=2 {
                        for n in 0..=2 {
                            jobs.push(Box::new(move || {
                                limit_check_family(pair, ell, n, g, &H_SCHEDULE, window)
                                    .map(|r| r.with_tolerance(tol.limit))
                            }));
                        }
                    }
                }
            }
        }
    }

    if kind.includes(CheckKind::Spectrum) {
        let l2 = (Family::L2, 2usize, ParamSet::laguerre(1.5));
        let j1 = (Family::J1, 1usize, ParamSet::jacobi(1.0, 2.0));
        jobs.push(Box::new(move || {
            spectrum_check(
                l2.0,
                l2.1,
                l2.2,
                default_grid(l2.2.kind()),
                4,
                tol.spectrum_laguerre,
            )
        }));
        jobs.push(Box::new(move || {
            spectrum_check(
                j1.0,
                j1.1,
                j1.2,
                default_grid(j1.2.kind()),
                3,
                tol.spectrum_jacobi,
            )
        }));
        if scope == Scope::Full {
            for (f, ell, p, k) in [(l2.0, l2.1, l2.2, 4usize), (j1.0, j1.1, j1.2, 3)] {
                jobs.push(Box::new(move || {
                    spectrum_order_check(
                        f,
                        ell,
                        p,
                        default_grid(p.kind()),
                        &[1000, 2000, 4000],
                        k,
                        tol.spectrum_order,
                    )
                }));
            }
        }
    }
    jobs
}

/// Runs the checks of `kind` within `scope` on all available cores and
/// returns the reports in deterministic (sorted-key) order. The first error
/// encountered, in that order, is returned instead.
pub fn run_battery(kind: CheckKind, scope: Scope, tol: &Tolerances) -> Result<Vec<CheckReport>> {
    let jobs = jobs(kind, scope, tol);
    let results: Mutex<Vec<Option<Result<CheckReport>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(jobs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = jobs[i]();
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let mut reports = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| r.sort_key());
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_matrix_has_thirty_systems() {
        assert_eq!(systems(Scope::Full).len(), 30);
        assert_eq!(systems(Scope::Quick).len(), 8);
    }

    #[test]
    fn quick_battery_passes_in_order() {
        let reports = run_battery(CheckKind::All, Scope::Quick, &Tolerances::default()).unwrap();
        assert!((25..=40).contains(&reports.len()), "{}", reports.len());
        for r in &reports {
            assert!(r.pass, "{}", serde_json::to_string(r).unwrap());
        }
        let keys: Vec<String> = reports.iter().map(|r| r.sort_key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
