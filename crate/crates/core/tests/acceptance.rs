//! Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
//! here as literals and do not follow `XELL_TOL_SCALE`.

use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;

use xell::verify::{
    coincidence_poly_check, coincidence_potential_check, eigen_check, limit_check_base,
    limit_check_family, mirror_check, ortho_check, shape_check, sign_check, spectrum_check,
    spectrum_order_check, systems, CheckReport, FdGrid, LimitPair, LimitSign, Scope, SlopeWindow,
    BETA_SCHEDULE, H_SCHEDULE,
};
use xell::{Family, ParamSet, Result};

/// Reports of one criterion; `worst` is the largest `metric / tolerance`
/// (`0/0` counts as `0`).
struct Outcome {
    reports: usize,
    failures: Vec<String>,
    worst: f64,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            reports: 0,
            failures: Vec::new(),
            worst: 0.0,
        }
    }

    fn add(&mut self, r: Result<CheckReport>) {
        self.reports += 1;
        match r {
            Ok(r) => {
                let ratio = if r.metric() == 0.0 {
                    0.0
                } else {
                    r.metric() / r.tolerance()
                };
                self.worst = if ratio.is_nan() {
                    f64::NAN
                } else {
                    self.worst.max(ratio)
                };
                if !r.pass {
                    self.failures.push(format!(
                        "{} {} metric={:e}",
                        r.check,
                        r.params_string(),
                        r.metric()
                    ));
                }
            }
            Err(e) => {
                self.worst = f64::NAN;
                self.failures.push(format!("error: {e}"));
            }
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn ortho(o: &mut Outcome) {
    for (f, ell, p) in systems(Scope::Full) {
        o.add(ortho_check(f, ell, p, 5, 1e-8));
    }
}

fn eigen(o: &mut Outcome) {
    for (f, ell, p) in systems(Scope::Full) {
        o.add(eigen_check(f, ell, p, 4, 1e-8));
    }
}

fn shape(o: &mut Outcome) {
    for (f, ell, p) in systems(Scope::Full) {
        o.add(shape_check(f, ell, p, 1e-9));
    }
}

fn mirror(o: &mut Outcome) {
    for (g, h) in [(2.0, 0.5), (3.0, 1.0)] {
        for ell in 1..=3 {
            for n in 0..=4 {
                o.add(mirror_check(ell, n, g, h, 1e-10));
            }
        }
    }
}

fn coincidence(o: &mut Outcome) {
    for g in [0.7, 1.5, 2.0, 3.0] {
        o.add(coincidence_poly_check(ParamSet::laguerre(g), 5, 1e-12));
        o.add(coincidence_potential_check(g, 1e-10));
    }
    for (g, h) in [(1.0, 2.0), (0.5, 3.0), (2.0, 0.5), (3.0, 1.0)] {
        o.add(coincidence_poly_check(ParamSet::jacobi(g, h), 5, 1e-12));
    }
}

fn limits(o: &mut Outcome) {
    let window = SlopeWindow { lo: 0.8, hi: 1.2 };
    for n in 0..=8 {
        for alpha in [0.5, 1.5, 4.0] {
            for sign in [LimitSign::Plus, LimitSign::Minus] {
                let r = limit_check_base(n, alpha, sign, &BETA_SCHEDULE, window);
                let last = r.details["error_at_largest"].0;
                let bound = 1e-3 * r.details["fitted_constant"].0;
                if n > 0 && !(last < bound) {
                    o.fail(format!("base n={n} alpha={alpha}: {last:e} >= {bound:e}"));
                }
                o.add(Ok(r));
            }
        }
    }
    for (pair, g) in [(LimitPair::J1ToL2, 1.0), (LimitPair::J2ToL1, 1.5)] {
        for ell in 1..=2 {
            for n in 0..=2 {
                let r = limit_check_family(pair, ell, n, g, &H_SCHEDULE, window);
                if let Ok(rep) = &r {
                    for c in &rep.convergence {
                        let s = c.slope.0;
                        let decreasing = c.values.windows(2).all(|w| w[1].0 < w[0].0);
                        if !(0.8..=1.2).contains(&s) || !decreasing {
                            o.fail(format!(
                                "{} l={ell} n={n} {}: slope {s}",
                                pair.name(),
                                c.label
                            ));
                        }
                    }
                }
                o.add(r);
            }
        }
    }
}

fn spectrum(o: &mut Outcome) {
    let l2 = (Family::L2, 2, ParamSet::laguerre(1.5));
    let j1 = (Family::J1, 1, ParamSet::jacobi(1.0, 2.0));
    let gl = FdGrid::new(1e-3, 12.0, 4000);
    let gj = FdGrid::new(1e-3, FRAC_PI_2 - 1e-3, 4000);
    o.add(spectrum_check(l2.0, l2.1, l2.2, gl, 4, 1e-2));
    o.add(spectrum_check(j1.0, j1.1, j1.2, gj, 3, 5e-2));
    // error ratio ~4 per doubling, i.e. observed order 2 +- 0.2
    o.add(spectrum_order_check(
        l2.0,
        l2.1,
        l2.2,
        gl,
        &[1000, 2000, 4000],
        4,
        0.2,
    ));
    o.add(spectrum_order_check(
        j1.0,
        j1.1,
        j1.2,
        gj,
        &[1000, 2000, 4000],
        3,
        0.2,
    ));
}

fn sign(o: &mut Outcome) {
    for (f, ell, p) in systems(Scope::Full) {
        o.add(sign_check(f, ell, p, 0.0));
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn(&mut Outcome));
    let criteria: [Criterion; 8] = [
        ("1 orthogonality and closed-form norms", ortho),
        ("2 eigen-equation residual", eigen),
        ("3 shape invariance residual", shape),
        ("4 mirror identities", mirror),
        ("5 l=1 coincidences", coincidence),
        ("6 infinite-coupling limits", limits),
        ("7 finite-difference spectrum", spectrum),
        ("8 sign constancy of xi", sign),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        let mut o = Outcome::new();
        run(&mut o);
        let pass = o.failures.is_empty();
        all &= pass;
        println!(
            "[{}] criterion {name}: {} reports, worst metric/tolerance {:.3e}, {:.2}s",
            if pass { "PASS" } else { "FAIL" },
            o.reports,
            o.worst,
            start.elapsed().as_secs_f64()
        );
        for f in &o.failures {
            println!("    {f}");
        }
    }
    if all {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
