//! The `xell` command line: `eval`, `coeffs`, `table` and `check`.
//!
//! Exit codes: `0` success (every report passed), `1` some check failed,
//! `2` invalid parameters or usage, `3` point outside the domain,
//! `4` no convergence (quadrature or FD grid), `5` any other error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{energy, norm_closed, xpoly, Family, Kind, ParamSet};
use crate::schrodinger::System;
use crate::verify::report::{format_num, params as param_map, CheckReport, Num, ParamValue};
use crate::verify::{
    coincidence_poly_check, coincidence_potential_check, default_grid, eigen_check, gram_matrix,
    limit_check_base, limit_check_family, mirror_check, ortho_check, run_battery, shape_check,
    sign_check, spectrum_check, CheckKind, FdGrid, GramOptions, LimitPair, LimitSign, Scope,
    SlopeWindow, Tolerances, BETA_SCHEDULE, H_SCHEDULE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_PARAMS: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;
pub const EXIT_OTHER: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "xell",
    version,
    about = "Exceptional Laguerre and Jacobi polynomials and their potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// One of L, J (classical, l = 0), L1, L2, J1, J2.
    #[arg(long)]
    pub family: Family,
    /// Deformation degree l.
    #[arg(long, default_value_t = 0)]
    pub ell: usize,
    /// Coupling g.
    #[arg(long)]
    pub g: f64,
    /// Coupling h (DPT families only).
    #[arg(long)]
    pub h: Option<f64>,
}

impl SystemArgs {
    fn params(&self) -> Result<ParamSet> {
        make_params(self.family.kind(), self.g, self.h)
    }
}

fn make_params(kind: Kind, g: f64, h: Option<f64>) -> Result<ParamSet> {
    match (kind, h) {
        (Kind::Laguerre, None) => Ok(ParamSet::laguerre(g)),
        (Kind::Laguerre, Some(_)) => Err(Error::InvalidParams(
            "--h is only defined for DPT families".into(),
        )),
        (Kind::Jacobi, Some(h)) => Ok(ParamSet::jacobi(g, h)),
        (Kind::Jacobi, None) => Err(Error::InvalidParams("DPT families require --h".into())),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// P_{l,n}(eta(x)), phi_{l,n}(x), U_l(x) and E_n at one point.
    Eval {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Coefficients of P_{l,n} in eta, ascending.
    Coeffs {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Energies and closed-form vs quadrature norms for n = 0..=n_max.
    Table {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run verification checks and emit one record per report.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
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

impl From<Which> for CheckKind {
    fn from(w: Which) -> Self {
        match w {
            Which::Ortho => CheckKind::Ortho,
            Which::Eigen => CheckKind::Eigen,
            Which::Shape => CheckKind::Shape,
            Which::Mirror => CheckKind::Mirror,
            Which::Coincidence => CheckKind::Coincidence,
            Which::Limit => CheckKind::Limit,
            Which::Spectrum => CheckKind::Spectrum,
            Which::Sign => CheckKind::Sign,
            Which::All => CheckKind::All,
        }
    }
}

/// Without targeting flags a predefined battery runs; with them a single
/// check runs at the given parameters.
#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub which: Which,
    /// Bounded battery: l <= 2, n <= 3 at default couplings (the default).
    #[arg(long, conflicts_with = "full")]
    pub quick: bool,
    /// The full acceptance matrix.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Limit pair, J1L2 or J2L1.
    #[arg(long)]
    pub pair: Option<LimitPair>,
    /// Base-polynomial limit parameter alpha (with `check limit`).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Base-polynomial limit sign, + or - (with `check limit`).
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Interior FD grid points (with `check spectrum`).
    #[arg(long)]
    pub points: Option<usize>,
    /// Number of FD eigenvalues (with `check spectrum`).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl CheckArgs {
    fn targeted(&self) -> bool {
        self.family.is_some() || self.g.is_some() || self.pair.is_some() || self.alpha.is_some()
    }
}

/// Exit code of an error class.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParams(_) | Error::InvalidWeightParams(_) => EXIT_INVALID_PARAMS,
        Error::DomainError { .. } | Error::SingularXi(_) => EXIT_DOMAIN,
        Error::NoConvergence { .. } | Error::GridTooCoarse { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_OTHER,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing records to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID_PARAMS
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Eval {
            system,
            n,
            x,
            format,
        } => cmd_eval(&system, n, x, format, out),
        Command::Coeffs { system, n, format } => cmd_coeffs(&system, n, format, out),
        Command::Table {
            system,
            n_max,
            format,
        } => cmd_table(&system, n_max, format, out),
        Command::Check(args) => cmd_check(&args, out, err),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidParams(format!("output error: {e}"))
}

#[derive(Serialize)]
struct EvalRecord {
    family: String,
    ell: usize,
    n: usize,
    params: std::collections::BTreeMap<String, ParamValue>,
    x: Num,
    eta: Num,
    #[serde(rename = "P")]
    p: Num,
    phi: Num,
    #[serde(rename = "U")]
    u: Num,
    #[serde(rename = "E")]
    e: Num,
}

fn param_record(p: &ParamSet) -> std::collections::BTreeMap<String, ParamValue> {
    let mut m = param_map([("g", ParamValue::from(p.g()))]);
    if p.kind() == Kind::Jacobi {
        m.insert("h".into(), p.h().into());
    }
    m
}

/// Evaluates at `x` in the closed domain. At an endpoint only `P` is finite
/// in general: `phi` is its limit `0` and `U` is reported as `null`.
pub fn cmd_eval(
    sys: &SystemArgs,
    n: usize,
    x: f64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let p = sys.params()?;
    let poly = xpoly(sys.family, sys.ell, n, &p)?;
    let system = System::new(sys.family, sys.ell, p)?;
    let (lo, hi) = system.domain();
    if !(x >= lo && x <= hi) {
        return Err(Error::DomainError {
            x,
            domain: match sys.family.kind() {
                Kind::Laguerre => "0 <= x",
                Kind::Jacobi => "0 <= x <= pi/2",
            },
        });
    }
    let interior = x > lo && x < hi;
    let (eta, pv, phi, u) = if interior {
        let state = system.eigenstate(n)?;
        (
            crate::schrodinger::eta(system.kind(), x)?,
            system.eigenpolynomial_at(&state, x)?,
            system.phi(&state, x)?,
            system.potential(x)?,
        )
    } else {
        let eta = match system.kind() {
            Kind::Laguerre => x * x,
            Kind::Jacobi => (2.0 * x).cos(),
        };
        (eta, poly.eval(eta), 0.0, f64::NAN)
    };
    let rec = EvalRecord {
        family: sys.family.name().into(),
        ell: sys.ell,
        n,
        params: param_record(&p),
        x: Num(x),
        eta: Num(eta),
        p: Num(pv),
        phi: Num(phi),
        u: Num(u),
        e: Num(energy(sys.family, sys.ell, n, &p)),
    };
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&rec).expect("serializable")
        )
        .map_err(io)?,
        Format::Csv => {
            writeln!(out, "family,ell,n,params,x,eta,P,phi,U,E").map_err(io)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                rec.family,
                rec.ell,
                rec.n,
                params_field(&rec.params),
                format_num(x),
                format_num(eta),
                format_num(pv),
                format_num(phi),
                csv_num(u),
                format_num(rec.e.0)
            )
            .map_err(io)?
        }
    }
    Ok(EXIT_OK)
}

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        format_num(x)
    } else {
        String::new()
    }
}

fn params_field(m: &std::collections::BTreeMap<String, ParamValue>) -> String {
    m.iter()
        .map(|(k, v)| match v {
            ParamValue::Str(s) => format!("{k}={s}"),
            ParamValue::Num(x) => format!("{k}={}", format_num(*x)),
        })
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct CoeffRecord {
    family: String,
    ell: usize,
    n: usize,
    params: std::collections::BTreeMap<String, ParamValue>,
    degree: isize,
    coeffs: Vec<Num>,
}

pub fn cmd_coeffs(sys: &SystemArgs, n: usize, format: Format, out: &mut dyn Write) -> Result<i32> {
    let p = sys.params()?;
    let poly = xpoly(sys.family, sys.ell, n, &p)?;
    let degree = poly.degree();
    if degree != (sys.ell + n) as isize {
        return Err(Error::ZeroDenominator(
            "degree of P_{l,n} differs from l + n",
        ));
    }
    let coeffs: Vec<f64> = poly.poly.coeffs().to_vec();
    match format {
        Format::Json => {
            let rec = CoeffRecord {
                family: sys.family.name().into(),
                ell: sys.ell,
                n,
                params: param_record(&p),
                degree,
                coeffs: coeffs.iter().map(|&c| Num(c)).collect(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&rec).expect("serializable")
            )
            .map_err(io)?;
        }
        Format::Csv => {
            writeln!(out, "power,coefficient").map_err(io)?;
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(out, "{k},{}", format_num(*c)).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    #[serde(rename = "E")]
    e: Num,
    norm_closed: Num,
    norm_quadrature: Num,
    gap: Num,
}

pub fn cmd_table(
    sys: &SystemArgs,
    n_max: usize,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let p = sys.params()?;
    let system = System::new(sys.family, sys.ell, p)?;
    let gm = gram_matrix(&system, n_max, GramOptions::default())?;
    let rows = gm
        .diagonal()
        .into_iter()
        .enumerate()
        .map(|(n, q)| {
            let c = norm_closed(sys.family, sys.ell, n, &p)?;
            Ok(TableRow {
                n,
                e: Num(energy(sys.family, sys.ell, n, &p)),
                norm_closed: Num(c),
                norm_quadrature: Num(q),
                gap: Num((q / c - 1.0).abs()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => {
            for r in &rows {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable")).map_err(io)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,E,norm_closed,norm_quadrature,gap").map_err(io)?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    format_num(r.e.0),
                    format_num(r.norm_closed.0),
                    format_num(r.norm_quadrature.0),
                    format_num(r.gap.0)
                )
                .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// CSV header of check reports.
pub const CHECK_CSV_HEADER: &str = "check,params,metric,tolerance,pass,max,rms";

/// One CSV row of a report; numbers carry the same 17 digits as the JSON form.
pub fn report_csv(r: &CheckReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.check,
        r.params_string(),
        format_num(r.metric.0),
        format_num(r.tolerance.0),
        r.pass,
        format_num(r.max.0),
        format_num(r.rms.0)
    )
}

fn require<T>(v: Option<T>, flag: &str, which: &str) -> Result<T> {
    v.ok_or_else(|| {
        Error::InvalidParams(format!(
            "`check {which}` at explicit parameters requires --{flag}"
        ))
    })
}

fn targeted_report(a: &CheckArgs, tol: &Tolerances) -> Result<CheckReport> {
    let name = format!("{:?}", a.which).to_ascii_lowercase();
    let system = |a: &CheckArgs| -> Result<(Family, usize, ParamSet)> {
        let family = require(a.family, "family", &name)?;
        let g = require(a.g, "g", &name)?;
        Ok((
            family,
            a.ell.unwrap_or(1),
            make_params(family.kind(), g, a.h)?,
        ))
    };
    match a.which {
        Which::Ortho => {
            let (f, l, p) = system(a)?;
            ortho_check(f, l, p, a.n_max.unwrap_or(5), tol.ortho)
        }
        Which::Eigen => {
            let (f, l, p) = system(a)?;
            eigen_check(f, l, p, a.n.or(a.n_max).unwrap_or(4), tol.eigen)
        }
        Which::Shape => {
            let (f, l, p) = system(a)?;
            shape_check(f, l, p, tol.shape)
        }
        Which::Sign => {
            let (f, l, p) = system(a)?;
            sign_check(f, l, p, tol.sign)
        }
        Which::Mirror => {
            let g = require(a.g, "g", &name)?;
            let h = require(a.h, "h", &name)?;
            mirror_check(a.ell.unwrap_or(1), a.n.unwrap_or(0), g, h, tol.mirror)
        }
        Which::Coincidence => {
            let g = require(a.g, "g", &name)?;
            match a.h {
                Some(h) => coincidence_poly_check(
                    ParamSet::jacobi(g, h),
                    a.n_max.unwrap_or(5),
                    tol.coincidence_poly,
                ),
                None if a.family.is_some_and(|f| f.kind() == Kind::Laguerre)
                    || a.family.is_none() =>
                {
                    if a.n.is_some() || a.n_max.is_some() {
                        coincidence_poly_check(
                            ParamSet::laguerre(g),
                            a.n_max.or(a.n).unwrap_or(5),
                            tol.coincidence_poly,
                        )
                    } else {
                        coincidence_potential_check(g, tol.coincidence_potential)
                    }
                }
                None => Err(Error::InvalidParams("DPT coincidence requires --h".into())),
            }
        }
        Which::Limit => {
            let window = SlopeWindow::default();
            if let Some(pair) = a.pair {
                let g = a.g.unwrap_or(match pair {
                    LimitPair::J1ToL2 => 1.0,
                    LimitPair::J2ToL1 => 1.5,
                });
                limit_check_family(
                    pair,
                    a.ell.unwrap_or(1),
                    a.n.unwrap_or(0),
                    g,
                    &H_SCHEDULE,
                    window,
                )
                .map(|r| r.with_tolerance(tol.limit))
            } else {
                let alpha = require(a.alpha, "alpha", &name)?;
                let sign = match a.sign.as_deref().unwrap_or("+") {
                    "+" | "plus" => LimitSign::Plus,
                    "-" | "minus" => LimitSign::Minus,
                    s => {
                        return Err(Error::InvalidParams(format!(
                            "--sign must be + or -, got `{s}`"
                        )))
                    }
                };
                Ok(
                    limit_check_base(a.n.unwrap_or(2), alpha, sign, &BETA_SCHEDULE, window)
                        .with_tolerance(tol.limit),
                )
            }
        }
        Which::Spectrum => {
            let (f, l, p) = system(a)?;
            let base = default_grid(f.kind());
            let grid = FdGrid {
                points: a.points.unwrap_or(base.points),
                ..base
            };
            let t = match f.kind() {
                Kind::Laguerre => tol.spectrum_laguerre,
                Kind::Jacobi => tol.spectrum_jacobi,
            };
            spectrum_check(f, l, p, grid, a.k.unwrap_or(3), t)
        }
        Which::All => Err(Error::InvalidParams(
            "`check all` runs a battery; drop the parameter flags or name a single check".into(),
        )),
    }
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let tol = Tolerances::from_env()?;
    let reports = if a.targeted() {
        vec![targeted_report(a, &tol)?]
    } else {
        let scope = if a.full { Scope::Full } else { Scope::Quick };
        run_battery(a.which.into(), scope, &tol)?
    };
    if a.format == Format::Csv {
        writeln!(out, "{CHECK_CSV_HEADER}").map_err(io)?;
    }
    for r in &reports {
        match a.format {
            Format::Json => {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable")).map_err(io)?
            }
            Format::Csv => writeln!(out, "{}", report_csv(r)).map_err(io)?,
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let failed = reports.len() - passed;
    writeln!(
        err,
        "summary: {} reports, {passed} passed, {failed} failed",
        reports.len()
    )
    .map_err(io)?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
