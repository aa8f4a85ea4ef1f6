//! Deformed Hamiltonians in the physical coordinate `x`.
//!
//! For a family, degree `l` and couplings `lambda` the prepotential is
//!
//! ```text
//! w_l(x) = w_0(x; lambda + l delta) + log xi_l(eta(x); lambda + delta) / xi_l(eta(x); lambda)
//! ```
//!
//! and everything else follows from it: `U_l = (w_l')^2 + w_l''`,
//! `psi_l = exp(w_0(x; lambda + l delta)) / xi_l(eta(x); lambda)` and
//! `phi_{l,n} = psi_l P_{l,n}(eta(x))`. All `x`-derivatives are assembled
//! analytically through the chain rule and polynomial derivatives.
//!
//! DPT polynomials are evaluated in `t = eta - 1 = -2 sin^2 x` when the
//! groundstate leans towards `x = 0` (`g <= h`) and in `u = eta + 1 = 2 cos^2 x`
//! otherwise. Both are computed without cancellation, which keeps evaluation
//! accurate for large couplings.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::families::{
    energy, validate_kind, validate_params, xi_raw, xpoly_raw, Expansion, Family, Kind, ParamSet,
};
use crate::poly::Polynomial;

/// A value with its first and second `x`-derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Derivs {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Pointwise values of the quantities attached to one eigenstate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointEval {
    pub x: f64,
    pub w: f64,
    pub dw: f64,
    pub d2w: f64,
    pub potential: f64,
    pub psi: f64,
    pub phi: f64,
    /// `(sign, log|phi|)`.
    pub log_phi: (f64, f64),
}

fn domain_of(kind: Kind) -> (f64, f64, &'static str) {
    match kind {
        Kind::Laguerre => (0.0, f64::INFINITY, "0 < x < inf"),
        Kind::Jacobi => (0.0, FRAC_PI_2, "0 < x < pi/2"),
    }
}

fn check_domain(kind: Kind, x: f64) -> Result<()> {
    let (lo, hi, domain) = domain_of(kind);
    if x.is_finite() && x > lo && x < hi {
        Ok(())
    } else {
        Err(Error::DomainError { x, domain })
    }
}

/// Sinusoidal coordinate: `x^2` for the oscillator, `cos 2x` for DPT.
pub fn eta(kind: Kind, x: f64) -> Result<f64> {
    check_domain(kind, x)?;
    Ok(match kind {
        Kind::Laguerre => x * x,
        Kind::Jacobi => (2.0 * x).cos(),
    })
}

/// `(eta'(x), eta''(x))`.
pub fn eta_derivs(kind: Kind, x: f64) -> Result<(f64, f64)> {
    check_domain(kind, x)?;
    Ok(match kind {
        Kind::Laguerre => (2.0 * x, 2.0),
        Kind::Jacobi => (-2.0 * (2.0 * x).sin(), -4.0 * (2.0 * x).cos()),
    })
}

/// Expansion point of the DPT polynomials of a coupling choice.
fn expansion_for(params: &ParamSet) -> Expansion {
    match params.kind() {
        Kind::Jacobi if params.g() > params.h() => Expansion::AboutMinusOne,
        _ => Expansion::AboutOne,
    }
}

/// The variable the system's polynomials are expanded in, with its derivatives:
/// `eta` for the oscillator, `eta - 1` or `eta + 1` for DPT.
fn chart(kind: Kind, exp: Expansion, x: f64) -> Derivs {
    match kind {
        Kind::Laguerre => Derivs {
            value: x * x,
            d1: 2.0 * x,
            d2: 2.0,
        },
        Kind::Jacobi => {
            let value = match exp {
                Expansion::AboutMinusOne => 2.0 * x.cos().powi(2),
                _ => -2.0 * x.sin().powi(2),
            };
            Derivs {
                value,
                d1: -2.0 * (2.0 * x).sin(),
                d2: -4.0 * (2.0 * x).cos(),
            }
        }
    }
}

/// Undeformed prepotential `w_0`: `-x^2/2 + g log x` or `g log sin x + h log cos x`.
pub fn w0(kind: Kind, x: f64, params: &ParamSet) -> Result<Derivs> {
    check_domain(kind, x)?;
    if params.kind() != kind {
        return Err(Error::InvalidParams(format!(
            "{params} do not match {kind:?}"
        )));
    }
    Ok(w0_unchecked(kind, x, params.g(), params.h()))
}

fn w0_unchecked(kind: Kind, x: f64, g: f64, h: f64) -> Derivs {
    match kind {
        Kind::Laguerre => Derivs {
            value: -0.5 * x * x + g * x.ln(),
            d1: -x + g / x,
            d2: -1.0 - g / (x * x),
        },
        Kind::Jacobi => {
            let (s, c) = x.sin_cos();
            Derivs {
                value: g * s.ln() + h * c.ln(),
                d1: g * c / s - h * s / c,
                d2: -g / (s * s) - h / (c * c),
            }
        }
    }
}

/// A polynomial with its first two derivatives, ready for evaluation.
#[derive(Clone, Debug)]
struct Jet {
    p: Polynomial,
    d1: Polynomial,
    d2: Polynomial,
}

impl Jet {
    fn new(p: Polynomial) -> Self {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        Jet { p, d1, d2 }
    }

    fn at(&self, v: f64) -> (f64, f64, f64) {
        (self.p.eval(v), self.d1.eval(v), self.d2.eval(v))
    }

    /// `x`-derivatives of `f(v(x))`.
    fn compose(&self, c: &Derivs) -> Derivs {
        let (f, f1, f2) = self.at(c.value);
        Derivs {
            value: f,
            d1: c.d1 * f1,
            d2: c.d2 * f1 + c.d1 * c.d1 * f2,
        }
    }

    /// `x`-derivatives of `log|f(v(x))|`, or `None` where `f` vanishes.
    fn log_compose(&self, c: &Derivs) -> Option<Derivs> {
        let (f, f1, f2) = self.at(c.value);
        if f == 0.0 || !f.is_finite() {
            return None;
        }
        let r = f1 / f;
        let dr = f2 / f - r * r;
        Some(Derivs {
            value: f.abs().ln(),
            d1: c.d1 * r,
            d2: c.d2 * r + c.d1 * c.d1 * dr,
        })
    }
}

/// One eigenpolynomial of a system, in the system's evaluation variable.
#[derive(Clone, Debug)]
pub struct Eigenstate {
    n: usize,
    jet: Jet,
    energy: f64,
}

impl Eigenstate {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }
}

/// A deformed (or, with `l = 0`, undeformed) Hamiltonian `H_l(x; lambda)`.
#[derive(Clone, Debug)]
pub struct System {
    family: Family,
    ell: usize,
    params: ParamSet,
    xi: Jet,
    xi_next: Jet,
    exp: Expansion,
    support: OnceLock<(f64, f64)>,
}

/// Pointwise residual floor relative to the largest sampled `|phi|`.
pub const RESIDUAL_FLOOR: f64 = 1e-3;

/// Default number of interior sample points.
pub const INTERIOR_POINTS: usize = 100;

impl System {
    /// Validated constructor; `params` must satisfy the family's coupling range.
    pub fn new(family: Family, ell: usize, params: ParamSet) -> Result<Self> {
        validate_params(family, &params)?;
        if family.is_classical() && ell != 0 {
            return Err(Error::InvalidParams(format!(
                "classical family {family} has l = 0, got l = {ell}"
            )));
        }
        Self::build(family, ell, params)
    }

    /// Constructor that checks only positivity of the couplings, not the
    /// `J1`/`J2` ordering. Used for formal limits such as `J2` at `h > g`.
    pub fn new_unchecked(family: Family, ell: usize, params: ParamSet) -> Result<Self> {
        validate_kind(family, &params)?;
        Self::build(family, ell, params)
    }

    /// The undeformed system of the given kind.
    pub fn classical(params: ParamSet) -> Result<Self> {
        let family = match params.kind() {
            Kind::Laguerre => Family::L,
            Kind::Jacobi => Family::J,
        };
        Self::new(family, 0, params)
    }

    fn build(family: Family, ell: usize, params: ParamSet) -> Result<Self> {
        let l = ell as i32;
        let next = params.shifted(1.0);
        let exp = expansion_for(&params);
        Ok(System {
            family,
            ell,
            params,
            xi: Jet::new(xi_raw(family, l, params.g(), params.h(), exp)?),
            xi_next: Jet::new(xi_raw(family, l, next.g(), next.h(), exp)?),
            exp,
            support: OnceLock::new(),
        })
    }

    fn chart(&self, x: f64) -> Derivs {
        chart(self.kind(), self.exp, x)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn params(&self) -> ParamSet {
        self.params
    }

    pub fn kind(&self) -> Kind {
        self.family.kind()
    }

    /// Open physical interval `(x_1, x_2)`.
    pub fn domain(&self) -> (f64, f64) {
        let (lo, hi, _) = domain_of(self.kind());
        (lo, hi)
    }

    /// The same family and degree at `lambda + delta`.
    pub fn shifted(&self) -> Result<System> {
        Self::build(self.family, self.ell, self.params.shifted(1.0))
    }

    /// `E_n(lambda + l delta)`.
    pub fn energy(&self, n: usize) -> f64 {
        energy(self.family, self.ell, n, &self.params)
    }

    fn w0_shifted(&self, x: f64) -> Derivs {
        let p = self.params.shifted(self.ell as f64);
        w0_unchecked(self.kind(), x, p.g(), p.h())
    }

    /// Deformed prepotential `w_l` with exact first and second derivatives.
    pub fn prepotential(&self, x: f64) -> Result<Derivs> {
        check_domain(self.kind(), x)?;
        let c = self.chart(x);
        let base = self.w0_shifted(x);
        let top = self.xi_next.log_compose(&c).ok_or(Error::SingularXi(x))?;
        let bottom = self.xi.log_compose(&c).ok_or(Error::SingularXi(x))?;
        Ok(Derivs {
            value: base.value + top.value - bottom.value,
            d1: base.d1 + top.d1 - bottom.d1,
            d2: base.d2 + top.d2 - bottom.d2,
        })
    }

    /// `U_l = (w_l')^2 + w_l''`.
    pub fn potential(&self, x: f64) -> Result<f64> {
        let w = self.prepotential(x)?;
        Ok(w.d1 * w.d1 + w.d2)
    }

    /// Sign of `psi_l` and the derivatives of `log|psi_l|`.
    fn log_psi(&self, x: f64) -> Result<(f64, Derivs)> {
        check_domain(self.kind(), x)?;
        let c = self.chart(x);
        let base = self.w0_shifted(x);
        let xi = self.xi.log_compose(&c).ok_or(Error::SingularXi(x))?;
        let sign = self.xi.p.eval(c.value).signum();
        Ok((
            sign,
            Derivs {
                value: base.value - xi.value,
                d1: base.d1 - xi.d1,
                d2: base.d2 - xi.d2,
            },
        ))
    }

    /// `psi_l(x) = exp(w_0(x; lambda + l delta)) / xi_l(eta(x); lambda)`.
    pub fn psi(&self, x: f64) -> Result<f64> {
        let (sign, s) = self.log_psi(x)?;
        Ok(sign * s.value.exp())
    }

    /// `P_{l,n}` prepared for pointwise evaluation.
    pub fn eigenstate(&self, n: usize) -> Result<Eigenstate> {
        let p = xpoly_raw(self.family, self.ell, n, &self.params, self.exp)?;
        Ok(Eigenstate {
            n,
            jet: Jet::new(p.poly),
            energy: self.energy(n),
        })
    }

    /// `P_{l,n}(eta(x))`.
    pub fn eigenpolynomial_at(&self, state: &Eigenstate, x: f64) -> Result<f64> {
        check_domain(self.kind(), x)?;
        Ok(state.jet.p.eval(self.chart(x).value))
    }

    /// `xi_l(eta(x); lambda)`.
    pub fn xi_at(&self, x: f64) -> Result<f64> {
        check_domain(self.kind(), x)?;
        Ok(self.xi.p.eval(self.chart(x).value))
    }

    /// `(sign, log|phi_{l,n}(x)|)`; stable near the domain edges.
    pub fn eigenfunction_log(&self, n: usize, x: f64) -> Result<(f64, f64)> {
        let state = self.eigenstate(n)?;
        self.log_phi(&state, x)
    }

    fn log_phi(&self, state: &Eigenstate, x: f64) -> Result<(f64, f64)> {
        let (sign, s) = self.log_psi(x)?;
        let q = state.jet.p.eval(self.chart(x).value);
        if q == 0.0 {
            return Ok((0.0, f64::NEG_INFINITY));
        }
        Ok((sign * q.signum(), s.value + q.abs().ln()))
    }

    /// `phi_{l,n}(x) = psi_l(x) P_{l,n}(eta(x))`.
    pub fn eigenfunction(&self, n: usize, x: f64) -> Result<f64> {
        let state = self.eigenstate(n)?;
        self.phi(&state, x)
    }

    pub fn phi(&self, state: &Eigenstate, x: f64) -> Result<f64> {
        let (sign, log) = self.log_phi(state, x)?;
        Ok(sign * log.exp())
    }

    /// All pointwise quantities of eigenstate `n` at `x`.
    pub fn point(&self, n: usize, x: f64) -> Result<PointEval> {
        let state = self.eigenstate(n)?;
        let w = self.prepotential(x)?;
        let log_phi = self.log_phi(&state, x)?;
        Ok(PointEval {
            x,
            w: w.value,
            dw: w.d1,
            d2w: w.d2,
            potential: w.d1 * w.d1 + w.d2,
            psi: self.psi(x)?,
            phi: log_phi.0 * log_phi.1.exp(),
            log_phi,
        })
    }

    /// `(phi, -phi'' + (U - E) phi)` with `phi''` from the product rule on
    /// `psi_l P_{l,n}(eta(x))`.
    fn eigen_terms(&self, state: &Eigenstate, x: f64) -> Result<(f64, f64)> {
        let (sign, s) = self.log_psi(x)?;
        let c = self.chart(x);
        let q = state.jet.compose(&c);
        let u = self.potential(x)?;
        let psi = sign * s.value.exp();
        let bracket = -((s.d2 + s.d1 * s.d1) * q.value + 2.0 * s.d1 * q.d1 + q.d2)
            + (u - state.energy) * q.value;
        Ok((psi * q.value, psi * bracket))
    }

    /// Normalized eigen-equation residuals `(H - E) phi / max(|phi|, floor)` at
    /// each point, with `floor = 1e-3 * max |phi|` over the points.
    pub fn residual_profile(&self, n: usize, xs: &[f64]) -> Result<Vec<f64>> {
        let state = self.eigenstate(n)?;
        let terms = xs
            .iter()
            .map(|&x| self.eigen_terms(&state, x))
            .collect::<Result<Vec<_>>>()?;
        let sup = terms.iter().fold(0.0, |m: f64, t| m.max(t.0.abs()));
        let floor = RESIDUAL_FLOOR * sup;
        Ok(terms
            .into_iter()
            .map(|(phi, r)| r / phi.abs().max(floor))
            .collect())
    }

    /// Eigen-equation residual at a single point, normalized against the
    /// default interior sample.
    pub fn schrodinger_residual(&self, n: usize, x: f64) -> Result<f64> {
        let state = self.eigenstate(n)?;
        let sup = self
            .interior_points(INTERIOR_POINTS)
            .iter()
            .map(|&p| self.phi(&state, p).map(f64::abs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let (phi, r) = self.eigen_terms(&state, x)?;
        Ok(r / phi.abs().max(RESIDUAL_FLOOR * sup))
    }

    /// `(w'(lambda))^2 - w''(lambda) - (w'(lambda+delta))^2 - w''(lambda+delta) - E_1(lambda + l delta)`.
    pub fn shape_invariance_residual(&self, x: f64) -> Result<f64> {
        let next = self.shifted()?;
        self.shape_residual_with(&next, x)
    }

    fn shape_residual_with(&self, next: &System, x: f64) -> Result<f64> {
        let a = self.prepotential(x)?;
        let b = next.prepotential(x)?;
        let lhs = a.d1 * a.d1 - a.d2;
        let rhs = b.d1 * b.d1 + b.d2 + self.energy(1);
        Ok(lhs - rhs)
    }

    pub fn shape_profile(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let next = self.shifted()?;
        xs.iter()
            .map(|&x| self.shape_residual_with(&next, x))
            .collect()
    }

    /// `(A_l phi_{l,0})(x) / |phi_{l,0}(x)|` with `A_l = d/dx - w_l'`.
    pub fn annihilation_residual(&self, x: f64) -> Result<f64> {
        let state = self.eigenstate(0)?;
        let (sign, s) = self.log_psi(x)?;
        let q = state.jet.compose(&self.chart(x));
        let w = self.prepotential(x)?;
        // phi' - w' phi = psi (s' q + q' - w' q), divided by |psi q|
        Ok(sign * q.value.signum() * (s.d1 + q.d1 / q.value - w.d1))
    }

    /// Quantiles `(1%, 99%)` of the groundstate mass `exp(2 w_l)`.
    pub fn ground_state_support(&self) -> (f64, f64) {
        *self
            .support
            .get_or_init(|| self.compute_support(0.01, 0.99))
    }

    fn compute_support(&self, qlo: f64, qhi: f64) -> (f64, f64) {
        const M: usize = 4000;
        let hi = match self.kind() {
            Kind::Laguerre => (self.params.g() + self.ell as f64).sqrt() + 6.0,
            Kind::Jacobi => FRAC_PI_2,
        };
        let dx = hi / M as f64;
        let xs: Vec<f64> = (0..M).map(|i| (i as f64 + 0.5) * dx).collect();
        let logs: Vec<f64> = xs
            .iter()
            .map(|&x| {
                self.prepotential(x)
                    .map(|w| 2.0 * w.value)
                    .unwrap_or(f64::NEG_INFINITY)
            })
            .collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut cum = Vec::with_capacity(M);
        let mut acc = 0.0;
        for l in &logs {
            acc += (l - top).exp();
            cum.push(acc);
        }
        let quantile = |q: f64| {
            let target = q * acc;
            let i = cum.partition_point(|&c| c < target);
            if i == 0 {
                return xs[0];
            }
            let (c0, c1) = (cum[i - 1], cum[i]);
            let t = if c1 > c0 {
                (target - c0) / (c1 - c0)
            } else {
                0.0
            };
            xs[i - 1] + t * dx
        };
        (quantile(qlo), quantile(qhi))
    }

    /// `count` Chebyshev points spread over the groundstate support, ascending.
    pub fn interior_points(&self, count: usize) -> Vec<f64> {
        let (lo, hi) = self.ground_state_support();
        chebyshev_points(lo, hi, count)
    }
}

/// Chebyshev points of the first kind on `[lo, hi]`, ascending.
pub fn chebyshev_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let m = count as f64;
    (0..count)
        .rev()
        .map(|k| mid + half * ((2.0 * k as f64 + 1.0) * std::f64::consts::PI / (2.0 * m)).cos())
        .collect()
}
