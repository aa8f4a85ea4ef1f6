//! The classical (radial oscillator, trigonometric DPT) and exceptional
//! (`L1`, `L2`, `J1`, `J2`) families: deforming polynomials `xi_l`,
//! eigenpolynomials `P_{l,n}`, closed-form norms and energies.
//!
//! All polynomials returned by the public functions are in the sinusoidal
//! coordinate `eta`. Index conventions: `xi_0 = 1`, `xi_l = 0` for `l < 0`,
//! `P_{-1} = 0`.

use std::fmt;
use std::str::FromStr;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::poly::{factorial, jacobi, jacobi_about_one, laguerre, Polynomial};

/// Which undeformed system a family deforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Radial oscillator, `eta = x^2`, `0 < x < inf`.
    Laguerre,
    /// Trigonometric Darboux-Poschl-Teller, `eta = cos 2x`, `0 < x < pi/2`.
    Jacobi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Undeformed radial oscillator (`l = 0` only).
    L,
    /// Undeformed trigonometric DPT (`l = 0` only).
    J,
    L1,
    L2,
    J1,
    J2,
}

impl Family {
    pub const DEFORMED: [Family; 4] = [Family::L1, Family::L2, Family::J1, Family::J2];

    pub fn kind(self) -> Kind {
        match self {
            Family::L | Family::L1 | Family::L2 => Kind::Laguerre,
            Family::J | Family::J1 | Family::J2 => Kind::Jacobi,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::L | Family::J)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::J => "J",
            Family::L1 => "L1",
            Family::L2 => "L2",
            Family::J1 => "J1",
            Family::J2 => "J2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "L" => Ok(Family::L),
            "J" => Ok(Family::J),
            "L1" => Ok(Family::L1),
            "L2" => Ok(Family::L2),
            "J1" => Ok(Family::J1),
            "J2" => Ok(Family::J2),
            _ => Err(format!(
                "unknown family `{s}` (expected one of L, J, L1, L2, J1, J2)"
            )),
        }
    }
}

/// Coupling constants. The shift `delta` is `1` for the oscillator and
/// `(1, 1)` for DPT.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParamSet {
    Laguerre { g: f64 },
    Jacobi { g: f64, h: f64 },
}

impl ParamSet {
    pub fn laguerre(g: f64) -> Self {
        ParamSet::Laguerre { g }
    }

    pub fn jacobi(g: f64, h: f64) -> Self {
        ParamSet::Jacobi { g, h }
    }

    pub fn kind(&self) -> Kind {
        match self {
            ParamSet::Laguerre { .. } => Kind::Laguerre,
            ParamSet::Jacobi { .. } => Kind::Jacobi,
        }
    }

    pub fn g(&self) -> f64 {
        match *self {
            ParamSet::Laguerre { g } | ParamSet::Jacobi { g, .. } => g,
        }
    }

    /// `h` for DPT couplings; `0` for the oscillator, where it never enters.
    pub fn h(&self) -> f64 {
        match *self {
            ParamSet::Laguerre { .. } => 0.0,
            ParamSet::Jacobi { h, .. } => h,
        }
    }

    /// `lambda + k delta`.
    pub fn shifted(&self, k: f64) -> ParamSet {
        match *self {
            ParamSet::Laguerre { g } => ParamSet::Laguerre { g: g + k },
            ParamSet::Jacobi { g, h } => ParamSet::Jacobi { g: g + k, h: h + k },
        }
    }

    /// `(g, h) -> (h, g)`; identity for the oscillator.
    pub fn swapped(&self) -> ParamSet {
        match *self {
            ParamSet::Laguerre { g } => ParamSet::Laguerre { g },
            ParamSet::Jacobi { g, h } => ParamSet::Jacobi { g: h, h: g },
        }
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamSet::Laguerre { g } => write!(f, "g={g}"),
            ParamSet::Jacobi { g, h } => write!(f, "g={g}, h={h}"),
        }
    }
}

/// Checks the admissible coupling range of a family: `g > 0` for the
/// oscillator, `g, h > 0` for DPT, with `h > g` for `J1` and `g > h` for `J2`.
pub fn validate_params(family: Family, params: &ParamSet) -> Result<()> {
    validate_kind(family, params)?;
    let (g, h) = (params.g(), params.h());
    match family {
        Family::J1 if !(h > g) => Err(Error::InvalidParams(format!(
            "J1 requires h > g > 0, got {params}"
        ))),
        Family::J2 if !(g > h) => Err(Error::InvalidParams(format!(
            "J2 requires g > h > 0, got {params}"
        ))),
        _ => Ok(()),
    }
}

/// Kind match and positivity only; the `J1`/`J2` ordering is not enforced.
pub(crate) fn validate_kind(family: Family, params: &ParamSet) -> Result<()> {
    if family.kind() != params.kind() {
        return Err(Error::InvalidParams(format!(
            "family {family} needs {} couplings, got {params}",
            match family.kind() {
                Kind::Laguerre => "oscillator (g)",
                Kind::Jacobi => "DPT (g, h)",
            }
        )));
    }
    let (g, h) = (params.g(), params.h());
    if !g.is_finite() || !h.is_finite() {
        return Err(Error::InvalidParams(format!(
            "non-finite couplings {params}"
        )));
    }
    if !(g > 0.0) {
        return Err(Error::InvalidParams(format!(
            "g > 0 required, got {params}"
        )));
    }
    if family.kind() == Kind::Jacobi && !(h > 0.0) {
        return Err(Error::InvalidParams(format!(
            "h > 0 required, got {params}"
        )));
    }
    Ok(())
}

fn validate_ell(family: Family, ell: usize) -> Result<()> {
    if family.is_classical() && ell != 0 {
        return Err(Error::InvalidParams(format!(
            "classical family {family} has l = 0, got l = {ell}"
        )));
    }
    Ok(())
}

/// Coefficient basis for the Jacobi-type polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Expansion {
    /// Powers of `eta`.
    Monomial,
    /// Powers of `eta - 1`; used for evaluation near `eta = 1`. Oscillator
    /// families ignore it.
    AboutOne,
    /// Powers of `eta + 1`; used for evaluation near `eta = -1`.
    AboutMinusOne,
}

fn jacobi_in(exp: Expansion, n: usize, alpha: f64, beta: f64) -> Result<Polynomial> {
    match exp {
        Expansion::Monomial => jacobi(n, alpha, beta),
        Expansion::AboutOne => Ok(jacobi_about_one(n, alpha, beta)),
        // P^(a,b)(u - 1) = (-1)^n P^(b,a)(1 - u)
        Expansion::AboutMinusOne => {
            let q = jacobi_about_one(n, beta, alpha).reflect();
            Ok(if n.is_multiple_of(2) { q } else { -q })
        }
    }
}

/// `xi_l(eta; g, h)` without any parameter validation.
pub(crate) fn xi_raw(
    family: Family,
    ell: i32,
    g: f64,
    h: f64,
    exp: Expansion,
) -> Result<Polynomial> {
    if ell < 0 {
        return Ok(Polynomial::zero());
    }
    if ell == 0 {
        return Ok(Polynomial::one());
    }
    let l = ell as usize;
    let lf = ell as f64;
    match family {
        Family::L | Family::L1 => Ok(laguerre(l, g + lf - 1.5).reflect()),
        Family::L2 => Ok(laguerre(l, -g - lf - 0.5)),
        Family::J | Family::J1 => jacobi_in(exp, l, -g - lf - 0.5, h + lf - 1.5),
        Family::J2 => jacobi_in(exp, l, g + lf - 1.5, -h - lf - 0.5),
    }
}

/// Deforming polynomial `xi_l(eta; lambda)`. Accepts `l = -1` (zero) and
/// `l = 0` (one).
pub fn xi(family: Family, ell: i32, params: &ParamSet) -> Result<Polynomial> {
    validate_params(family, params)?;
    if ell > 0 {
        validate_ell(family, ell as usize)?;
    }
    xi_raw(family, ell, params.g(), params.h(), Expansion::Monomial)
}

/// An exceptional eigenpolynomial `P_{l,n}` together with the two prefactors
/// it is assembled from: `P_{l,n} = a P_n(lambda + l delta) + b P_{n-1}(lambda + l delta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct XPolynomial {
    pub family: Family,
    pub ell: usize,
    pub n: usize,
    pub params: ParamSet,
    pub poly: Polynomial,
    pub a: Polynomial,
    pub b: Polynomial,
}

impl XPolynomial {
    pub fn eval(&self, eta: f64) -> f64 {
        self.poly.eval(eta)
    }

    pub fn degree(&self) -> isize {
        self.poly.degree()
    }
}

fn ratio(num: f64, den: f64, what: &'static str) -> Result<f64> {
    if den == 0.0 || !den.is_finite() {
        return Err(Error::ZeroDenominator(what));
    }
    Ok(num / den)
}

/// `coef * poly`, skipping the coefficient (and its denominator) when the
/// polynomial factor is identically zero or `n = 0` kills the term.
fn term(active: bool, poly: Polynomial, coef: impl FnOnce() -> Result<f64>) -> Result<Polynomial> {
    if !active || poly.is_zero() {
        return Ok(Polynomial::zero());
    }
    Ok(poly.scale(coef()?))
}

pub(crate) fn xpoly_raw(
    family: Family,
    ell: usize,
    n: usize,
    params: &ParamSet,
    exp: Expansion,
) -> Result<XPolynomial> {
    let (g, h) = (params.g(), params.h());
    let (lf, nf) = (ell as f64, n as f64);
    let l = ell as i32;
    let xi = |fam, k: i32, g, h| xi_raw(fam, k, g, h, exp);

    let (base_n, base_prev) = match family.kind() {
        Kind::Laguerre => {
            let alpha = g + lf - 0.5;
            let prev = if n == 0 {
                Polynomial::zero()
            } else {
                laguerre(n - 1, alpha)
            };
            (laguerre(n, alpha), prev)
        }
        Kind::Jacobi => {
            let (alpha, beta) = (g + lf - 0.5, h + lf - 0.5);
            let prev = if n == 0 {
                Polynomial::zero()
            } else {
                jacobi_in(exp, n - 1, alpha, beta)?
            };
            (jacobi_in(exp, n, alpha, beta)?, prev)
        }
    };
    let has_prev = n > 0;

    let (a, b) = match family {
        Family::L | Family::L1 => {
            let a = xi(Family::L1, l, g + 1.0, 0.0)?;
            let b = -xi(Family::L1, l - 1, g + 2.0, 0.0)?;
            (a, b)
        }
        Family::L2 => {
            let a = xi(Family::L2, l, g + 1.0, 0.0)?
                - term(n > 0, xi(Family::L2, l - 2, g + 1.0, 0.0)?, || {
                    ratio(2.0 * nf, 2.0 * g + 2.0 * nf + 1.0, "L2 a-prefactor")
                })?;
            let b = term(has_prev, xi(Family::L2, l - 1, g, 0.0)?, || {
                ratio(
                    2.0 * g + 2.0 * nf + 2.0 * lf - 1.0,
                    2.0 * g + 2.0 * nf + 1.0,
                    "L2 b-prefactor",
                )
            })?;
            (a, b)
        }
        Family::J | Family::J1 => {
            let d1 = -g + h + 2.0 * lf - 2.0;
            let d2 = g + h + 2.0 * nf + 2.0 * lf - 1.0;
            let d3 = 2.0 * g + 2.0 * nf + 1.0;
            let a = xi(Family::J1, l, g + 1.0, h + 1.0)?
                + term(n > 0, xi(Family::J1, l - 1, g, h + 2.0)?, || {
                    ratio(2.0 * nf * (-g + h + lf - 1.0), d1 * d2, "J1 a-prefactor")
                })?
                - term(n > 0, xi(Family::J1, l - 2, g + 1.0, h + 3.0)?, || {
                    ratio(nf * (2.0 * h + 4.0 * lf - 3.0), d3 * d1, "J1 a-prefactor")
                })?;
            let b = term(has_prev, xi(Family::J1, l - 1, g, h + 2.0)?, || {
                ratio(
                    (-g + h + lf - 1.0) * (2.0 * g + 2.0 * nf + 2.0 * lf - 1.0),
                    d3 * d2,
                    "J1 b-prefactor",
                )
            })?;
            (a, b)
        }
        Family::J2 => {
            let d1 = g - h + 2.0 * lf - 2.0;
            let d2 = g + h + 2.0 * nf + 2.0 * lf - 1.0;
            let d3 = 2.0 * h + 2.0 * nf + 1.0;
            let a = xi(Family::J2, l, g + 1.0, h + 1.0)?
                - term(n > 0, xi(Family::J2, l - 1, g + 2.0, h)?, || {
                    ratio(2.0 * nf * (g - h + lf - 1.0), d1 * d2, "J2 a-prefactor")
                })?
                - term(n > 0, xi(Family::J2, l - 2, g + 3.0, h + 1.0)?, || {
                    ratio(nf * (2.0 * g + 4.0 * lf - 3.0), d3 * d1, "J2 a-prefactor")
                })?;
            let b = term(has_prev, xi(Family::J2, l - 1, g + 2.0, h)?, || {
                ratio(
                    (g - h + lf - 1.0) * (2.0 * h + 2.0 * nf + 2.0 * lf - 1.0),
                    d3 * d2,
                    "J2 b-prefactor",
                )
            })?;
            (a, b)
        }
    };

    let poly = &a * &base_n + &b * &base_prev;
    Ok(XPolynomial {
        family,
        ell,
        n,
        params: *params,
        poly,
        a,
        b,
    })
}

/// Exceptional eigenpolynomial `P_{l,n}(eta; lambda)` of degree `l + n`.
/// With `l = 0` this is the classical `P_n`.
pub fn xpoly(family: Family, ell: usize, n: usize, params: &ParamSet) -> Result<XPolynomial> {
    validate_params(family, params)?;
    validate_ell(family, ell)?;
    xpoly_raw(family, ell, n, params, Expansion::Monomial)
}

/// `h_n^L(g) = Gamma(n + g + 1/2) / (2 n!)`.
pub fn classical_norm_laguerre(n: usize, g: f64) -> f64 {
    gamma(n as f64 + g + 0.5) / (2.0 * factorial(n))
}

/// `h_n^J(g, h) = Gamma(n+g+1/2) Gamma(n+h+1/2) / (2 n! (2n+g+h) Gamma(n+g+h))`.
pub fn classical_norm_jacobi(n: usize, g: f64, h: f64) -> f64 {
    let nf = n as f64;
    gamma(nf + g + 0.5) * gamma(nf + h + 0.5)
        / (2.0 * factorial(n) * (2.0 * nf + g + h) * gamma(nf + g + h))
}

/// Closed-form norm `h_{l,n}(lambda)` of the eigenfunction `phi_{l,n}`.
pub fn norm_closed(family: Family, ell: usize, n: usize, params: &ParamSet) -> Result<f64> {
    validate_params(family, params)?;
    validate_ell(family, ell)?;
    Ok(norm_raw(family, ell, n, params))
}

pub(crate) fn norm_raw(family: Family, ell: usize, n: usize, params: &ParamSet) -> f64 {
    let (g, h) = (params.g(), params.h());
    let (lf, nf) = (ell as f64, n as f64);
    match family {
        Family::L => classical_norm_laguerre(n, g),
        Family::J => classical_norm_jacobi(n, g, h),
        Family::L1 => {
            (nf + g + 2.0 * lf - 0.5) / (nf + g + lf - 0.5) * classical_norm_laguerre(n, g + lf)
        }
        Family::L2 => (nf + g + lf + 0.5) / (nf + g + 0.5) * classical_norm_laguerre(n, g + lf),
        Family::J1 => {
            (nf + g + lf + 0.5) * (nf + h + 2.0 * lf - 0.5) / ((nf + g + 0.5) * (nf + h + lf - 0.5))
                * classical_norm_jacobi(n, g + lf, h + lf)
        }
        Family::J2 => {
            (nf + h + lf + 0.5) * (nf + g + 2.0 * lf - 0.5) / ((nf + h + 0.5) * (nf + g + lf - 0.5))
                * classical_norm_jacobi(n, g + lf, h + lf)
        }
    }
}

/// Eigenvalue `E_n(lambda + l delta)` of `H_l`: `4n` for the oscillator
/// families and `4n(n + g + h + 2l)` for the DPT families.
pub fn energy(family: Family, ell: usize, n: usize, params: &ParamSet) -> f64 {
    let nf = n as f64;
    match family.kind() {
        Kind::Laguerre => 4.0 * nf,
        Kind::Jacobi => 4.0 * nf * (nf + params.g() + params.h() + 2.0 * ell as f64),
    }
}
