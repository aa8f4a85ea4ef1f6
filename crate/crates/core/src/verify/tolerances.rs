use crate::error::{Error, Result};

/// Environment variable multiplying every default tolerance.
pub const TOL_SCALE_VAR: &str = "XELL_TOL_SCALE";

/// Default tolerances of the verification battery.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative Gram off-diagonals and diagonal-vs-closed-form gaps.
    pub ortho: f64,
    /// Normalized eigen-equation residual.
    pub eigen: f64,
    /// Shape invariance residual.
    pub shape: f64,
    /// Mirror identities.
    pub mirror: f64,
    /// `l = 1` polynomial coincidences, coefficient-wise.
    pub coincidence_poly: f64,
    /// `l = 1` potential coincidence, pointwise.
    pub coincidence_potential: f64,
    /// Normalized limit score (`1` is the acceptance boundary).
    pub limit: f64,
    /// FD spectrum of the oscillator families.
    pub spectrum_laguerre: f64,
    /// FD spectrum of the DPT families.
    pub spectrum_jacobi: f64,
    /// Allowed deviation of the observed FD convergence order from `2`.
    pub spectrum_order: f64,
    /// Allowed number of sign changes of `xi` on the physical domain.
    pub sign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ortho: 1e-8,
            eigen: 1e-8,
            shape: 1e-9,
            mirror: 1e-10,
            coincidence_poly: 1e-12,
            coincidence_potential: 1e-10,
            limit: 1.0,
            spectrum_laguerre: 1e-2,
            spectrum_jacobi: 5e-2,
            spectrum_order: 0.2,
            sign: 0.0,
        }
    }
}

impl Tolerances {
    /// Every tolerance multiplied by `factor`.
    pub fn scaled(factor: f64) -> Self {
        let d = Tolerances::default();
        Tolerances {
            ortho: d.ortho * factor,
            eigen: d.eigen * factor,
            shape: d.shape * factor,
            mirror: d.mirror * factor,
            coincidence_poly: d.coincidence_poly * factor,
            coincidence_potential: d.coincidence_potential * factor,
            limit: d.limit * factor,
            spectrum_laguerre: d.spectrum_laguerre * factor,
            spectrum_jacobi: d.spectrum_jacobi * factor,
            spectrum_order: d.spectrum_order * factor,
            sign: d.sign * factor,
        }
    }

    /// Defaults scaled by `XELL_TOL_SCALE` (`1` when unset).
    pub fn from_env() -> Result<Self> {
        Ok(Self::scaled(scale_from(
            std::env::var(TOL_SCALE_VAR).ok().as_deref(),
        )?))
    }
}

/// Parses a tolerance multiplier; `None` means `1`.
pub fn scale_from(value: Option<&str>) -> Result<f64> {
    match value.map(str::trim) {
        None | Some("") => Ok(1.0),
        Some(s) => match s.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
            _ => Err(Error::InvalidParams(format!(
                "{TOL_SCALE_VAR} must be a positive real, got `{s}`"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_parsing() {
        assert_eq!(scale_from(None).unwrap(), 1.0);
        assert_eq!(scale_from(Some("2.5")).unwrap(), 2.5);
        assert!(scale_from(Some("-1")).is_err());
        assert!(scale_from(Some("abc")).is_err());
        let t = Tolerances::scaled(10.0);
        assert_eq!(t.eigen, 1e-7);
        assert_eq!(t.spectrum_jacobi, 0.5);
    }
}
