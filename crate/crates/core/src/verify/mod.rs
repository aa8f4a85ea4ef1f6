//! Numerical verification of the analytic claims: orthogonality by Gauss
//! quadrature, eigen-equation and shape invariance residuals, mirror and
//! `l = 1` identities, infinite-coupling limits and independent FD spectra.

pub mod battery;
pub mod checks;
pub mod gram;
pub mod limits;
pub mod mirror;
pub mod quadrature;
pub mod report;
pub mod spectrum;
pub mod tolerances;

pub use battery::{run_battery, systems, CheckKind, Scope, QUICK_MAX_NODES};
pub use checks::{
    coincidence_poly_check, coincidence_potential_check, default_grid, eigen_check, ortho_check,
    ortho_check_with, shape_check, sign_check, spectrum_check, spectrum_order_check,
};
pub use gram::{gram_matrix, GramMatrix, GramOptions};
pub use limits::{
    family_limit_errors, limit_check_base, limit_check_family, FamilyLimitErrors, LimitPair,
    LimitSign, SlopeWindow, BETA_SCHEDULE, H_SCHEDULE,
};
pub use mirror::mirror_check;
pub use quadrature::{gauss_rule, QuadratureRule, WeightKind};
pub use report::{CheckReport, Convergence, Num, ParamValue};
pub use spectrum::{fd_eigenvalues, fd_spectrum, FdGrid};
pub use tolerances::{Tolerances, TOL_SCALE_VAR};
