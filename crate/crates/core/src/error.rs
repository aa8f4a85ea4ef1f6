use thiserror::Error;

/// Errors raised while constructing or evaluating the polynomial families,
/// the deformed Hamiltonians and the verification checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Coupling constants outside the admissible range of a family.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A three-term recurrence denominator vanished.
    #[error("degenerate recurrence for P_{n}^({alpha}, {beta}) at step {step}")]
    DegenerateRecurrence {
        n: usize,
        alpha: f64,
        beta: f64,
        step: usize,
    },

    /// A rational coefficient in a polynomial definition has a zero denominator.
    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    /// The coordinate lies outside the open physical interval.
    #[error("x = {x} is outside the physical domain {domain}")]
    DomainError { x: f64, domain: &'static str },

    /// The deforming polynomial vanishes at the evaluation point.
    #[error("deforming polynomial vanishes at x = {0}")]
    SingularXi(f64),

    /// Base-weight parameters for which no Gauss rule exists.
    #[error("invalid quadrature weight parameters: {0}")]
    InvalidWeightParams(String),

    /// Node doubling did not reach the requested tolerance.
    #[error("quadrature did not converge: relative change {change:e} with {nodes} nodes")]
    NoConvergence { nodes: usize, change: f64 },

    /// The finite-difference grid is too coarse for the requested tolerance.
    #[error("grid too coarse: doubling the grid moved the lowest eigenvalue by {shift:e}")]
    GridTooCoarse { shift: f64 },

    /// The implicit QL iteration failed to converge.
    #[error("tridiagonal eigensolver did not converge")]
    EigenSolver,
}

pub type Result<T> = std::result::Result<T, Error>;
