//! Exceptional (`X_l`) Laguerre and Jacobi orthogonal polynomials and their
//! shape-invariant deformed radial oscillator and trigonometric
//! Darboux-Poschl-Teller potentials, with a numerical verification battery.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: dense polynomials, classical Laguerre and Jacobi polynomials.
//! - [`families`]: the deformed families `L1`, `L2`, `J1`, `J2`, their
//!   deforming polynomials, eigenpolynomials, norms and energies.
//! - [`schrodinger`]: prepotentials, potentials, eigenfunctions and pointwise
//!   residuals in the physical coordinate.
//! - [`verify`]: Gauss quadrature, Gram matrices, limit and mirror checks and
//!   a finite-difference spectrum.
//! - [`cli`]: the `xell` command-line front end.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod error;
pub mod families;
pub mod poly;
pub mod schrodinger;
pub mod verify;

pub use error::{Error, Result};
pub use families::{
    energy, norm_closed, validate_params, xi, xpoly, Family, Kind, ParamSet, XPolynomial,
};
pub use poly::{jacobi, jacobi_about_one, laguerre, Polynomial};
pub use schrodinger::System;
