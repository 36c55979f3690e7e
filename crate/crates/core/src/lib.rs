//! Exact computations with plane branch singularities: Puiseux
//! parametrisations, their Weierstrass polynomials, weighted Hensel
//! lifting, and rewriting invariants of parametrisation coefficients in
//! terms of Weierstrass coefficients.

pub mod algebra;
pub mod branch;
pub mod error;
pub mod grading;
pub mod hensel;
pub mod invariants;
pub mod par;
pub mod resultants;
pub mod rewrite;
pub mod weierstrass;

pub use error::{Error, Result};
