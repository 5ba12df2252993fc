//! Weighted geometric means and operator entropies of accretive matrices,
//! computed from their integral representations, plus seeded verification of
//! the Loewner-order inequalities they satisfy.
//!
//! The numerical core (`linalg`, `quadrature`, `means`, `entropy`) is generic
//! over [`scalar::Real`] and works in `f32` or `f64`. The aliases below fix
//! the common `f64` instantiation; `ensemble`, `verify` and `cli` are `f64` only.

// Negated comparisons are how NaN inputs get rejected alongside out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod ensemble;
pub mod entropy;
pub mod error;
pub mod json;
pub mod linalg;
pub mod means;
pub mod quadrature;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::LoewnerTolerance;
pub use scalar::Real;

pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type ComplexMatrix32 = linalg::ComplexMatrix<f32>;
pub type HermitianMatrix64 = linalg::HermitianMatrix<f64>;
pub type HermitianMatrix32 = linalg::HermitianMatrix<f32>;
pub type AccretiveMatrix64 = linalg::AccretiveMatrix<f64>;
pub type AccretiveMatrix32 = linalg::AccretiveMatrix<f32>;
pub type QuadratureRule64 = quadrature::QuadratureRule<f64>;
pub type Weight64 = means::Weight<f64>;
pub type IntegrationConfig64 = means::IntegrationConfig<f64>;
