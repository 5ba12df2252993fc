//! Dense complex matrices, Cartesian decomposition, Hermitian spectral
//! calculus and the Loewner order.

mod accretive;
mod eig;
mod functions;
mod matrix;

pub use accretive::{AccretiveMatrix, ACCRETIVE_REL_THRESHOLD};
pub use eig::{herm_eig, herm_eig_with_sweeps, symmetric_tridiagonal_eig, HermitianEigen, DEFAULT_MAX_SWEEPS};
pub use functions::{
    congruence, hpd_log, hpd_power, hpd_sqrt_and_inv_sqrt, loewner_geq, op_norm, LoewnerOutcome, LoewnerTolerance,
};
pub use matrix::{imag_part, inverse, inverse_with_cap, real_part, ComplexMatrix, HermitianMatrix, MAX_DIM};
