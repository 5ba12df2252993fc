//! Spectral functions of Hermitian positive definite matrices, the Loewner
//! order, and the operator norm.

use serde::{Deserialize, Serialize};

use super::eig::{herm_eig, HermitianEigen};
use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn positive_eig<T: Real>(h: &HermitianMatrix<T>) -> Result<HermitianEigen<T>> {
    let eig = herm_eig(h)?;
    if !(eig.min() > T::zero()) {
        return Err(Error::NotPositiveDefinite { min_eig: eig.min().to_f64_lossy() });
    }
    Ok(eig)
}

/// `H^p` for positive definite `H`.
pub fn hpd_power<T: Real>(h: &HermitianMatrix<T>, p: T) -> Result<HermitianMatrix<T>> {
    Ok(positive_eig(h)?.reconstruct_with(|l| l.powf(p)))
}

/// Principal logarithm of a positive definite `H`.
pub fn hpd_log<T: Real>(h: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
    Ok(positive_eig(h)?.reconstruct_with(|l| l.ln()))
}

/// `(H^{1/2}, H^{-1/2})` from a single eigendecomposition.
pub fn hpd_sqrt_and_inv_sqrt<T: Real>(h: &HermitianMatrix<T>) -> Result<(HermitianMatrix<T>, HermitianMatrix<T>)> {
    let eig = positive_eig(h)?;
    Ok((eig.reconstruct_with(|l| l.sqrt()), eig.reconstruct_with(|l| l.sqrt().recip())))
}

/// `X* H X`, symmetrized.
pub fn congruence<T: Real>(x: &HermitianMatrix<T>, h: &HermitianMatrix<T>) -> HermitianMatrix<T> {
    let xm = x.as_matrix();
    HermitianMatrix::symmetrize(&(&(xm * h.as_matrix()) * xm))
}

/// Largest singular value.
pub fn op_norm<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    let gram = HermitianMatrix::symmetrize(&(&a.adjoint() * a));
    let top = herm_eig(&gram)?.max();
    Ok(top.max(T::zero()).sqrt())
}

/// Slack allowed when deciding `X ⪰ Y` in floating point:
/// `absolute + relative · max(‖X‖, ‖Y‖)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoewnerTolerance {
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub absolute: f64,
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub relative: f64,
}

impl LoewnerTolerance {
    pub const DEFAULT: Self = Self { absolute: 1e-10, relative: 1e-10 };
    pub const EXACT: Self = Self { absolute: 0.0, relative: 0.0 };

    pub fn new(absolute: f64, relative: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(absolute) || !ok(relative) {
            return Err(Error::InvalidTolerance(format!(
                "absolute={absolute}, relative={relative} must be finite and non-negative"
            )));
        }
        Ok(Self { absolute, relative })
    }

    pub fn slack(&self, scale: f64) -> f64 {
        self.absolute + self.relative * scale
    }
}

impl Default for LoewnerTolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerOutcome<T> {
    pub holds: bool,
    /// Smallest eigenvalue of `X - Y`.
    pub margin: T,
    /// `max(‖X‖, ‖Y‖)`.
    pub scale: T,
}

/// Tests `X ⪰ Y` through the smallest eigenvalue of `X - Y`.
pub fn loewner_geq<T: Real>(
    x: &HermitianMatrix<T>,
    y: &HermitianMatrix<T>,
    tol: LoewnerTolerance,
) -> Result<LoewnerOutcome<T>> {
    x.as_matrix().check_same_dim(y.as_matrix())?;
    let margin = herm_eig(&x.sub(y))?.min();
    let scale = op_norm(x.as_matrix())?.max(op_norm(y.as_matrix())?);
    let slack = T::lit(tol.slack(scale.to_f64_lossy()));
    Ok(LoewnerOutcome { holds: margin >= -slack, margin, scale })
}
