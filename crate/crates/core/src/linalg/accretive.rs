use super::eig::herm_eig;
use super::matrix::{real_part, ComplexMatrix, HermitianMatrix, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative floor on the smallest eigenvalue of the real part, measured
/// against `‖ℜA‖`.
pub const ACCRETIVE_REL_THRESHOLD: f64 = 1e-10;

/// A square matrix whose real part `(A + A*)/2` is positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct AccretiveMatrix<T> {
    inner: ComplexMatrix<T>,
    re_min_eig: T,
}

impl<T: Real> AccretiveMatrix<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        if m.dim() == 0 || m.dim() > MAX_DIM {
            return Err(Error::InvalidShape(format!("dimension {} outside 1..={MAX_DIM}", m.dim())));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let eig = herm_eig(&real_part(&m))?;
        let (lo, hi) = (eig.min(), eig.max());
        let threshold = T::lit(ACCRETIVE_REL_THRESHOLD) * hi.abs().max(lo.abs());
        if !(lo > T::zero() && lo > threshold) {
            return Err(Error::NotAccretive { min_eig: lo.to_f64_lossy(), threshold: threshold.to_f64_lossy() });
        }
        Ok(Self { inner: m, re_min_eig: lo })
    }

    /// Wraps without rejecting. Downstream integrals may then hit singular
    /// resolvents; meant for reproducing pathological inputs only.
    pub fn unvalidated(m: ComplexMatrix<T>) -> Result<Self> {
        let re_min_eig = herm_eig(&real_part(&m))?.min();
        Ok(Self { inner: m, re_min_eig })
    }

    pub fn from_hermitian(h: &HermitianMatrix<T>) -> Result<Self> {
        Self::new(h.as_matrix().clone())
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn re_min_eig(&self) -> T {
        self.re_min_eig
    }

    pub fn as_matrix(&self) -> &ComplexMatrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.inner
    }

    pub fn real_part(&self) -> HermitianMatrix<T> {
        real_part(&self.inner)
    }

    /// Positive multiples stay accretive.
    pub fn scaled(&self, s: T) -> Result<Self> {
        if !(s > T::zero()) {
            return Err(Error::InvalidScalar(s.to_f64_lossy()));
        }
        Self::new(self.inner.scale(s))
    }
}

impl<T> AsRef<ComplexMatrix<T>> for AccretiveMatrix<T> {
    fn as_ref(&self) -> &ComplexMatrix<T> {
        &self.inner
    }
}
