//! Relative operator entropy and Tsallis relative operator entropy of
//! accretive matrices.
//!
//! Both integrals share the factor `(A !_t B - A)/t`. Writing
//! `M_t = (1-t)A⁻¹ + tB⁻¹` gives `M_t⁻¹ - A = t·M_t⁻¹(A⁻¹ - B⁻¹)A`, so the
//! factor is evaluated as `(A !_t B)(A⁻¹ - B⁻¹)A`: no cancellation, and the
//! removable singularity at `t = 0` (limit `A - AB⁻¹A`) disappears.

use crate::error::{Error, Result};
use crate::linalg::{
    congruence, hpd_log, hpd_sqrt_and_inv_sqrt, inverse, AccretiveMatrix, ComplexMatrix, HermitianMatrix,
};
use crate::means::{
    geometric_mean, geometric_mean_hpd, harmonic_path, integrate_with, GeometricMeanConfig, Integrated,
    IntegrationConfig, Weight,
};
use crate::quadrature::RuleKind;
use crate::scalar::Real;

pub type EntropyConfig<T> = IntegrationConfig<T>;

/// Precomputed pieces of `t ↦ (A !_t B - A)/t`.
struct SlopeIntegrand<'a, T> {
    a: &'a ComplexMatrix<T>,
    a_inv: ComplexMatrix<T>,
    b_inv: ComplexMatrix<T>,
    inv_diff: ComplexMatrix<T>,
}

impl<'a, T: Real> SlopeIntegrand<'a, T> {
    fn new(a: &'a AccretiveMatrix<T>, b: &AccretiveMatrix<T>) -> Result<Self> {
        a.as_matrix().check_same_dim(b.as_matrix())?;
        let a_inv = inverse(a.as_matrix())?;
        let b_inv = inverse(b.as_matrix())?;
        let inv_diff = &a_inv - &b_inv;
        Ok(Self { a: a.as_matrix(), a_inv, b_inv, inv_diff })
    }

    fn eval(&self, t: T) -> Result<ComplexMatrix<T>> {
        let h = harmonic_path(&self.a_inv, &self.b_inv, t)?;
        Ok(&(&h * &self.inv_diff) * self.a)
    }
}

/// `(A !_t B - A)/t` at a single point; bounded as `t → 0`.
pub fn entropy_integrand<T: Real>(a: &AccretiveMatrix<T>, b: &AccretiveMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    SlopeIntegrand::new(a, b)?.eval(t)
}

/// `S(A|B) = ∫₀¹ (A !_t B - A)/t dt` by Gauss–Legendre.
pub fn relative_entropy<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    cfg: &EntropyConfig<T>,
) -> Result<ComplexMatrix<T>> {
    Ok(relative_entropy_detailed(a, b, cfg)?.value)
}

pub fn relative_entropy_detailed<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    cfg: &EntropyConfig<T>,
) -> Result<Integrated<T>> {
    let integrand = SlopeIntegrand::new(a, b)?;
    integrate_with(RuleKind::Legendre, cfg, |t| integrand.eval(t))
}

/// Closed form `A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}` for positive definite inputs.
pub fn relative_entropy_hpd<T: Real>(a: &HermitianMatrix<T>, b: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
    a.as_matrix().check_same_dim(b.as_matrix())?;
    let (sqrt_a, inv_sqrt_a) = hpd_sqrt_and_inv_sqrt(a)?;
    let inner = congruence(&inv_sqrt_a, b);
    Ok(congruence(&sqrt_a, &hpd_log(&inner)?))
}

/// `T_λ(A|B) = sin(λπ)/(λπ) ∫₀¹ (t/(1-t))^λ (A !_t B - A)/t dt`, with the
/// singular factor `t^λ(1-t)^{-λ}` carried by a Gauss–Jacobi weight.
pub fn tsallis_entropy<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
    cfg: &EntropyConfig<T>,
) -> Result<ComplexMatrix<T>> {
    Ok(tsallis_entropy_detailed(a, b, w, cfg)?.value)
}

pub fn tsallis_entropy_detailed<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
    cfg: &EntropyConfig<T>,
) -> Result<Integrated<T>> {
    let integrand = SlopeIntegrand::new(a, b)?;
    let lambda = w.value();
    let scale = (lambda * T::PI()).sin() / (lambda * T::PI());
    Ok(integrate_with(RuleKind::tsallis_kernel(lambda.to_f64_lossy()), cfg, |t| integrand.eval(t))?.scaled(scale))
}

/// `(A ♯_λ B - A)/λ` through the geometric-mean quadrature.
pub fn tsallis_from_mean<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
    cfg: &GeometricMeanConfig<T>,
) -> Result<ComplexMatrix<T>> {
    let g = geometric_mean(a, b, w, cfg)?;
    Ok((&g - a.as_matrix()).scale(w.value().recip()))
}

/// `(A ♯_λ B - A)/λ` with the closed-form mean, for positive definite inputs.
pub fn tsallis_hpd<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    w: Weight<T>,
) -> Result<HermitianMatrix<T>> {
    let g = geometric_mean_hpd(a, b, w)?;
    Ok(g.sub(a).scale(w.value().recip()))
}

/// `‖T_λ(A|B) - S(A|B)‖_F` for each `λ` in a descending sequence from (0, 1/2].
pub fn tsallis_limit_probe<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    lambdas: &[T],
    cfg: &EntropyConfig<T>,
) -> Result<Vec<(T, T)>> {
    let half = T::lit(0.5);
    for &l in lambdas {
        if !(l > T::zero() && l <= half) {
            return Err(Error::InvalidWeight(l.to_f64_lossy()));
        }
    }
    if lambdas.windows(2).any(|p| p[1] >= p[0]) {
        return Err(Error::InvalidTolerance("probe weights must be strictly descending".into()));
    }
    let s = relative_entropy(a, b, cfg)?;
    lambdas
        .iter()
        .map(|&l| {
            let t = tsallis_entropy(a, b, Weight::new(l)?, cfg)?;
            Ok((l, (&t - &s).frobenius_norm()))
        })
        .collect()
}
