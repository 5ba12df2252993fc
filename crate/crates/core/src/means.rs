//! Weighted arithmetic, harmonic and geometric means of accretive matrices.
//!
//! The geometric mean of accretive `A`, `B` is the integral of weighted
//! harmonic means
//!
//! ```text
//! A ♯_λ B = sin(λπ)/π ∫₀¹ t^{λ-1} (1-t)^{-λ} (A !_t B) dt,
//! ```
//!
//! evaluated with a Gauss–Jacobi rule whose weight absorbs both endpoint
//! singularities. For positive definite inputs this coincides with the
//! closed form `A^{1/2} (A^{-1/2} B A^{-1/2})^λ A^{1/2}`.

use crate::error::{Error, Result};
use crate::linalg::{
    congruence, hpd_power, hpd_sqrt_and_inv_sqrt, inverse, AccretiveMatrix, ComplexMatrix, HermitianMatrix,
};
use crate::quadrature::{integrate_adaptive, integrate_matrix, RuleKind, DEFAULT_NODES, MAX_NODES};
use crate::scalar::Real;

/// A mean weight `λ ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight<T>(T);

impl<T: Real> Weight<T> {
    pub fn new(lambda: T) -> Result<Self> {
        if lambda > T::zero() && lambda < T::one() {
            Ok(Self(lambda))
        } else {
            Err(Error::InvalidWeight(lambda.to_f64_lossy()))
        }
    }

    pub fn half() -> Self {
        Self(T::lit(0.5))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// `1 - λ`.
    pub fn complement(self) -> Self {
        Self(T::one() - self.0)
    }
}

/// Quadrature settings shared by the mean and entropy integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig<T> {
    pub rule_nodes: usize,
    pub adaptive: bool,
    pub tol: T,
}

pub type GeometricMeanConfig<T> = IntegrationConfig<T>;

impl<T: Real> Default for IntegrationConfig<T> {
    fn default() -> Self {
        Self { rule_nodes: DEFAULT_NODES, adaptive: false, tol: T::lit(1e-12) }
    }
}

impl<T: Real> IntegrationConfig<T> {
    pub fn fixed(rule_nodes: usize) -> Self {
        Self { rule_nodes, ..Self::default() }
    }

    pub fn adaptive(tol: T) -> Self {
        Self { adaptive: true, tol, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rule_nodes == 0 || self.rule_nodes > MAX_NODES {
            return Err(Error::InvalidNodeCount(self.rule_nodes));
        }
        if !(self.tol > T::zero()) {
            return Err(Error::InvalidTolerance(format!("tolerance {} must be positive", self.tol)));
        }
        Ok(())
    }
}

/// A quadrature-backed result with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Integrated<T> {
    pub value: ComplexMatrix<T>,
    pub nodes_used: usize,
    /// Only available from adaptive runs.
    pub error_estimate: Option<T>,
}

impl<T: Real> Integrated<T> {
    /// Multiplies the value and the error estimate by `s`.
    pub(crate) fn scaled(self, s: T) -> Self {
        Self { value: self.value.scale(s), error_estimate: self.error_estimate.map(|e| e * s.abs()), ..self }
    }

    pub(crate) fn map(self, f: impl FnOnce(ComplexMatrix<T>) -> Result<ComplexMatrix<T>>) -> Result<Self> {
        Ok(Self { value: f(self.value)?, ..self })
    }
}

pub(crate) fn integrate_with<T: Real, F>(kind: RuleKind, cfg: &IntegrationConfig<T>, f: F) -> Result<Integrated<T>>
where
    F: FnMut(T) -> Result<ComplexMatrix<T>>,
{
    cfg.validate()?;
    if cfg.adaptive {
        let r = integrate_adaptive(f, kind, cfg.tol, MAX_NODES)?;
        Ok(Integrated { value: r.value, nodes_used: r.nodes_used, error_estimate: Some(r.error_estimate) })
    } else {
        let rule = kind.build(cfg.rule_nodes)?;
        Ok(Integrated { value: integrate_matrix(&rule, f)?, nodes_used: cfg.rule_nodes, error_estimate: None })
    }
}

/// `((1-t) A⁻¹ + t B⁻¹)⁻¹` from precomputed inverses.
pub(crate) fn harmonic_path<T: Real>(
    a_inv: &ComplexMatrix<T>,
    b_inv: &ComplexMatrix<T>,
    t: T,
) -> Result<ComplexMatrix<T>> {
    let mut m = a_inv.scale(T::one() - t);
    m.axpy(t, b_inv);
    inverse(&m)
}

/// `(1-λ) A + λ B`.
pub fn arithmetic_mean<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
) -> Result<ComplexMatrix<T>> {
    a.as_matrix().check_same_dim(b.as_matrix())?;
    let mut m = a.as_matrix().scale(T::one() - w.value());
    m.axpy(w.value(), b.as_matrix());
    Ok(m)
}

/// `((1-λ) A⁻¹ + λ B⁻¹)⁻¹`.
pub fn harmonic_mean<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
) -> Result<ComplexMatrix<T>> {
    a.as_matrix().check_same_dim(b.as_matrix())?;
    harmonic_path(&inverse(a.as_matrix())?, &inverse(b.as_matrix())?, w.value())
}

/// Closed form `A^{1/2} (A^{-1/2} B A^{-1/2})^λ A^{1/2}` for positive definite inputs.
pub fn geometric_mean_hpd<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    w: Weight<T>,
) -> Result<HermitianMatrix<T>> {
    a.as_matrix().check_same_dim(b.as_matrix())?;
    let (sqrt_a, inv_sqrt_a) = hpd_sqrt_and_inv_sqrt(a)?;
    let inner = congruence(&inv_sqrt_a, b);
    Ok(congruence(&sqrt_a, &hpd_power(&inner, w.value())?))
}

/// Weighted geometric mean of accretive matrices via Gauss–Jacobi quadrature.
pub fn geometric_mean<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
    cfg: &GeometricMeanConfig<T>,
) -> Result<ComplexMatrix<T>> {
    Ok(geometric_mean_detailed(a, b, w, cfg)?.value)
}

pub fn geometric_mean_detailed<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    w: Weight<T>,
    cfg: &GeometricMeanConfig<T>,
) -> Result<Integrated<T>> {
    a.as_matrix().check_same_dim(b.as_matrix())?;
    let lambda = w.value();
    // Integrate the norm-balanced pair and restore the scale through
    // (αA) ♯_λ (βB) = α^{1-λ} β^λ (A ♯_λ B). Pairs of very different magnitude
    // otherwise put a pole of the integrand next to an endpoint.
    let (na, nb) = (a.as_matrix().frobenius_norm(), b.as_matrix().frobenius_norm());
    let outer = scalar_geometric(na, nb, w)?;
    let a_inv = inverse(&a.as_matrix().scale(na.recip()))?;
    let b_inv = inverse(&b.as_matrix().scale(nb.recip()))?;
    let kind = RuleKind::mean_kernel(lambda.to_f64_lossy());
    let scale = (lambda * T::PI()).sin() / T::PI() * outer;
    let inner_cfg = IntegrationConfig { tol: cfg.tol / scale, ..*cfg };
    Ok(integrate_with(kind, &inner_cfg, |t| harmonic_path(&a_inv, &b_inv, t))?.scaled(scale))
}

/// The λ = 1/2 mean as the outer inverse of `(2/π) ∫₀^∞ (tA + t⁻¹B)⁻¹ dt/t`.
///
/// With `t = tan(πs/2)` the integral becomes `∫₀¹ (sin²(πs/2) A + cos²(πs/2) B)⁻¹ ds`,
/// whose integrand is analytic on [0, 1]; it is evaluated with adaptive
/// Gauss–Legendre at `cfg.tol`.
pub fn drury_mean<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    cfg: &GeometricMeanConfig<T>,
) -> Result<ComplexMatrix<T>> {
    Ok(drury_mean_detailed(a, b, cfg)?.value)
}

pub fn drury_mean_detailed<T: Real>(
    a: &AccretiveMatrix<T>,
    b: &AccretiveMatrix<T>,
    cfg: &GeometricMeanConfig<T>,
) -> Result<Integrated<T>> {
    a.as_matrix().check_same_dim(b.as_matrix())?;
    let adaptive = IntegrationConfig { adaptive: true, ..*cfg };
    let half_pi = T::FRAC_PI_2();
    let resolvent = integrate_with(RuleKind::Legendre, &adaptive, |s| {
        let (sin, cos) = (half_pi * s).sin_cos();
        let mut m = a.as_matrix().scale(sin * sin);
        m.axpy(cos * cos, b.as_matrix());
        inverse(&m)
    })?;
    resolvent.map(|v| inverse(&v))
}

/// `α^{1-λ} β^λ` for positive reals.
pub fn scalar_geometric<T: Real>(alpha: T, beta: T, w: Weight<T>) -> Result<T> {
    for x in [alpha, beta] {
        if !(x > T::zero()) {
            return Err(Error::InvalidScalar(x.to_f64_lossy()));
        }
    }
    Ok(alpha.powf(T::one() - w.value()) * beta.powf(w.value()))
}
