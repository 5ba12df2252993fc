//! Gauss–Legendre and Gauss–Jacobi rules on (0, 1) and matrix-valued integration.
//!
//! Rules come from the Golub–Welsch construction: the nodes are the eigenvalues
//! of the symmetric tridiagonal Jacobi matrix of the orthogonal family, the
//! weights are `μ₀ · v₀²` where `v₀` is the first component of each normalized
//! eigenvector and `μ₀` is the total mass of the weight function.
//!
//! A Jacobi rule with parameters `(α, β)` integrates against `t^β (1-t)^α`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_tridiagonal_eig, ComplexMatrix};
use crate::scalar::Real;

pub const MAX_NODES: usize = 4096;
pub const DEFAULT_NODES: usize = 64;
/// Node count the adaptive driver starts doubling from.
pub const ADAPTIVE_START: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RuleKind {
    Legendre,
    Jacobi { alpha: f64, beta: f64 },
}

impl RuleKind {
    /// Kernel `t^{λ-1}(1-t)^{-λ}` of the geometric-mean integral.
    pub fn mean_kernel(lambda: f64) -> Self {
        RuleKind::Jacobi { alpha: -lambda, beta: lambda - 1.0 }
    }

    /// Kernel `t^{λ}(1-t)^{-λ}` of the direct Tsallis integral.
    pub fn tsallis_kernel(lambda: f64) -> Self {
        RuleKind::Jacobi { alpha: -lambda, beta: lambda }
    }

    pub fn build<T: Real>(&self, n: usize) -> Result<QuadratureRule<T>> {
        match *self {
            RuleKind::Legendre => gauss_legendre(n),
            RuleKind::Jacobi { alpha, beta } => gauss_jacobi(n, alpha, beta),
        }
    }

    /// Total mass of the weight function on (0, 1).
    pub fn mass(&self) -> f64 {
        match *self {
            RuleKind::Legendre => 1.0,
            RuleKind::Jacobi { alpha, beta } => jacobi_mass(alpha, beta),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub kind: RuleKind,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn weight_sum(&self) -> T {
        self.weights.iter().copied().sum()
    }

    /// Scalar integration, summed in ascending node order.
    pub fn integrate_scalar(&self, f: impl Fn(T) -> T) -> T {
        self.nodes.iter().zip(&self.weights).fold(T::zero(), |acc, (&t, &w)| acc + w * f(t))
    }
}

/// `π / sin(λπ)`, which equals `B(λ, 1-λ) = Γ(λ)Γ(1-λ)`.
pub fn beta_normalization(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidWeight(lambda));
    }
    Ok(std::f64::consts::PI / (lambda * std::f64::consts::PI).sin())
}

/// `∫₀¹ t^β (1-t)^α dt = B(β+1, α+1)`, with closed forms on the two lines
/// this crate actually uses.
fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    use std::f64::consts::PI;
    if alpha == 0.0 && beta == 0.0 {
        1.0
    } else if alpha + beta == -1.0 {
        // Γ(β+1)Γ(-β) = π / sin(π(β+1))
        PI / (PI * (beta + 1.0)).sin()
    } else if alpha + beta == 0.0 {
        // Γ(1+β)Γ(1-β) = βπ / sin(βπ)
        PI * beta / (PI * beta).sin()
    } else {
        statrs::function::beta::beta(beta + 1.0, alpha + 1.0)
    }
}

pub fn gauss_legendre<T: Real>(n: usize) -> Result<QuadratureRule<T>> {
    golub_welsch(n, 0.0, 0.0, RuleKind::Legendre)
}

pub fn gauss_jacobi<T: Real>(n: usize, alpha: f64, beta: f64) -> Result<QuadratureRule<T>> {
    if !(alpha.is_finite() && beta.is_finite() && alpha > -1.0 && beta > -1.0) {
        return Err(Error::InvalidParameters { alpha, beta });
    }
    golub_welsch(n, alpha, beta, RuleKind::Jacobi { alpha, beta })
}

fn golub_welsch<T: Real>(n: usize, alpha: f64, beta: f64, kind: RuleKind) -> Result<QuadratureRule<T>> {
    if n == 0 || n > MAX_NODES {
        return Err(Error::InvalidNodeCount(n));
    }
    // Recurrence coefficients of the Jacobi polynomials on [-1, 1] with weight
    // (1-x)^α (1+x)^β, then mapped to t = (1+x)/2.
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        let a = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            let s = 2.0 * kf + ab;
            (beta * beta - alpha * alpha) / (s * (s + 2.0))
        };
        diag.push(T::lit(0.5 * (1.0 + a)));
        if k + 1 < n {
            let j = kf + 1.0;
            let s = 2.0 * j + ab;
            let b2 = if k == 0 {
                // (j + α + β) cancels against (s - 1); this form survives α + β = -1.
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off.push(T::lit(0.5 * b2.sqrt()));
        }
    }
    let (nodes, first) = symmetric_tridiagonal_eig(&diag, &off)?;
    let mass = T::lit(kind.mass());
    let weights: Vec<T> = first.iter().map(|&z| mass * z * z).collect();

    let inside = nodes.iter().all(|&t| t > T::zero() && t < T::one());
    let increasing = nodes.windows(2).all(|w| w[0] < w[1]);
    let positive = weights.iter().all(|&w| w > T::zero());
    if !(inside && increasing && positive) {
        return Err(Error::NoConvergence { what: "Golub-Welsch rule generation", iterations: n });
    }
    Ok(QuadratureRule { kind, nodes, weights })
}

/// `Σ_k w_k f(t_k)`, evaluated and summed in ascending node order.
pub fn integrate_matrix<T: Real, F>(rule: &QuadratureRule<T>, mut f: F) -> Result<ComplexMatrix<T>>
where
    F: FnMut(T) -> Result<ComplexMatrix<T>>,
{
    let mut acc: Option<ComplexMatrix<T>> = None;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let value = f(t).map_err(|e| Error::EvaluationFailure { node: t.to_f64_lossy(), source: Box::new(e) })?;
        if !value.is_finite() {
            return Err(Error::EvaluationFailure { node: t.to_f64_lossy(), source: Box::new(Error::NonFinite) });
        }
        match acc.as_mut() {
            None => acc = Some(value.scale(w)),
            Some(sum) => sum.axpy(w, &value),
        }
    }
    Ok(acc.expect("rules have at least one node"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralResult<T> {
    pub value: ComplexMatrix<T>,
    /// Frobenius distance between the last two node counts.
    pub error_estimate: T,
    pub nodes_used: usize,
}

/// Doubles the node count from 16 until two consecutive results agree to
/// `tol` in Frobenius norm, or `max_nodes` is reached.
pub fn integrate_adaptive<T: Real, F>(mut f: F, kind: RuleKind, tol: T, max_nodes: usize) -> Result<IntegralResult<T>>
where
    F: FnMut(T) -> Result<ComplexMatrix<T>>,
{
    if !(tol > T::zero()) {
        return Err(Error::InvalidTolerance(format!("adaptive tolerance {tol} must be positive")));
    }
    if max_nodes > MAX_NODES {
        return Err(Error::InvalidNodeCount(max_nodes));
    }
    let mut n = ADAPTIVE_START;
    let mut prev = integrate_matrix(&kind.build(n)?, &mut f)?;
    let mut last_err = T::infinity();
    while 2 * n <= max_nodes {
        n *= 2;
        let next = integrate_matrix(&kind.build(n)?, &mut f)?;
        last_err = (&next - &prev).frobenius_norm();
        if last_err <= tol {
            return Ok(IntegralResult { value: next, error_estimate: last_err, nodes_used: n });
        }
        prev = next;
    }
    Err(Error::QuadratureNoConvergence {
        tol: tol.to_f64_lossy(),
        nodes_used: n,
        error_estimate: last_err.to_f64_lossy(),
        last: Box::new(prev.to_f64()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use std::f64::consts::{LN_2, PI, SQRT_2};

    #[test]
    fn legendre_examples() {
        let r = gauss_legendre::<f64>(1).unwrap();
        assert_eq!(r.nodes, vec![0.5]);
        assert_eq!(r.weights, vec![1.0]);
        let r = gauss_legendre::<f64>(2).unwrap();
        assert!((r.integrate_scalar(|t| t * t * t) - 0.25).abs() < 1e-15);
        let r = gauss_legendre::<f64>(16).unwrap();
        assert!((r.integrate_scalar(|t| 1.0 / (1.0 + t)) - LN_2).abs() < 1e-12);
    }

    #[test]
    fn jacobi_examples() {
        let r = gauss_jacobi::<f64>(8, -0.5, -0.5).unwrap();
        assert!((r.weight_sum() - PI).abs() < 1e-13);
        let r = gauss_jacobi::<f64>(1, -0.5, -0.5).unwrap();
        assert!((r.weight_sum() - PI).abs() < 1e-13);
        // ∫ t · t^{-1/2} (1-t)^{-1/2} dt = B(3/2, 1/2) = π/2
        let r = gauss_jacobi::<f64>(5, -0.5, -0.5).unwrap();
        assert!((r.integrate_scalar(|t| t) - PI / 2.0).abs() < 1e-12);
        let r = gauss_jacobi::<f64>(12, -0.25, -0.75).unwrap();
        assert!((r.weight_sum() - PI * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn general_jacobi_mass_uses_beta_function() {
        // ∫ t^{1/2}(1-t)^{2} dt = B(3/2, 3) = 16/105
        let r = gauss_jacobi::<f64>(6, 2.0, 0.5).unwrap();
        assert!((r.weight_sum() - 16.0 / 105.0).abs() < 1e-13);
    }

    #[test]
    fn beta_normalization_examples() {
        assert!((beta_normalization(0.5).unwrap() - PI).abs() < 1e-15);
        assert!((beta_normalization(0.25).unwrap() - PI * SQRT_2).abs() < 1e-14);
        for k in 1..10 {
            let l = k as f64 / 10.0;
            let prod = (l * PI).sin() / PI * beta_normalization(l).unwrap();
            assert!((prod - 1.0).abs() < 1e-15);
        }
        assert!(matches!(beta_normalization(0.0), Err(Error::InvalidWeight(_))));
        assert!(matches!(beta_normalization(1.0), Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn invalid_arguments() {
        assert!(matches!(gauss_legendre::<f64>(0), Err(Error::InvalidNodeCount(0))));
        assert!(matches!(gauss_legendre::<f64>(4097), Err(Error::InvalidNodeCount(_))));
        assert!(matches!(gauss_jacobi::<f64>(4, -1.0, 0.0), Err(Error::InvalidParameters { .. })));
        assert!(matches!(gauss_jacobi::<f64>(4, 0.0, -1.5), Err(Error::InvalidParameters { .. })));
    }

    #[test]
    fn largest_rule_is_well_formed() {
        let r = gauss_jacobi::<f64>(MAX_NODES, -0.3, -0.7).unwrap();
        assert!((r.weight_sum() - beta_normalization(0.3).unwrap()).abs() < 1e-11 * r.weight_sum());
    }

    #[test]
    fn integrate_matrix_examples() {
        let c = ComplexMatrix::from_fn(2, |i, j| Complex::new(i as f64 + 1.0, j as f64 - 0.5));
        let r = gauss_legendre::<f64>(7).unwrap();
        let v = integrate_matrix(&r, |_| Ok(c.clone())).unwrap();
        assert!((&v - &c).max_abs() < 1e-15);

        let lambda = 0.3;
        let r = gauss_jacobi::<f64>(64, -lambda, lambda - 1.0).unwrap();
        let v = integrate_matrix(&r, |_| Ok(c.clone())).unwrap();
        let v = v.scale((lambda * PI).sin() / PI);
        assert!((&v - &c).frobenius_norm() < 1e-12);

        let r = gauss_legendre::<f64>(4).unwrap();
        let v = integrate_matrix(&r, |t| Ok(ComplexMatrix::from_real_diag(&[t, t * t]))).unwrap();
        assert!((&v - &ComplexMatrix::from_real_diag(&[0.5, 1.0 / 3.0])).max_abs() < 1e-14);
    }

    #[test]
    fn evaluation_failure_reports_node() {
        let r = gauss_legendre::<f64>(3).unwrap();
        let err = integrate_matrix(&r, |t| {
            if t > 0.6 {
                Err(Error::SingularMatrix { pivot: 0.0 })
            } else {
                Ok(ComplexMatrix::identity(1))
            }
        })
        .unwrap_err();
        match err {
            Error::EvaluationFailure { node, .. } => assert!(node > 0.6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adaptive_constant_converges_first_doubling() {
        let c = ComplexMatrix::from_real_diag(&[3.0, -2.0]);
        let res = integrate_adaptive(|_| Ok(c.clone()), RuleKind::Legendre, 1e-12, MAX_NODES).unwrap();
        assert_eq!(res.nodes_used, 2 * ADAPTIVE_START);
        assert!(res.error_estimate <= 1e-15 * c.frobenius_norm());
    }

    #[test]
    fn adaptive_scalar_geometric_mean() {
        let (a, b, l) = (2.0f64, 8.0f64, 1.0 / 3.0);
        let kind = RuleKind::mean_kernel(l);
        let res = integrate_adaptive(
            |t| Ok(ComplexMatrix::from_real_diag(&[1.0 / ((1.0 - t) / a + t / b)])),
            kind,
            1e-10,
            MAX_NODES,
        )
        .unwrap();
        let value = res.value[(0, 0)].re * (l * PI).sin() / PI;
        assert!((value - a.powf(1.0 - l) * b.powf(l)).abs() < 1e-10);
        assert!((value - 3.1748021).abs() < 1e-7);
    }

    #[test]
    fn adaptive_failure_carries_last_value() {
        // t^{-1/2} under Legendre converges only algebraically.
        let err = integrate_adaptive(
            |t: f64| Ok(ComplexMatrix::from_real_diag(&[t.powf(-0.5)])),
            RuleKind::Legendre,
            1e-14,
            64,
        )
        .unwrap_err();
        match err {
            Error::QuadratureNoConvergence { nodes_used, last, .. } => {
                assert_eq!(nodes_used, 64);
                assert!((last[(0, 0)].re - 2.0).abs() < 0.1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(integrate_adaptive(|_| Ok(ComplexMatrix::<f64>::identity(1)), RuleKind::Legendre, 0.0, 64).is_err());
    }

    #[test]
    fn single_precision_rule() {
        let r = gauss_legendre::<f32>(8).unwrap();
        assert!((r.weight_sum() - 1.0).abs() < 1e-6);
    }
}
