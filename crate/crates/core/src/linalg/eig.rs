//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus an
//! implicit QL solver for real symmetric tridiagonal matrices.

use num_complex::Complex;

use super::matrix::{ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::scalar::{creal, Real};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// `H = V diag(values) V*`, eigenvalues ascending, eigenvectors in the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn min(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    pub fn max(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }

    /// `V diag(f(λ)) V*`, symmetrized.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> HermitianMatrix<T> {
        let n = self.values.len();
        let mapped: Vec<T> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let m = ComplexMatrix::from_fn(n, |i, j| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + v[(i, k)] * v[(j, k)].conj() * mapped[k])
        });
        HermitianMatrix::symmetrize(&m)
    }
}

pub fn herm_eig<T: Real>(h: &HermitianMatrix<T>) -> Result<HermitianEigen<T>> {
    herm_eig_with_sweeps(h, DEFAULT_MAX_SWEEPS)
}

pub fn herm_eig_with_sweeps<T: Real>(h: &HermitianMatrix<T>, max_sweeps: usize) -> Result<HermitianEigen<T>> {
    let n = h.dim();
    let mut a = h.as_matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = T::epsilon() * scale;

    let mut converged = false;
    for _ in 0..max_sweeps {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NoConvergence { what: "Hermitian Jacobi eigensolver", iterations: max_sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[(p, q)]`: a diagonal phase
/// change on column `q` makes the pivot real, then a real plane rotation.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Already negligible relative to the diagonal.
    if mag <= T::epsilon() * T::epsilon() * (app.abs() + aqq.abs()) {
        a[(p, q)] = creal(T::zero());
        a[(q, p)] = creal(T::zero());
        return;
    }

    let phase = apq / mag;
    let unphase = phase.conj();
    for k in 0..n {
        a[(k, q)] *= unphase;
        v[(k, q)] *= unphase;
    }
    for k in 0..n {
        a[(q, k)] *= phase;
    }

    let two = T::lit(2.0);
    let theta = (aqq - app) / (two * mag);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    a[(p, p)] = creal(app - t * mag);
    a[(q, q)] = creal(aqq + t * mag);
    a[(p, q)] = creal(T::zero());
    a[(q, p)] = creal(T::zero());
}

/// Eigenvalues of a real symmetric tridiagonal matrix together with the first
/// component of each normalized eigenvector, ascending by eigenvalue.
///
/// `diag` has length n, `offdiag` length n-1 (`offdiag[i]` couples rows i and i+1).
/// Implicit QL with Wilkinson-style shifts; only row 0 of the eigenvector
/// matrix is accumulated, so the cost is O(n²).
pub fn symmetric_tridiagonal_eig<T: Real>(diag: &[T], offdiag: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    assert_eq!(offdiag.len() + 1, n.max(1), "off-diagonal must have length n-1");
    let mut d = diag.to_vec();
    let mut e: Vec<T> = offdiag.iter().copied().chain(std::iter::once(T::zero())).collect();
    e.truncate(n);
    let mut z = vec![T::zero(); n];
    if n > 0 {
        z[0] = T::one();
    }
    const MAX_ITER: usize = 60;
    let two = T::lit(2.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITER {
                return Err(Error::NoConvergence { what: "tridiagonal QL eigensolver", iterations: MAX_ITER });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| z[i]).collect()))
}
