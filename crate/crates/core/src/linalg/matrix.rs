use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{cone, creal, czero, Real, C};
use num_complex::Complex;

/// Largest dimension accepted by the validating constructors.
pub const MAX_DIM: usize = 64;

/// Dense square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![czero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn scalar(value: C<T>) -> Self {
        Self { dim: 1, data: vec![value] }
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = creal(d);
        }
        m
    }

    /// Builds a matrix from a flat row-major buffer, rejecting wrong lengths
    /// and non-finite entries.
    pub fn from_row_major(dim: usize, data: Vec<C<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidShape("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidShape(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        let m = Self { dim, data };
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::InvalidShape(format!("row of length {} in a {dim}-row matrix", bad.len())));
        }
        Self::from_row_major(dim, rows.concat())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C<T>]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    /// `self += s * other`, entrywise.
    pub fn axpy(&mut self, s: T, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b * s;
        }
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).map(|i| self[(i, i)]).fold(czero(), |a, b| a + b)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn one_norm(&self) -> T {
        (0..self.dim).map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<T>()).fold(T::zero(), T::max)
    }

    pub fn matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        self.rows().map(|row| row.iter().zip(x).fold(czero(), |acc, (&a, &b)| acc + a * b)).collect()
    }

    /// Quadratic form `x* M x`.
    pub fn quadratic_form(&self, x: &[C<T>]) -> C<T> {
        let mx = self.matvec(x);
        x.iter().zip(&mx).fold(czero(), |acc, (xi, yi)| acc + xi.conj() * yi)
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Lossless widening to `f64`.
    pub fn to_f64(&self) -> ComplexMatrix<f64> {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Self::Output {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Self::Output {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix addition");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix subtraction");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// Hermitian matrix. The constructor symmetrizes, so `H == H*` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T> {
    inner: ComplexMatrix<T>,
}

impl<T: Real> HermitianMatrix<T> {
    /// `(M + M*) / 2`, with the lower triangle written as the conjugate of the upper.
    pub fn symmetrize(m: &ComplexMatrix<T>) -> Self {
        let n = m.dim();
        let half = T::lit(0.5);
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            out[(i, i)] = creal(m[(i, i)].re);
            for j in (i + 1)..n {
                let z = (m[(i, j)] + m[(j, i)].conj()) * half;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        Self { inner: out }
    }

    pub fn identity(dim: usize) -> Self {
        Self { inner: ComplexMatrix::identity(dim) }
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        Self { inner: ComplexMatrix::from_real_diag(diag) }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.inner
    }

    pub fn is_exactly_hermitian(m: &ComplexMatrix<T>) -> bool {
        let n = m.dim();
        (0..n).all(|i| (0..n).all(|j| m[(i, j)] == m[(j, i)].conj()))
    }

    pub fn scale(&self, s: T) -> Self {
        Self { inner: self.inner.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::symmetrize(&(&self.inner + &other.inner))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::symmetrize(&(&self.inner - &other.inner))
    }
}

impl<T> AsRef<ComplexMatrix<T>> for HermitianMatrix<T> {
    fn as_ref(&self) -> &ComplexMatrix<T> {
        &self.inner
    }
}

/// Real part `(A + A*) / 2` of the Cartesian decomposition.
pub fn real_part<T: Real>(a: &ComplexMatrix<T>) -> HermitianMatrix<T> {
    HermitianMatrix::symmetrize(a)
}

/// Imaginary part `(A - A*) / (2i)` of the Cartesian decomposition.
pub fn imag_part<T: Real>(a: &ComplexMatrix<T>) -> HermitianMatrix<T> {
    let n = a.dim();
    let half = T::lit(0.5);
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        out[(i, i)] = creal(a[(i, i)].im);
        for j in (i + 1)..n {
            let d = a[(i, j)] - a[(j, i)].conj();
            // d / (2i) = -i d / 2
            let z = Complex::new(d.im * half, -d.re * half);
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    HermitianMatrix { inner: out }
}

/// Inverse with the default condition cap for `T`.
pub fn inverse<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    inverse_with_cap(a, T::COND_CAP)
}

/// Gauss-Jordan inverse with partial pivoting.
///
/// Fails with `SingularMatrix` when a pivot falls below `T::PIVOT_FLOOR` and with
/// `IllConditioned` when the 1-norm condition number `‖A‖₁‖A⁻¹‖₁` exceeds `cond_cap`.
pub fn inverse_with_cap<T: Real>(a: &ComplexMatrix<T>, cond_cap: T) -> Result<ComplexMatrix<T>> {
    let n = a.dim();
    let mut lhs = a.clone();
    let mut inv = ComplexMatrix::identity(n);
    for col in 0..n {
        let (piv_row, piv_mag) =
            (col..n)
                .map(|r| (r, lhs[(r, col)].norm()))
                .fold((col, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if !(piv_mag >= T::PIVOT_FLOOR) {
            return Err(Error::SingularMatrix { pivot: piv_mag.to_f64_lossy() });
        }
        if piv_row != col {
            for j in 0..n {
                lhs.data.swap(col * n + j, piv_row * n + j);
                inv.data.swap(col * n + j, piv_row * n + j);
            }
        }
        let p = lhs[(col, col)].inv();
        for j in 0..n {
            lhs[(col, j)] *= p;
            inv[(col, j)] *= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = lhs[(r, col)];
            if factor.re == T::zero() && factor.im == T::zero() {
                continue;
            }
            for j in 0..n {
                let l = lhs[(col, j)];
                let v = inv[(col, j)];
                lhs[(r, j)] -= factor * l;
                inv[(r, j)] -= factor * v;
            }
        }
    }
    let estimate = a.one_norm() * inv.one_norm();
    if !estimate.is_finite() || estimate > cond_cap {
        return Err(Error::IllConditioned { estimate: estimate.to_f64_lossy(), cap: cond_cap.to_f64_lossy() });
    }
    Ok(inv)
}
