//! Small dense square matrices over a [`Scalar`] field.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{check_size, Error, Result};
use crate::scalar::Scalar;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix must be square".into()));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.dim + c] = value;
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let d = self.dim;
        Self::from_fn(d, |r, c| {
            (0..d).fold(S::zero(), |acc, i| {
                acc + self.get(r, i).clone() * other.get(i, c).clone()
            })
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| {
            self.get(r / b, c / b).clone() * other.get(r % b, c % b).clone()
        })
    }

    /// Largest entrywise deviation, in floating point.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).to_c64().norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim)
            .all(|r| (r..self.dim).all(|c| self.get(r, c).close_to(&self.get(c, r).conj(), tol)))
    }

    pub fn to_c64(&self) -> Matrix<Complex64> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(Scalar::to_c64).collect(),
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl Matrix<Complex64> {
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| *self.get(r, c))
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = self.to_nalgebra();
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Largest matrix handled by [`char_poly`].
pub const MAX_CHAR_POLY_DIM: usize = 256;

/// Monic characteristic polynomial `det(X·I − M)` by Faddeev–LeVerrier.
/// Entry `i` is the coefficient of `X^{n−i}`, so entry 0 is 1.
pub fn char_poly<S: Scalar>(m: &Matrix<S>) -> Result<Vec<S>> {
    let n = m.dim();
    check_size(
        "characteristic polynomial dimension",
        n as u64,
        MAX_CHAR_POLY_DIM as u64,
    )?;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(S::one());
    let mut aux = Matrix::<S>::zeros(n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I ; c_{n−k} = −tr(A·M_k)/k
        let mut next = m.mul(&aux);
        let prev = coeffs[k - 1].clone();
        for i in 0..n {
            let v = next.get(i, i).clone() + prev.clone();
            next.set(i, i, v);
        }
        let c = (-(m.mul(&next).trace())).div_i64(k as i64);
        coeffs.push(c);
        aux = next;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, GaussianRational};
    use num_complex::Complex;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> GaussianRational {
        Complex::new(rational(n, d), BigRational::zero())
    }

    #[test]
    fn char_poly_small() {
        let id = Matrix::<GaussianRational>::identity(2);
        assert_eq!(char_poly(&id).unwrap(), [q(1, 1), q(-2, 1), q(1, 1)]);
        let d = Matrix::from_rows(vec![vec![q(1, 3), q(0, 1)], vec![q(0, 1), q(5, 7)]]).unwrap();
        assert_eq!(
            char_poly(&d).unwrap(),
            [q(1, 1), -(q(1, 3) + q(5, 7)), q(5, 21)]
        );
    }

    #[test]
    fn char_poly_matches_determinant_3x3() {
        let m = Matrix::from_rows(vec![
            vec![q(2, 1), q(1, 1), q(0, 1)],
            vec![q(1, 2), q(3, 1), q(1, 1)],
            vec![q(0, 1), q(-1, 1), q(4, 1)],
        ])
        .unwrap();
        let c = char_poly(&m).unwrap();
        // det = 2(12+1) - 1(2 - 0) + 0 = 24 ; constant term = -det for n = 3
        assert_eq!(c[3], q(-24, 1));
        assert_eq!(c[1], q(-9, 1));
    }

    #[test]
    fn kron_and_trace() {
        let a = Matrix::from_rows(vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]]).unwrap();
        let b = Matrix::<GaussianRational>::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.get(2, 0), &q(3, 1));
        assert_eq!(k.get(2, 1), &q(0, 1));
        assert_eq!(k.trace(), q(10, 1));
    }

    #[test]
    fn char_poly_size_guard() {
        assert!(char_poly(&Matrix::<Complex64>::identity(257)).is_err());
    }
}
