//! Density operators on `(C²)^{⊗N}` and the local unitaries acting on them.
//!
//! Subsystem 1 corresponds to the most significant bit of a basis index, so
//! `|a b⟩` with `a` on subsystem 1 has index `2a + b`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{char_poly, Matrix};
use crate::scalar::{parse_rational, GaussianRational, Scalar};

/// Default tolerance for Hermiticity and trace checks in floating point.
pub const FLOAT_TOLERANCE: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// What an operator is validated as.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Hermitian with unit trace.
    State,
    /// Hermitian with `P² = P`.
    Projector,
    /// No validation.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<S> {
    dims: Vec<usize>,
    matrix: Matrix<S>,
    role: Role,
}

impl<S: Scalar> DensityOperator<S> {
    /// Validates the matrix for `role`; checks Hermiticity (for `State` and
    /// `Projector`) to [`FLOAT_TOLERANCE`], exactly for exact scalars.
    pub fn new(dims: Vec<usize>, matrix: Matrix<S>, role: Role) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || total != matrix.dim() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "subsystem dims {dims:?} do not multiply to matrix size {}",
                matrix.dim()
            )));
        }
        let op = Self { dims, matrix, role };
        op.validate(FLOAT_TOLERANCE)?;
        Ok(op)
    }

    /// An unvalidated operator on `n` qubits.
    pub fn raw_qubits(matrix: Matrix<S>) -> Result<Self> {
        let n = matrix.dim().trailing_zeros() as usize;
        if 1usize << n != matrix.dim() {
            return Err(Error::DimensionMismatch(
                "matrix size is not a power of 2".into(),
            ));
        }
        Self::new(vec![2; n], matrix, Role::Raw)
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.role == Role::Raw {
            return Ok(());
        }
        if !self.matrix.is_hermitian(tol) {
            return Err(Error::Validation("operator is not Hermitian".into()));
        }
        match self.role {
            Role::State if !self.matrix.trace().close_to(&S::one(), tol) => {
                Err(Error::Validation("state does not have unit trace".into()))
            }
            Role::Projector => {
                let sq = self.matrix.mul(&self.matrix);
                let ok = sq
                    .entries()
                    .iter()
                    .zip(self.matrix.entries())
                    .all(|(a, b)| a.close_to(b, tol));
                if ok {
                    Ok(())
                } else {
                    Err(Error::Validation(
                        "projector does not satisfy P² = P".into(),
                    ))
                }
            }
            _ => Ok(()),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems `N`.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    pub fn with_role(self, role: Role) -> Result<Self> {
        Self::new(self.dims, self.matrix, role)
    }

    /// Reduced operator on the subsystems in `keep` (0-based, any order;
    /// the result keeps them in increasing order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.parties();
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() != keep.len() || kept.iter().any(|&s| s >= n) || kept.is_empty() {
            return Err(Error::Validation(alloc::format!(
                "invalid subsystem selection {keep:?} for {n} subsystems"
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|s| !kept.contains(s)).collect();
        let kept_dims: Vec<usize> = kept.iter().map(|&s| self.dims[s]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&s| self.dims[s]).collect();
        let out_dim: usize = kept_dims.iter().product();
        let env_dim: usize = traced_dims.iter().product();
        let compose = |kept_idx: usize, env_idx: usize| {
            let mut digits = vec![0; n];
            let mut x = kept_idx;
            for (slot, &s) in kept.iter().enumerate().rev() {
                digits[s] = x % kept_dims[slot];
                x /= kept_dims[slot];
            }
            let mut y = env_idx;
            for (slot, &s) in traced.iter().enumerate().rev() {
                digits[s] = y % traced_dims[slot];
                y /= traced_dims[slot];
            }
            digits
                .iter()
                .zip(&self.dims)
                .fold(0, |acc, (&d, &dim)| acc * dim + d)
        };
        let m = Matrix::from_fn(out_dim, |r, c| {
            (0..env_dim).fold(S::zero(), |acc, e| {
                acc + self.matrix.get(compose(r, e), compose(c, e)).clone()
            })
        });
        Self::new(kept_dims, m, self.role_after_reduction())
    }

    fn role_after_reduction(&self) -> Role {
        match self.role {
            Role::State => Role::State,
            _ => Role::Raw,
        }
    }

    /// Transposition of the indices of one subsystem (0-based).
    pub fn partial_transpose(&self, subsystem: usize) -> Result<Self> {
        if subsystem >= self.parties() {
            return Err(Error::Validation(alloc::format!(
                "subsystem {subsystem} out of range"
            )));
        }
        let stride: usize = self.dims[subsystem + 1..].iter().product();
        let d = self.dims[subsystem];
        let digit = |i: usize| (i / stride) % d;
        let swap = |i: usize, from: usize, to: usize| i - from * stride + to * stride;
        let m = Matrix::from_fn(self.matrix.dim(), |r, c| {
            let (a, b) = (digit(r), digit(c));
            self.matrix.get(swap(r, a, b), swap(c, b, a)).clone()
        });
        Self::new(self.dims.clone(), m, self.role)
    }

    pub fn char_poly(&self) -> Result<Vec<S>> {
        char_poly(&self.matrix)
    }

    /// PSD test through the characteristic polynomial: a Hermitian matrix is
    /// positive semidefinite iff the coefficients of `det(X·I − M)` alternate
    /// in sign (`(−1)^i c_i ≥ 0`). Exact for exact scalars.
    pub fn is_psd_by_char_poly(&self, tol: f64) -> Result<bool> {
        let coeffs = self.char_poly()?;
        Ok(coeffs.iter().enumerate().all(|(i, c)| {
            let s = c.re_sign(tol);
            c.im_is_zero(tol)
                && matches!(
                    (i % 2 == 0, s),
                    (_, Ordering::Equal) | (true, Ordering::Greater) | (false, Ordering::Less)
                )
        }))
    }

    pub fn to_float(&self) -> DensityOperator<Complex64> {
        DensityOperator {
            dims: self.dims.clone(),
            matrix: self.matrix.to_c64(),
            role: self.role,
        }
    }
}

impl DensityOperator<Complex64> {
    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix
            .hermitian_eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0)
    }

    pub fn is_psd(&self) -> bool {
        self.min_eigenvalue() >= -PSD_TOLERANCE
    }

    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }

    /// `(U₁ ⊗ … ⊗ U_N) ρ (U₁ ⊗ … ⊗ U_N)†`.
    pub fn conjugate_local(&self, u: &LocalUnitary) -> Result<Self> {
        if u.factors.len() != self.parties() || !self.is_qubits() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} unitary factors for subsystems {:?}",
                u.factors.len(),
                self.dims
            )));
        }
        let big = u.matrix();
        let m = big.mul(&self.matrix).mul(&big.adjoint());
        Ok(Self {
            dims: self.dims.clone(),
            matrix: m,
            role: self.role,
        })
    }
}

/// `U₁ ⊗ … ⊗ U_N` with each `U_ν ∈ U(2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    pub factors: Vec<Matrix<Complex64>>,
}

impl LocalUnitary {
    pub fn new(factors: Vec<Matrix<Complex64>>) -> Result<Self> {
        for f in &factors {
            if f.dim() != 2 {
                return Err(Error::DimensionMismatch("local factors must be 2×2".into()));
            }
            let err = f.adjoint().mul(f).max_abs_diff(&Matrix::identity(2));
            if err > 1e-12 {
                return Err(Error::Validation(alloc::format!(
                    "factor is not unitary (deviation {err:e})"
                )));
            }
        }
        Ok(Self { factors })
    }

    pub fn identity(parties: usize) -> Self {
        Self {
            factors: vec![Matrix::identity(2); parties],
        }
    }

    /// The full `2^N × 2^N` matrix, factor 1 acting on the leading bit.
    pub fn matrix(&self) -> Matrix<Complex64> {
        self.factors
            .iter()
            .fold(Matrix::identity(1), |acc, f| acc.kron(f))
    }
}

const REFERENCE_DENOMINATOR: i64 = 800;

const REFERENCE_RHO_1: [[(i64, i64); 4]; 4] = [
    [(214, 0), (-16, -150), (-10, 8), (3, 0)],
    [(-16, 150), (226, 0), (13, 0), (10, -8)],
    [(-10, -8), (13, 0), (234, 0), (16, 150)],
    [(3, 0), (10, 8), (16, -150), (126, 0)],
];

const REFERENCE_RHO_2: [[(i64, i64); 4]; 4] = [
    [(214, 0), (-16, 150), (10, 8), (-3, 0)],
    [(-16, -150), (226, 0), (-13, 0), (-10, -8)],
    [(10, -8), (-13, 0), (234, 0), (16, -150)],
    [(-3, 0), (-10, 8), (16, 150), (126, 0)],
];

fn exact_from_table(table: &[[(i64, i64); 4]; 4]) -> DensityOperator<GaussianRational> {
    let m = Matrix::from_fn(4, |r, c| {
        let (re, im) = table[r][c];
        GaussianRational::new(
            crate::scalar::rational(re, REFERENCE_DENOMINATOR),
            crate::scalar::rational(im, REFERENCE_DENOMINATOR),
        )
    });
    DensityOperator::new(vec![2, 2], m, Role::State).expect("reference states are valid")
}

/// Two globally unitarily conjugate two-qubit states with equal spectra and
/// equal reductions that agree on every invariant through degree 5 but are
/// not locally equivalent. Entries are `(a + b i)/800`.
pub fn reference_states() -> (
    DensityOperator<GaussianRational>,
    DensityOperator<GaussianRational>,
) {
    (
        exact_from_table(&REFERENCE_RHO_1),
        exact_from_table(&REFERENCE_RHO_2),
    )
}

/// Parses an exact entry from a pair of strings `["p/q", "r/s"]`.
pub fn parse_exact_entry(re: &str, im: &str) -> Result<GaussianRational> {
    Ok(GaussianRational::new(
        parse_rational(re)?,
        parse_rational(im)?,
    ))
}
