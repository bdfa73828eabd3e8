//! Seeded sampling of states, projectors and local unitaries.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{check_size, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;
use crate::state::{DensityOperator, LocalUnitary, Role};

/// Largest total dimension for sampled operators.
pub const MAX_SAMPLE_DIM: usize = 256;

/// Standard normal deviates by the Box–Muller transform.
pub struct Gaussian {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl Gaussian {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform in `(0, 1]`.
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next(&mut self) -> f64 {
        if let Some(x) = self.spare.take() {
            return x;
        }
        let r = libm::sqrt(-2.0 * libm::log(self.uniform()));
        let theta = 2.0 * core::f64::consts::PI * self.uniform();
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }

    /// Complex normal with `E|z|² = 1`.
    pub fn complex(&mut self) -> Complex64 {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.next() * s, self.next() * s)
    }

    /// Uniform integer in `[-bound, bound]`.
    pub fn small_int(&mut self, bound: i64) -> i64 {
        (self.rng.next_u64() % (2 * bound as u64 + 1)) as i64 - bound
    }
}

/// Hilbert–Schmidt random state `G G† / tr(G G†)` for a square complex
/// Ginibre matrix `G`.
pub fn random_density(dims: &[usize], seed: u64) -> Result<DensityOperator<Complex64>> {
    let d: usize = dims.iter().product();
    check_size("sampled state dimension", d as u64, MAX_SAMPLE_DIM as u64)?;
    let mut g = Gaussian::new(seed);
    let ginibre = Matrix::from_fn(d, |_, _| g.complex());
    let gg = ginibre.mul(&ginibre.adjoint());
    let tr = gg.trace().re;
    let rho = gg.scale(&Complex64::new(1.0 / tr, 0.0));
    DensityOperator::new(dims.to_vec(), rho, Role::State)
}

/// Haar-random element of `U(2)`: Gram–Schmidt on a Ginibre matrix, which
/// leaves the `R` factor with a positive diagonal.
pub fn haar_unitary_2(g: &mut Gaussian) -> Matrix<Complex64> {
    let a = [g.complex(), g.complex()];
    let b = [g.complex(), g.complex()];
    let na = libm::sqrt(a[0].norm_sqr() + a[1].norm_sqr());
    let q1 = [a[0] / na, a[1] / na];
    let proj = q1[0].conj() * b[0] + q1[1].conj() * b[1];
    let v = [b[0] - proj * q1[0], b[1] - proj * q1[1]];
    let nv = libm::sqrt(v[0].norm_sqr() + v[1].norm_sqr());
    let q2 = [v[0] / nv, v[1] / nv];
    Matrix::from_rows(vec![vec![q1[0], q2[0]], vec![q1[1], q2[1]]]).expect("2×2")
}

pub fn random_local_unitary(parties: usize, seed: u64) -> LocalUnitary {
    let mut g = Gaussian::new(seed);
    LocalUnitary {
        factors: (0..parties).map(|_| haar_unitary_2(&mut g)).collect(),
    }
}

/// Random rank-`rank` orthogonal projector on `dims` in floating point.
pub fn random_projector(
    dims: &[usize],
    rank: usize,
    seed: u64,
) -> Result<DensityOperator<Complex64>> {
    let d: usize = dims.iter().product();
    check_size(
        "sampled projector dimension",
        d as u64,
        MAX_SAMPLE_DIM as u64,
    )?;
    check_size("projector rank", rank as u64, d as u64)?;
    let mut g = Gaussian::new(seed);
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    while basis.len() < rank {
        let mut v: Vec<Complex64> = (0..d).map(|_| g.complex()).collect();
        for q in &basis {
            let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= overlap * y;
            }
        }
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let p = Matrix::from_fn(d, |r, c| basis.iter().map(|q| q[r] * q[c].conj()).sum());
    DensityOperator::new(dims.to_vec(), p, Role::Projector)
}

/// Random rank-`rank` projector with exact Gaussian-rational entries:
/// orthogonalize small Gaussian-integer vectors and sum `v v† / (v† v)`.
pub fn random_rational_projector(
    dims: &[usize],
    rank: usize,
    seed: u64,
) -> Result<DensityOperator<GaussianRational>> {
    let d: usize = dims.iter().product();
    check_size(
        "sampled projector dimension",
        d as u64,
        MAX_SAMPLE_DIM as u64,
    )?;
    check_size("projector rank", rank as u64, d as u64)?;
    let mut g = Gaussian::new(seed);
    let mut basis: Vec<(Vec<GaussianRational>, GaussianRational)> = Vec::new();
    while basis.len() < rank {
        let mut v: Vec<GaussianRational> = (0..d)
            .map(|_| {
                GaussianRational::new(
                    crate::scalar::rational(g.small_int(3), 1),
                    crate::scalar::rational(g.small_int(3), 1),
                )
            })
            .collect();
        for (q, qq) in &basis {
            let overlap = inner(q, &v);
            let coef = div(&overlap, qq);
            for (x, y) in v.iter_mut().zip(q) {
                *x = x.clone() - coef.clone() * y.clone();
            }
        }
        let vv = inner(&v, &v);
        if !vv.is_zero() {
            basis.push((v, vv));
        }
    }
    let p = Matrix::from_fn(d, |r, c| {
        basis.iter().fold(GaussianRational::zero(), |acc, (q, qq)| {
            acc + div(&(q[r].clone() * q[c].conj()), qq)
        })
    });
    DensityOperator::new(dims.to_vec(), p, Role::Projector)
}

fn inner(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter()
        .zip(b)
        .fold(GaussianRational::zero(), |acc, (x, y)| {
            acc + x.conj() * y.clone()
        })
}

fn div(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    a.clone() / b.clone()
}
