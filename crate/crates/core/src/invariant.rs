//! Evaluation of the invariants `f_{π₁,…,π_N}(ρ)`:
//!
//! ```text
//! f(ρ) = Σ_{j⁽¹⁾,…,j⁽ᵏ⁾} Π_μ ρ[r⁽ᵘ⁾, j⁽ᵘ⁾],   digit ν of r⁽ᵘ⁾ = digit ν of j^(π_ν(μ))
//! ```
//!
//! which equals `tr(T · ρ^{⊗k})` for the multi-party representation matrix
//! `T` of the tuple. The contraction walks the copies depth first, folding
//! in each factor as soon as every copy it reads is fixed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{AddAssign, Mul, MulAssign};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_size, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{common_denominator, scale_to_integer, GaussianRational, Scalar};
use crate::state::DensityOperator;
use crate::tensor_rep::dense_rep;
use crate::tuple::PermTuple;

/// Largest number of index assignments `dim^k` a contraction may visit.
pub const MAX_ASSIGNMENTS: u64 = 1 << 24;

/// Names the invariant `f_{π₁,…,π_N}` by its permutation tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantId {
    tuple: PermTuple,
}

impl InvariantId {
    pub fn new(tuple: PermTuple) -> Self {
        Self { tuple }
    }

    pub fn parse(text: &str) -> Result<Self> {
        PermTuple::parse(text, None).map(Self::new)
    }

    pub fn tuple(&self) -> &PermTuple {
        &self.tuple
    }

    pub fn degree(&self) -> usize {
        self.tuple.degree()
    }

    pub fn parties(&self) -> usize {
        self.tuple.len()
    }
}

impl From<PermTuple> for InvariantId {
    fn from(tuple: PermTuple) -> Self {
        Self::new(tuple)
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f[{}]", self.tuple)
    }
}

/// Precomputed contraction schedule for one tuple and one subsystem layout.
#[derive(Debug, Clone)]
pub struct ContractionPlan {
    degree: usize,
    dim: usize,
    /// `sources[μ][ν] = π_ν(μ)`.
    sources: Vec<Vec<usize>>,
    /// Factors completed when copy `c` is fixed.
    ready: Vec<Vec<usize>>,
    /// `digit_part[ν][x]`: the party-`ν` digit of index `x`, left in place.
    digit_part: Vec<Vec<usize>>,
}

impl ContractionPlan {
    pub fn new(tuple: &PermTuple, dims: &[usize]) -> Result<Self> {
        if dims.len() != tuple.len() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "tuple has {} parts but the operator has {} subsystems",
                tuple.len(),
                dims.len()
            )));
        }
        let k = tuple.degree();
        let dim: usize = dims.iter().product();
        let leaves = (dim as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        check_size("contraction assignments dim^k", leaves, MAX_ASSIGNMENTS)?;

        let sources: Vec<Vec<usize>> = (0..k)
            .map(|mu| tuple.parts().iter().map(|p| p.apply(mu)).collect())
            .collect();
        let mut ready = vec![Vec::new(); k];
        for (mu, src) in sources.iter().enumerate() {
            let depth = src.iter().copied().fold(mu, usize::max);
            ready[depth].push(mu);
        }
        let mut digit_part = Vec::with_capacity(dims.len());
        for (nu, &d) in dims.iter().enumerate() {
            let stride: usize = dims[nu + 1..].iter().product();
            digit_part.push((0..dim).map(|x| (x / stride) % d * stride).collect());
        }
        Ok(Self {
            degree: k,
            dim,
            sources,
            ready,
            digit_part,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat row-major position of factor `mu` under the assignment `j`.
    #[inline]
    pub(crate) fn position(&self, mu: usize, j: &[usize]) -> usize {
        let row: usize = self.sources[mu]
            .iter()
            .zip(&self.digit_part)
            .map(|(&src, part)| part[j[src]])
            .sum();
        row * self.dim + j[mu]
    }

    pub(crate) fn ready(&self, depth: usize) -> &[usize] {
        &self.ready[depth]
    }

    /// The contraction over any commutative ring, given row-major entries.
    pub fn contract<T>(&self, entries: &[T]) -> T
    where
        T: Clone + Zero + One + AddAssign,
        for<'a> &'a T: Mul<&'a T, Output = T>,
    {
        assert_eq!(entries.len(), self.dim * self.dim, "entry count mismatch");
        let mut j = vec![0usize; self.degree];
        let mut acc = T::zero();
        self.descend(entries, 0, &T::one(), &mut j, &mut acc);
        acc
    }

    fn descend<T>(&self, entries: &[T], depth: usize, partial: &T, j: &mut [usize], acc: &mut T)
    where
        T: Clone + Zero + One + AddAssign,
        for<'a> &'a T: Mul<&'a T, Output = T>,
    {
        let last = depth + 1 == self.degree;
        for x in 0..self.dim {
            j[depth] = x;
            let mut p = partial.clone();
            for &mu in &self.ready[depth] {
                p = &p * &entries[self.position(mu, j)];
                if p.is_zero() {
                    break;
                }
            }
            if p.is_zero() {
                continue;
            }
            if last {
                *acc += p;
            } else {
                self.descend(entries, depth + 1, &p, j, acc);
            }
        }
    }

    /// Float contraction at many operators in one pass: the index walk is
    /// shared and every factor multiplies a whole column of samples.
    pub fn contract_batch<T: BatchScalar>(&self, columns: &EntryColumns<T>) -> Result<Vec<T>> {
        if columns.dim != self.dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "plan for size {} evaluated at size {}",
                self.dim,
                columns.dim
            )));
        }
        let n = columns.count;
        let mut buf = vec![T::one(); (self.degree + 1) * n];
        let mut acc = vec![T::zero(); n];
        let mut j = vec![0usize; self.degree];
        self.descend_batch(columns, 0, &mut j, &mut buf, &mut acc);
        Ok(acc)
    }

    fn descend_batch<T: BatchScalar>(
        &self,
        columns: &EntryColumns<T>,
        depth: usize,
        j: &mut [usize],
        buf: &mut [T],
        acc: &mut [T],
    ) {
        let n = columns.count;
        let last = depth + 1 == self.degree;
        for x in 0..self.dim {
            j[depth] = x;
            {
                let (head, tail) = buf.split_at_mut((depth + 1) * n);
                let cur = &head[depth * n..];
                let next = &mut tail[..n];
                next.copy_from_slice(cur);
                for &mu in &self.ready[depth] {
                    for (a, b) in next.iter_mut().zip(columns.column(self.position(mu, j))) {
                        *a *= *b;
                    }
                }
                if last {
                    for (a, b) in acc.iter_mut().zip(next.iter()) {
                        *a += *b;
                    }
                }
            }
            if !last {
                self.descend_batch(columns, depth + 1, j, buf, acc);
            }
        }
    }

    pub fn evaluate<S: Contract>(&self, rho: &DensityOperator<S>) -> Result<S> {
        if rho.matrix().dim() != self.dim || rho.parties() != self.digit_part.len() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "plan built for {} subsystems of total size {}, got dims {:?}",
                self.digit_part.len(),
                self.dim,
                rho.dims()
            )));
        }
        Ok(S::contract(self, rho.matrix()))
    }
}

/// Entries of many equally sized operators, stored position-major so that
/// one matrix position across all operators is contiguous.
#[derive(Debug, Clone)]
pub struct EntryColumns<T = Complex64> {
    dim: usize,
    count: usize,
    data: Vec<T>,
}

/// Element types for [`ContractionPlan::contract_batch`].
pub trait BatchScalar: Copy + Zero + One + MulAssign + AddAssign {}

impl<T: Copy + Zero + One + MulAssign + AddAssign> BatchScalar for T {}

impl EntryColumns {
    pub fn new(ops: &[DensityOperator<Complex64>]) -> Result<Self> {
        let dim = ops.first().map_or(0, |op| op.matrix().dim());
        let entries: Vec<Vec<Complex64>> = ops
            .iter()
            .map(|op| op.matrix().entries().to_vec())
            .collect();
        Self::from_entries(dim, &entries)
    }
}

impl<T: BatchScalar> EntryColumns<T> {
    /// From row-major `dim × dim` entry lists, one per operator.
    pub fn from_entries(dim: usize, ops: &[Vec<T>]) -> Result<Self> {
        if ops.iter().any(|e| e.len() != dim * dim) {
            return Err(Error::DimensionMismatch("operators differ in size".into()));
        }
        let count = ops.len();
        let mut data = vec![T::zero(); dim * dim * count];
        for (s, entries) in ops.iter().enumerate() {
            for (pos, &z) in entries.iter().enumerate() {
                data[pos * count + s] = z;
            }
        }
        Ok(Self { dim, count, data })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    fn column(&self, pos: usize) -> &[T] {
        &self.data[pos * self.count..(pos + 1) * self.count]
    }
}

/// Scalars the contraction can run over.
pub trait Contract: Scalar {
    fn contract(plan: &ContractionPlan, m: &Matrix<Self>) -> Self;
}

impl Contract for Complex64 {
    fn contract(plan: &ContractionPlan, m: &Matrix<Self>) -> Self {
        plan.contract(m.entries())
    }
}

impl Contract for GaussianRational {
    /// Clears denominators first so the inner loop multiplies Gaussian
    /// integers, then divides by `D^k` once.
    fn contract(plan: &ContractionPlan, m: &Matrix<Self>) -> Self {
        let d = common_denominator(m.entries());
        let scaled: Vec<Complex<BigInt>> = m
            .entries()
            .iter()
            .map(|z| scale_to_integer(z, &d))
            .collect();
        let total = plan.contract(&scaled);
        let den = num_traits::pow(d, plan.degree());
        Complex::new(
            BigRational::new(total.re, den.clone()),
            BigRational::new(total.im, den),
        )
    }
}

/// `f_{π₁,…,π_N}(ρ)`; exact for Gaussian-rational operators.
pub fn eval_invariant<S: Contract>(id: &InvariantId, rho: &DensityOperator<S>) -> Result<S> {
    ContractionPlan::new(id.tuple(), rho.dims())?.evaluate(rho)
}

/// `tr(T · ρ^{⊗k})` from the explicit representation matrix `T`, with the
/// entries of `ρ^{⊗k}` formed on demand. Needs equal local dimensions and
/// `n^{kN} ≤ 4096`.
pub fn eval_invariant_oracle<S: Scalar>(id: &InvariantId, rho: &DensityOperator<S>) -> Result<S> {
    let dims = rho.dims();
    let n = dims[0];
    if dims.len() != id.parties() || dims.iter().any(|&d| d != n) {
        return Err(Error::DimensionMismatch(alloc::format!(
            "oracle needs {} subsystems of equal size, got {dims:?}",
            id.parties()
        )));
    }
    let t = dense_rep(n, id.tuple())?;
    let (k, local) = (id.degree(), rho.matrix().dim());
    let power_entry = |mut row: usize, mut col: usize| {
        let mut p = S::one();
        for _ in 0..k {
            p = p * rho.matrix().get(row % local, col % local).clone();
            row /= local;
            col /= local;
        }
        p
    };
    let mut acc = S::zero();
    for a in 0..t.dim {
        for b in 0..t.dim {
            if t.get(a, b) == 1 {
                acc = acc + power_entry(b, a);
            }
        }
    }
    Ok(acc)
}

/// Expectations `(⟨M₁⟩, ⟨M₂⟩) = (2·Re f, −2·Im f)` of the Hermitian
/// observables `M₁ = F + F†` and `M₂ = i(F − F†)` on `k` copies of `ρ`.
pub fn observable_means<S: Contract>(id: &InvariantId, rho: &DensityOperator<S>) -> Result<(S, S)> {
    let f = eval_invariant(id, rho)?;
    let fc = f.conj();
    Ok((f.clone() + fc.clone(), S::imag_unit() * (f - fc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::sample::{random_density, random_rational_projector};
    use crate::state::reference_states;

    /// Literal sum over all assignments, digit by digit.
    fn brute_force(tuple: &PermTuple, rho: &DensityOperator<Complex64>) -> Complex64 {
        let (k, parties) = (tuple.degree(), tuple.len());
        let dim = rho.matrix().dim();
        let mut total = Complex64::zero();
        for code in 0..dim.pow(k as u32) {
            let j: Vec<usize> = (0..k).map(|c| code / dim.pow(c as u32) % dim).collect();
            let bit = |x: usize, nu: usize| (x >> (parties - 1 - nu)) & 1;
            let mut p = Complex64::one();
            for mu in 0..k {
                let row = (0..parties).fold(0, |acc, nu| {
                    acc * 2 + bit(j[tuple.parts()[nu].apply(mu)], nu)
                });
                p *= rho.matrix().get(row, j[mu]);
            }
            total += p;
        }
        total
    }

    fn id(text: &str) -> InvariantId {
        InvariantId::parse(text).unwrap()
    }

    #[test]
    fn trivial_values() {
        let rho = random_density(&[2, 2], 1).unwrap();
        let f = eval_invariant(&id("id;id"), &rho).unwrap();
        assert!((f - Complex64::one()).norm() < 1e-14);
        let (m1, m2) = observable_means(&id("id;id"), &rho).unwrap();
        assert!((m1.re - 2.0).abs() < 1e-14 && m2.norm() < 1e-14);
        let swap = eval_invariant(&id("(1 2);(1 2)"), &rho).unwrap();
        assert!((swap.re - rho.purity()).abs() < 1e-12 && swap.im.abs() < 1e-12);
    }

    #[test]
    fn contraction_matches_definition_and_oracle() {
        let cases = [
            ("(1 2 3);(1 2)", 3usize),
            ("(1 3 2);(2 3)", 4),
            ("(1 2)(3 4);(1 4 2)", 5),
            ("(1 2 3 4);(1 3)", 6),
        ];
        for (text, seed) in cases {
            let t = id(text);
            let rho = random_density(&[2, 2], seed as u64).unwrap();
            let f = eval_invariant(&t, &rho).unwrap();
            assert!((f - brute_force(t.tuple(), &rho)).norm() < 1e-12, "{text}");
            assert!(
                (f - eval_invariant_oracle(&t, &rho).unwrap()).norm() < 1e-12,
                "{text}"
            );
        }
        let three = id("(1 2);id;(1 2)");
        let rho = random_density(&[2, 2, 2], 9).unwrap();
        let f = eval_invariant(&three, &rho).unwrap();
        assert!((f - brute_force(three.tuple(), &rho)).norm() < 1e-12);
        assert!((f - eval_invariant_oracle(&three, &rho).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn batch_matches_single_evaluations() {
        let states: Vec<_> = (0..7)
            .map(|s| random_density(&[2, 2], 40 + s).unwrap())
            .collect();
        let columns = EntryColumns::new(&states).unwrap();
        let t = id("(1 2 3)(4 5);(1 2 4 5)");
        let plan = ContractionPlan::new(t.tuple(), &[2, 2]).unwrap();
        let batch = plan.contract_batch(&columns).unwrap();
        for (rho, b) in states.iter().zip(&batch) {
            assert!((plan.evaluate(rho).unwrap() - b).norm() < 1e-13);
        }
    }

    #[test]
    fn single_party_cycle_traces() {
        let rho = random_density(&[2], 4).unwrap();
        let pi = Permutation::parse("(1 2 3)(4 5)", Some(6)).unwrap();
        let t = InvariantId::new(PermTuple::new(vec![pi]).unwrap());
        let m = rho.matrix();
        let m2 = m.mul(m);
        let expect = m.mul(&m2).trace() * m2.trace() * m.trace();
        assert!((eval_invariant(&t, &rho).unwrap() - expect).norm() < 1e-12);
    }

    #[test]
    fn exact_mode_matches_float() {
        let (r1, _) = reference_states();
        let t = id("(1 2 3)(4 5);(1 2 4 5 6)");
        let exact = eval_invariant(&t, &r1).unwrap();
        let float = eval_invariant(&t, &r1.to_float()).unwrap();
        assert!((exact.to_c64() - float).norm() < 1e-14);
        assert_eq!(exact, eval_invariant_oracle(&t, &r1).unwrap());
    }

    #[test]
    fn degree_six_witnesses_separate_reference_states() {
        let (r1, r2) = reference_states();
        for text in ["(1 2 3)(4 5);(1 2 4 5 6)", "(1 2 3)(4 5);(1 2 3 4 5 6)"] {
            let t = id(text);
            assert_ne!(
                eval_invariant(&t, &r1).unwrap(),
                eval_invariant(&t, &r2).unwrap()
            );
        }
        let t = id("(1 2 3 4);(1 3)");
        assert_eq!(
            eval_invariant(&t, &r1).unwrap(),
            eval_invariant(&t, &r2).unwrap()
        );
    }

    #[test]
    fn involutions_give_real_values() {
        let rho = random_density(&[2, 2], 21).unwrap();
        let (_, m2) = observable_means(&id("(1 2)(3 4);(1 3)"), &rho).unwrap();
        assert!(m2.norm() < 1e-12);
        let p = random_rational_projector(&[2, 2], 2, 3).unwrap();
        let (m1, m2) = observable_means(&id("(1 3);(1 2)(3 4)"), &p).unwrap();
        assert!(m2.is_zero());
        assert!(m1.im.is_zero());
    }

    #[test]
    fn errors() {
        let rho = random_density(&[2, 2], 1).unwrap();
        assert!(eval_invariant(&id("(1 2)"), &rho).is_err());
        assert!(eval_invariant_oracle(&id("(1 2 3 4 5 6 7);id"), &rho).is_err());
        let big = id("(1 2 3 4 5 6 7 8 9 10 11 12 13);id");
        assert!(matches!(
            eval_invariant(&big, &rho),
            Err(Error::Size { .. })
        ));
    }
}
