//! Invariants expanded as polynomials in the matrix entries `ρ_{ij}`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{check_size, Error, Result};
use crate::invariant::{ContractionPlan, InvariantId};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Enumeration budget for [`expand_symbolic`].
pub const MAX_EXPANSION_ASSIGNMENTS: u64 = 10_000_000;

/// A monomial is the sorted multiset of the flat positions `row·dim + col`
/// of its `k` factors, so the map order is lexicographic in `(row, col)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    degree: usize,
    dim: usize,
    terms: BTreeMap<Vec<u16>, u64>,
}

impl SparsePolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    /// `(coefficient, [(row, col)])` pairs in canonical order, 0-based.
    pub fn terms(&self) -> impl Iterator<Item = (u64, Vec<(usize, usize)>)> + '_ {
        self.terms.iter().map(|(mono, &c)| {
            let pos = mono
                .iter()
                .map(|&p| (p as usize / self.dim, p as usize % self.dim))
                .collect();
            (c, pos)
        })
    }

    pub fn evaluate<S: Scalar>(&self, m: &Matrix<S>) -> Result<S> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "polynomial in a {0}×{0} matrix evaluated at a {1}×{1} one",
                self.dim,
                m.dim()
            )));
        }
        let entries = m.entries();
        Ok(self.terms.iter().fold(S::zero(), |acc, (mono, &c)| {
            let prod = mono
                .iter()
                .fold(S::one(), |p, &pos| p * entries[pos as usize].clone());
            acc + prod * S::from_i64(c as i64)
        }))
    }

    /// One line per monomial, `coeff * r{i},{j} * …` with 1-based indices,
    /// after a header line carrying the term count.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# terms={} degree={} dim={}",
            self.term_count(),
            self.degree,
            self.dim
        );
        for (c, positions) in self.terms() {
            let _ = write!(out, "{c}");
            for (r, col) in positions {
                let _ = write!(out, " * r{},{}", r + 1, col + 1);
            }
            out.push('\n');
        }
        out
    }
}

/// Expands `f_{π₁,…,π_N}` on `N` qubits by enumerating every index
/// assignment; each contributes `+1` to its monomial.
pub fn expand_symbolic(id: &InvariantId) -> Result<SparsePolynomial> {
    let dims = vec![2; id.parties()];
    let dim: usize = 1 << id.parties();
    let k = id.degree();
    let leaves = (dim as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    check_size(
        "symbolic expansion assignments",
        leaves,
        MAX_EXPANSION_ASSIGNMENTS,
    )?;
    check_size("matrix positions", (dim * dim) as u64, u16::MAX as u64 + 1)?;
    let plan = ContractionPlan::new(id.tuple(), &dims)?;
    let mut terms = BTreeMap::new();
    let mut j = vec![0usize; k];
    let mut stack: Vec<u16> = Vec::with_capacity(k);
    collect(&plan, 0, &mut j, &mut stack, &mut terms);
    Ok(SparsePolynomial {
        degree: k,
        dim,
        terms,
    })
}

fn collect(
    plan: &ContractionPlan,
    depth: usize,
    j: &mut [usize],
    stack: &mut Vec<u16>,
    terms: &mut BTreeMap<Vec<u16>, u64>,
) {
    for x in 0..plan.dim() {
        j[depth] = x;
        let mark = stack.len();
        for &mu in plan.ready(depth) {
            stack.push(plan.position(mu, j) as u16);
        }
        if depth + 1 == plan.degree() {
            let mut mono = stack.clone();
            mono.sort_unstable();
            *terms.entry(mono).or_insert(0) += 1;
        } else {
            collect(plan, depth + 1, j, stack, terms);
        }
        stack.truncate(mark);
    }
}
