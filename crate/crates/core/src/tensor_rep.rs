//! The permutation action `T_{n,k}` of `S_k` on `(Cⁿ)^{⊗k}` as index
//! bijections on base-`n` digit strings, and its multi-party version.
//!
//! Convention: digit position 1 is the most significant; the factor in slot
//! `μ` moves to slot `π(μ)`, i.e. output digits satisfy `d'_{π(μ)} = d_μ`.
//! For `N` parties the natural index layout is copy-major: position
//! `(μ - 1)·N + ν` holds party `ν` of copy `μ`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_size, Error, Result};
use crate::modular::{from_i64, inv_mod, mul_mod, sub_mod};
use crate::perm::Permutation;
use crate::tree::{catalan, tree_perm_set};
use crate::tuple::PermTuple;

/// Largest matrix dimension produced by [`dense_rep`].
pub const MAX_DENSE_DIM: usize = 4096;

fn digits(n: usize, len: usize, mut index: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in (0..len).rev() {
        d[slot] = index % n;
        index /= n;
    }
    d
}

fn undigits(n: usize, d: &[usize]) -> usize {
    d.iter().fold(0, |acc, &x| acc * n + x)
}

fn check_index(n: usize, len: usize, index: usize) -> Result<usize> {
    let bound = n.checked_pow(len as u32).ok_or(Error::Size {
        what: "index space n^len",
        value: u64::MAX,
        max: usize::MAX as u64,
    })?;
    if index >= bound {
        return Err(Error::IndexOutOfRange {
            index: index as u64,
            bound: bound as u64,
        });
    }
    Ok(bound)
}

/// Applies the digit permutation `d'_{π(μ)} = d_μ` to one index.
fn permute_digits(perm: &Permutation, d: &[usize]) -> Vec<usize> {
    let mut out = vec![0; d.len()];
    for (mu, &x) in d.iter().enumerate() {
        out[perm.apply(mu)] = x;
    }
    out
}

/// `T_{n,k}(π)` applied to a basis index in `[0, nᵏ)`.
pub fn rep_apply(n: usize, perm: &Permutation, index: usize) -> Result<usize> {
    let k = perm.degree();
    check_index(n, k, index)?;
    Ok(undigits(n, &permute_digits(perm, &digits(n, k, index))))
}

/// The macro/micro exchange `τ` on `{1, …, kN}` with `ak + b + 1 ↦ bN + a + 1`
/// (`a < N`, `b < k`), taking party-major positions to copy-major ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShufflePerm {
    pub copies: usize,
    pub parties: usize,
    pub tau: Permutation,
}

impl ShufflePerm {
    pub fn new(copies: usize, parties: usize) -> Result<Self> {
        if copies == 0 || parties == 0 {
            return Err(Error::Validation("k and N must be at least 1".into()));
        }
        let mut images = vec![0; copies * parties];
        for a in 0..parties {
            for b in 0..copies {
                images[a * copies + b] = b * parties + a;
            }
        }
        Ok(Self {
            copies,
            parties,
            tau: Permutation::from_images(images)?,
        })
    }

    /// Induced bijection `σ = T_{n,kN}(τ)` on indices.
    pub fn apply(&self, n: usize, index: usize) -> Result<usize> {
        rep_apply(n, &self.tau, index)
    }

    pub fn apply_inverse(&self, n: usize, index: usize) -> Result<usize> {
        rep_apply(n, &self.tau.inverse(), index)
    }
}

/// `shuffle_tau(k, N)`.
pub fn shuffle_tau(copies: usize, parties: usize) -> Result<ShufflePerm> {
    ShufflePerm::new(copies, parties)
}

/// `σ · (T(π₁) ⊗ … ⊗ T(π_N)) · σ⁻¹` applied to an index in `[0, n^{kN})`:
/// unshuffle to party-major blocks, act on each block, shuffle back.
pub fn multi_rep_apply(n: usize, tuple: &PermTuple, index: usize) -> Result<usize> {
    let k = tuple.degree();
    let parties = tuple.len();
    check_index(n, k * parties, index)?;
    let shuffle = ShufflePerm::new(k, parties)?;
    let block_major = shuffle.apply_inverse(n, index)?;
    let block = n.pow(k as u32);
    let blocks = digits(block, parties, block_major);
    let acted: Vec<usize> = blocks
        .iter()
        .zip(tuple.parts())
        .map(|(&b, p)| rep_apply(n, p, b))
        .collect::<Result<_>>()?;
    shuffle.apply(n, undigits(block, &acted))
}

/// Dense 0/1 matrix `M` (row-major, `dim × dim`) with `M[multi_rep_apply(i), i] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseRep {
    pub dim: usize,
    pub entries: Vec<u8>,
}

impl DenseRep {
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.dim + col]
    }

    pub fn is_orthogonal(&self) -> bool {
        // M·Mᵀ = I for a 0/1 matrix means exactly one 1 per row and column
        let d = self.dim;
        let mut col_count = vec![0usize; d];
        for r in 0..d {
            let row = &self.entries[r * d..(r + 1) * d];
            if row.iter().filter(|&&x| x == 1).count() != 1 {
                return false;
            }
            for (c, &x) in row.iter().enumerate() {
                col_count[c] += x as usize;
            }
        }
        col_count.iter().all(|&c| c == 1)
    }
}

pub fn dense_rep(n: usize, tuple: &PermTuple) -> Result<DenseRep> {
    let len = tuple.degree() * tuple.len();
    let dim = n.checked_pow(len as u32).unwrap_or(usize::MAX);
    check_size(
        "dense representation dimension",
        dim as u64,
        MAX_DENSE_DIM as u64,
    )?;
    let mut entries = vec![0u8; dim * dim];
    for i in 0..dim {
        let row = multi_rep_apply(n, tuple, i)?;
        entries[row * dim + i] = 1;
    }
    Ok(DenseRep { dim, entries })
}

/// Rank over `GF(2⁶¹ − 1)` of integer vectors. Never exceeds the rank over
/// `Q`, so a full-rank answer certifies rational full rank.
pub fn modular_rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| from_i64(x)).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = sub_mod(*x, mul_mod(f, y));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Largest `k` accepted by [`basis_rank`].
pub const MAX_BASIS_RANK_DEGREE: usize = 6;

/// Rank of `{T_{2,k}(π) : π ∈ P_k}` as flattened `2ᵏ × 2ᵏ` matrices.
pub fn basis_rank(k: usize) -> Result<usize> {
    check_size(
        "basis rank degree k",
        k as u64,
        MAX_BASIS_RANK_DEGREE as u64,
    )?;
    if k == 0 {
        return Ok(1);
    }
    let vectors: Vec<Vec<i64>> = tree_perm_set(k)?
        .into_iter()
        .map(|p| {
            let t = PermTuple::new(vec![p])?;
            Ok(dense_rep(2, &t)?
                .entries
                .into_iter()
                .map(i64::from)
                .collect())
        })
        .collect::<Result<_>>()?;
    let rank = modular_rank(&vectors);
    debug_assert!(rank as u64 <= catalan(k as u64));
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, k: usize) -> Permutation {
        Permutation::parse(s, Some(k)).unwrap()
    }

    #[test]
    fn rep_apply_examples() {
        let id = Permutation::identity(3);
        for i in 0..8 {
            assert_eq!(rep_apply(2, &id, i).unwrap(), i);
        }
        // e₁ = 100 -> e₂ = 010 under (1 2 3)
        assert_eq!(rep_apply(2, &perm("(1 2 3)", 3), 0b100).unwrap(), 0b010);
        assert_eq!(rep_apply(2, &perm("(1 2)", 2), 1).unwrap(), 2);
        assert!(rep_apply(2, &id, 8).is_err());
    }

    #[test]
    fn homomorphism_exhaustive_small() {
        for k in 1..=4 {
            let total: u64 = (1..=k as u64).product();
            for a in 0..total {
                for b in 0..total {
                    let p = Permutation::unrank(k, a);
                    let q = Permutation::unrank(k, b);
                    let pq = p.compose(&q);
                    for i in 0..1 << k {
                        let lhs = rep_apply(2, &pq, i).unwrap();
                        let rhs = rep_apply(2, &p, rep_apply(2, &q, i).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn shuffle_examples() {
        assert!(shuffle_tau(4, 1).unwrap().tau.is_identity());
        assert_eq!(shuffle_tau(2, 2).unwrap().tau, perm("(2 3)", 4));
        assert_eq!(shuffle_tau(2, 3).unwrap().tau, perm("(2 4 5 3)", 6));
        for (k, n) in [(2, 3), (3, 2), (4, 3)] {
            let a = shuffle_tau(k, n).unwrap().tau;
            let b = shuffle_tau(n, k).unwrap().tau;
            assert!(b.compose(&a).is_identity());
        }
    }

    /// Direct definition: digit of party ν in copy μ moves to copy π_ν(μ).
    fn multi_direct(tuple: &PermTuple, index: usize) -> usize {
        let k = tuple.degree();
        let n_par = tuple.len();
        let d = digits(2, k * n_par, index);
        let mut out = vec![0; d.len()];
        for mu in 0..k {
            for (nu, p) in tuple.parts().iter().enumerate() {
                out[p.apply(mu) * n_par + nu] = d[mu * n_par + nu];
            }
        }
        undigits(2, &out)
    }

    #[test]
    fn multi_rep_matches_direct_definition() {
        for s in [
            "(1 2);(1 2)",
            "(1 2 3);(1 2)",
            "(1 3);id;(2 3)",
            "(1 2 3)(4 5);(1 2 4 5 6)",
        ] {
            let t = PermTuple::parse(s, None).unwrap();
            let dim = 1usize << (t.degree() * t.len());
            for i in 0..dim {
                assert_eq!(
                    multi_rep_apply(2, &t, i).unwrap(),
                    multi_direct(&t, i),
                    "{s}"
                );
            }
        }
    }

    #[test]
    fn multi_rep_special_cases() {
        let id = PermTuple::identity(3, 2);
        for i in 0..64 {
            assert_eq!(multi_rep_apply(2, &id, i).unwrap(), i);
        }
        let single = PermTuple::parse("(1 3 2)", None).unwrap();
        for i in 0..8 {
            assert_eq!(
                multi_rep_apply(2, &single, i).unwrap(),
                rep_apply(2, &single.parts()[0], i).unwrap()
            );
        }
        // ((1 2),(1 2)) swaps the two 4-dimensional copies
        let swap = PermTuple::parse("(1 2);(1 2)", None).unwrap();
        for i in 0..16 {
            let (hi, lo) = (i >> 2, i & 3);
            assert_eq!(multi_rep_apply(2, &swap, i).unwrap(), (lo << 2) | hi);
        }
    }

    #[test]
    fn dense_examples() {
        let id = dense_rep(2, &PermTuple::identity(2, 2)).unwrap();
        for r in 0..16 {
            for c in 0..16 {
                assert_eq!(id.get(r, c), u8::from(r == c));
            }
        }
        let swap = dense_rep(2, &PermTuple::parse("(1 2)", None).unwrap()).unwrap();
        let expected = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(swap.get(r, c), expected[r][c]);
            }
        }
        let t = PermTuple::parse("(1 2 3);(1 3)", None).unwrap();
        assert!(dense_rep(2, &t).unwrap().is_orthogonal());
        assert!(dense_rep(2, &PermTuple::identity(7, 2)).is_err());
    }

    #[test]
    fn basis_ranks_are_catalan() {
        assert_eq!(basis_rank(1).unwrap(), 1);
        assert_eq!(basis_rank(3).unwrap(), 5);
        for k in 0..=5 {
            assert_eq!(basis_rank(k).unwrap() as u64, catalan(k as u64));
        }
        assert!(basis_rank(7).is_err());
    }

    #[test]
    fn modular_rank_detects_dependence() {
        let v = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(modular_rank(&v), 2);
    }
}
