//! Arithmetic modulo the Mersenne prime `p = 2⁶¹ − 1` and in its quadratic
//! extension `GF(p²) = GF(p)[i]` (`−1` is a non-residue since `p ≡ 3 mod 4`).
//!
//! Reducing an integer (or Gaussian-integer) matrix modulo `p` can only
//! lower its rank, so a rank computed here is a certified lower bound on
//! the rank over `Q` (or `Q(i)`).

use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use alloc::vec;
use num_traits::{One, Zero};

use crate::sample::Gaussian;

pub const PRIME: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u128) -> u64 {
    let folded = (x & PRIME as u128) as u64 + (x >> 61) as u64;
    let folded = (folded & PRIME) + (folded >> 61);
    if folded >= PRIME {
        folded - PRIME
    } else {
        folded
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

#[inline]
pub fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub fn inv_mod(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow_mod(a, PRIME - 2)
}

/// Residue of a signed integer.
pub fn from_i64(x: i64) -> u64 {
    (x as i128).rem_euclid(PRIME as i128) as u64
}

/// `re + im·i` in `GF(p²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp2 {
    pub re: u64,
    pub im: u64,
}

impl Fp2 {
    pub fn new(re: i64, im: i64) -> Self {
        Self {
            re: from_i64(re),
            im: from_i64(im),
        }
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: sub_mod(0, self.im),
        }
    }

    /// Inverse of a nonzero element: `(a − bi)/(a² + b²)`.
    pub fn inv(self) -> Self {
        let norm = add_mod(mul_mod(self.re, self.re), mul_mod(self.im, self.im));
        let n = inv_mod(norm);
        let c = self.conj();
        Self {
            re: mul_mod(c.re, n),
            im: mul_mod(c.im, n),
        }
    }

    pub fn scale(self, s: u64) -> Self {
        Self {
            re: mul_mod(self.re, s),
            im: mul_mod(self.im, s),
        }
    }
}

impl Add for Fp2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            re: add_mod(self.re, o.re),
            im: add_mod(self.im, o.im),
        }
    }
}

impl AddAssign for Fp2 {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Fp2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            re: sub_mod(self.re, o.re),
            im: sub_mod(self.im, o.im),
        }
    }
}

impl Neg for Fp2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero() - self
    }
}

impl Mul for Fp2 {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.re as u128, self.im as u128, o.re as u128, o.im as u128);
        // (a + bi)(c + di) = (ac − bd) + (ad + bc)i, with sums kept below 2¹²³
        let re = a * c + (PRIME as u128 - b) * d;
        let im = a * d + b * c;
        Self {
            re: reduce(re),
            im: reduce(im),
        }
    }
}

impl<'a> Mul<&'a Fp2> for &'a Fp2 {
    type Output = Fp2;
    fn mul(self, o: &'a Fp2) -> Fp2 {
        *self * *o
    }
}

impl MulAssign for Fp2 {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl core::iter::Product for Fp2 {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| a * b)
    }
}

impl Zero for Fp2 {
    fn zero() -> Self {
        Self { re: 0, im: 0 }
    }

    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl One for Fp2 {
    fn one() -> Self {
        Self { re: 1, im: 0 }
    }
}

/// A random rational density operator `G G† / tr(G G†)`, with `G` a
/// `dim × dim` matrix of Gaussian integers in `[-bound, bound]`, reduced
/// modulo `p` and flattened row-major.
pub fn random_state(dim: usize, bound: i64, seed: u64) -> Vec<Fp2> {
    let mut g = Gaussian::new(seed);
    loop {
        let m: Vec<(i64, i64)> = (0..dim * dim)
            .map(|_| (g.small_int(bound), g.small_int(bound)))
            .collect();
        let mut gg = vec![(0i64, 0i64); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let (mut re, mut im) = (0, 0);
                for k in 0..dim {
                    let (a, b) = m[r * dim + k];
                    let (x, y) = m[c * dim + k];
                    // (a + bi)(x − yi)
                    re += a * x + b * y;
                    im += b * x - a * y;
                }
                gg[r * dim + c] = (re, im);
            }
        }
        let trace: i64 = (0..dim).map(|i| gg[i * dim + i].0).sum();
        if trace == 0 {
            continue;
        }
        let t = inv_mod(from_i64(trace));
        return gg
            .iter()
            .map(|&(re, im)| Fp2::new(re, im).scale(t))
            .collect();
    }
}

/// Rank of a row set over `GF(p²)` by Gaussian elimination.
pub fn rank(rows: &[Vec<Fp2>]) -> usize {
    let mut m: Vec<Vec<Fp2>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = *x - f * y;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul_mod(PRIME - 1, PRIME - 1), 1);
        assert_eq!(mul_mod(1 << 60, 4), 2);
        let i = Fp2::new(0, 1);
        assert_eq!(i * i, Fp2::new(-1, 0));
        let z = Fp2::new(3, -7);
        assert_eq!(z * z.inv(), Fp2::one());
        assert_eq!(Fp2::new(-5, 2) + Fp2::new(5, -2), Fp2::zero());
        let big = Fp2 {
            re: PRIME - 1,
            im: PRIME - 1,
        };
        assert_eq!(big * big, Fp2::new(0, 2));
    }

    #[test]
    fn ranks() {
        let r = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| Fp2::new(a, b)).collect::<Vec<_>>();
        let rows = vec![
            r(&[(1, 0), (0, 1)]),
            r(&[(0, 1), (-1, 0)]),
            r(&[(2, 0), (3, 0)]),
        ];
        // row 2 = i · row 1
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn batch_contraction_matches_single() {
        use crate::invariant::{ContractionPlan, EntryColumns};
        use crate::tuple::PermTuple;
        let states: Vec<Vec<Fp2>> = (0..5).map(|s| random_state(4, 20, s)).collect();
        let columns = EntryColumns::from_entries(4, &states).unwrap();
        for text in ["id;id", "(1 2 3);(1 2)", "(1 2 3)(4 5);(1 2 4 5 6)"] {
            let plan =
                ContractionPlan::new(&PermTuple::parse(text, None).unwrap(), &[2, 2]).unwrap();
            let batch = plan.contract_batch(&columns).unwrap();
            let single: Vec<Fp2> = states.iter().map(|s| plan.contract(s)).collect();
            assert_eq!(batch, single, "{text}");
        }
        assert_eq!(
            ContractionPlan::new(&PermTuple::parse("id;id", None).unwrap(), &[2, 2])
                .unwrap()
                .contract_batch(&columns)
                .unwrap(),
            vec![Fp2::one(); 5]
        );
    }

    #[test]
    fn random_states_are_hermitian_with_unit_trace() {
        let rho = random_state(4, 5, 9);
        let trace = (0..4).fold(Fp2::zero(), |acc, i| acc + rho[i * 5]);
        assert_eq!(trace, Fp2::one());
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(rho[r * 4 + c], rho[c * 4 + r].conj());
            }
        }
    }
}
