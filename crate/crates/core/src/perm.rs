//! Permutations of `{1, ..., k}` with cycle-notation parsing and printing.
//!
//! Points are stored 0-based internally; every textual form is 1-based, so
//! `"(1 2 3)(4 5)"` is the permutation sending 1 to 2, 2 to 3, 3 to 1 and
//! swapping 4 and 5.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An element of the symmetric group `S_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k || seen[x] {
                return Err(Error::Parse(alloc::format!(
                    "{images:?} is not a permutation of 0..{k}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images (`images[i] = π(i + 1)`).
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("point 0 in 1-based image list".into()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Product of disjoint cycles given in 1-based points. Points not mentioned
    /// are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::Parse(alloc::format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if used[p - 1] {
                    return Err(Error::Parse(alloc::format!(
                        "point {p} appears in more than one place"
                    )));
                }
                used[p - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Ok(Self { images })
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`, `"id"` or `"()"`.
    ///
    /// With `degree = None` the degree is the largest point mentioned (1 for
    /// the identity).
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let largest = cycles.iter().flatten().copied().max().unwrap_or(1);
        let k = match degree {
            Some(k) if k < largest && !cycles.is_empty() => {
                return Err(Error::Parse(alloc::format!(
                    "point {largest} exceeds degree {k} in {text:?}"
                )))
            }
            Some(k) => k,
            None => largest,
        };
        Self::from_cycles(k, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Preimage of the 0-based point `y`.
    pub fn inverse_apply(&self, y: usize) -> usize {
        self.images.iter().position(|&x| x == y).expect("bijection")
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// `τ⁻¹ ∘ self ∘ τ`.
    pub fn conjugate_by(&self, tau: &Self) -> Self {
        let tau_inv = tau.inverse();
        Self {
            images: tau
                .images
                .iter()
                .map(|&t| tau_inv.images[self.images[t]])
                .collect(),
        }
    }

    /// Cycle decomposition with 0-based points, each cycle starting at its
    /// smallest point, cycles ordered by that point. Fixed points are
    /// included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Lehmer-code rank in `[0, k!)`, lexicographic on image arrays.
    pub fn rank(&self) -> u64 {
        let k = self.degree();
        let mut rank = 0u64;
        for i in 0..k {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&x| x < self.images[i])
                .count() as u64;
            rank = rank * (k - i) as u64 + smaller;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(degree: usize, mut rank: u64) -> Self {
        let mut digits = vec![0usize; degree];
        for i in (0..degree).rev() {
            let base = (degree - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<usize> = (0..degree).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Self { images }
    }

    /// Cycle notation including fixed points, e.g. `(1)(2 3)`.
    pub fn display_full(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles() {
            push_cycle(&mut s, &cycle);
        }
        s
    }
}

fn push_cycle(s: &mut String, cycle: &[usize]) {
    s.push('(');
    for (i, p) in cycle.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&(p + 1).to_string());
    }
    s.push(')');
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let mut s = String::new();
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            push_cycle(&mut s, &cycle);
        }
        f.write_str(&s)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let t = text.trim();
    if t == "id" || t.is_empty() {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(alloc::format!("expected '(' in {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(alloc::format!("unclosed cycle in {text:?}")))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split_whitespace() {
            let p: usize = tok
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad point {tok:?} in {text:?}")))?;
            if cycle.contains(&p) {
                return Err(Error::Parse(alloc::format!(
                    "point {p} repeated within a cycle in {text:?}"
                )));
            }
            cycle.push(p);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, k: usize) -> Permutation {
        Permutation::parse(s, Some(k)).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(1 2 3)(4 5)", 5).images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p("(1 2 3)(4 5)", 6).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("id", 3).to_string(), "id");
        assert_eq!(p("()", 2), Permutation::identity(2));
        assert_eq!(p("(2 3)", 3).display_full(), "(1)(2 3)");
        assert_eq!(Permutation::parse("(1 3)", None).unwrap().degree(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse("(1 2)(2 3)", None).is_err());
        assert!(Permutation::parse("(1 1)", None).is_err());
        assert!(Permutation::parse("(1 4)", Some(3)).is_err());
        assert!(Permutation::parse("1 2", None).is_err());
        assert!(Permutation::parse("(1 x)", None).is_err());
        assert!(Permutation::parse("(0 1)", None).is_err());
    }

    #[test]
    fn compose_and_conjugate() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        // apply (2 3) first: 1->1->2, 2->3->3, 3->2->1
        assert_eq!(a.compose(&b), p("(1 2 3)", 3));
        let c = p("(1 3)", 3).conjugate_by(&p("(1 2)", 3));
        assert_eq!(c, p("(2 3)", 3));
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rank_roundtrip_small() {
        for k in 0..=6 {
            let total: u64 = (1..=k as u64).product();
            for r in 0..total {
                let q = Permutation::unrank(k, r);
                assert_eq!(q.rank(), r);
            }
        }
        assert_eq!(Permutation::identity(5).rank(), 0);
    }

    #[test]
    fn cycles_roundtrip() {
        let q = p("(1 5 2)(3 6)", 7);
        let cycles: Vec<Vec<usize>> = q
            .cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect();
        assert_eq!(Permutation::from_cycles(7, &cycles).unwrap(), q);
    }
}
