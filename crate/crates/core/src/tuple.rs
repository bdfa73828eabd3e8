//! Tuples `(π₁, …, π_N)` of permutations of a common degree. Each tuple
//! indexes one local-unitary invariant of an `N`-qubit system.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermTuple {
    parts: Vec<Permutation>,
}

impl PermTuple {
    pub fn new(parts: Vec<Permutation>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Validation("a tuple needs at least one part".into()));
        };
        let k = first.degree();
        if k == 0 {
            return Err(Error::Validation("tuple degree must be at least 1".into()));
        }
        if parts.iter().any(|p| p.degree() != k) {
            return Err(Error::DimensionMismatch(
                "all parts of a tuple must share one degree".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn identity(degree: usize, parts: usize) -> Self {
        Self {
            parts: vec![Permutation::identity(degree); parts],
        }
    }

    /// Parses parts in cycle notation joined by `;`, e.g.
    /// `"(1 2 3)(4 5);(1 2 4 5 6)"`. Without an explicit degree the largest
    /// point of any part is used.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let pieces: Vec<&str> = text.split(';').collect();
        let k = match degree {
            Some(k) => k,
            None => pieces
                .iter()
                .map(|s| Permutation::parse(s, None).map(|p| p.degree()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(1),
        };
        let parts = pieces
            .iter()
            .map(|s| Permutation::parse(s, Some(k)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn degree(&self) -> usize {
        self.parts[0].degree()
    }

    /// Number of parts, i.e. the number of subsystems `N`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Permutation] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Permutation> {
        self.parts
    }

    /// Simultaneous conjugation `τ⁻¹ π_ν τ` of every part.
    pub fn conjugate_by(&self, tau: &Permutation) -> Self {
        Self {
            parts: self.parts.iter().map(|p| p.conjugate_by(tau)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            parts: self.parts.iter().map(Permutation::inverse).collect(),
        }
    }

    /// Orbits of the group generated by the parts, each sorted, ordered by
    /// smallest element (0-based points).
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let inverses: Vec<Permutation> = self.parts.iter().map(Permutation::inverse).collect();
        let mut label = vec![usize::MAX; k];
        let mut orbits = Vec::new();
        for start in 0..k {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in self.parts.iter().chain(inverses.iter()) {
                    let y = g.apply(x);
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Whether the parts generate a transitive subgroup of `S_k`.
    pub fn is_transitive(&self) -> bool {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for p in &self.parts {
                for y in [p.apply(x), p.inverse_apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == k
    }

    /// Restriction to a union of orbits, relabelled to `1..=|points|` in
    /// increasing order. `points` must be closed under every part.
    pub fn restrict(&self, points: &[usize]) -> Result<Self> {
        let k = self.degree();
        let mut relabel = vec![usize::MAX; k];
        for (new, &old) in points.iter().enumerate() {
            relabel[old] = new;
        }
        let mut parts = Vec::with_capacity(self.len());
        for p in &self.parts {
            let mut images = Vec::with_capacity(points.len());
            for &x in points {
                let y = relabel[p.apply(x)];
                if y == usize::MAX {
                    return Err(Error::Validation(alloc::format!(
                        "point set is not invariant under {p}"
                    )));
                }
                images.push(y);
            }
            parts.push(Permutation::from_images(images)?);
        }
        Self::new(parts)
    }

    /// One restricted tuple per orbit; a non-transitive tuple's invariant is
    /// the product of the invariants of these pieces.
    pub fn split_orbits(&self) -> Vec<Self> {
        self.orbits()
            .iter()
            .map(|o| self.restrict(o).expect("orbits are invariant"))
            .collect()
    }

    /// A pair `l ≠ m` (0-based) with `π_ν(l) = m` for every part, smallest
    /// `l` first.
    pub fn common_arrow(&self) -> Option<(usize, usize)> {
        let first = &self.parts[0];
        (0..self.degree()).find_map(|l| {
            let m = first.apply(l);
            (m != l && self.parts.iter().all(|p| p.apply(l) == m)).then_some((l, m))
        })
    }
}

impl fmt::Display for PermTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            s.push_str(&alloc::format!("{p}"));
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PermTuple {
        PermTuple::parse(s, None).unwrap()
    }

    #[test]
    fn parse_infers_common_degree() {
        let x = t("(1 2 3)(4 5);(1 2 4 5 6)");
        assert_eq!(x.degree(), 6);
        assert_eq!(x.len(), 2);
        assert_eq!(x.to_string(), "(1 2 3)(4 5);(1 2 4 5 6)");
        assert_eq!(t("id;id").degree(), 1);
        assert_eq!(PermTuple::parse("id;(1 2)", Some(4)).unwrap().degree(), 4);
    }

    #[test]
    fn transitivity_examples() {
        assert!(PermTuple::parse("(1 2);id", Some(2))
            .unwrap()
            .is_transitive());
        assert!(!PermTuple::parse("id;id", Some(2)).unwrap().is_transitive());
        assert!(t("(1 2 3)(4 5);(1 2 4 5 6)").is_transitive());
        assert!(!t("(1 2);(3 4)").is_transitive());
        assert!(PermTuple::identity(1, 2).is_transitive());
    }

    #[test]
    fn split_into_orbits() {
        let x = PermTuple::parse("(1 3);(3 1)(4 5)", Some(5)).unwrap();
        let pieces = x.split_orbits();
        let shown: Vec<String> = pieces.iter().map(|p| alloc::format!("{p}")).collect();
        assert_eq!(shown, ["(1 2);(1 2)", "id;id", "id;(1 2)"]);
    }

    #[test]
    fn common_arrow_detection() {
        assert_eq!(t("(1 2);(1 2)").common_arrow(), Some((0, 1)));
        assert_eq!(
            PermTuple::parse("(1 2);id", Some(2))
                .unwrap()
                .common_arrow(),
            None
        );
        assert_eq!(t("(1 2 3);(1 2)").common_arrow(), Some((0, 1)));
    }
}
