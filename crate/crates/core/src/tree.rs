//! Labeled ordered binary trees and the permutations built from their
//! maximal right paths.
//!
//! Nodes are labeled in pre-order (root, left subtree, right subtree). The
//! permutation of a tree is the product of one cycle `(r₀ r₁ … r_j)` per
//! maximal right path, and the permutations of all `C(k)` trees with `k`
//! nodes index a basis of the commutant of `U^{⊗k}`, `U ∈ U(2)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_size, Result};
use crate::perm::Permutation;

/// Default cap on the number of nodes accepted by [`enumerate_trees`].
pub const MAX_TREE_NODES: usize = 12;

/// Catalan number `binom(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> u64 {
    // C(i+1) = C(i) * 2(2i+1) / (i+2), exact at every step
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as u64
}

/// A binary tree on the 0-based pre-order labels `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryTree {
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl BinaryTree {
    pub fn empty() -> Self {
        Self {
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left_child(&self, node: usize) -> Option<usize> {
        self.left[node]
    }

    pub fn right_child(&self, node: usize) -> Option<usize> {
        self.right[node]
    }

    /// Root with the given subtrees; labels are shifted to keep pre-order.
    pub fn join(left: &Self, right: &Self) -> Self {
        let j = left.len();
        let k = j + right.len() + 1;
        let mut l = vec![None; k];
        let mut r = vec![None; k];
        if j > 0 {
            l[0] = Some(1);
        }
        if !right.is_empty() {
            r[0] = Some(j + 1);
        }
        for i in 0..j {
            l[i + 1] = left.left[i].map(|c| c + 1);
            r[i + 1] = left.right[i].map(|c| c + 1);
        }
        for i in 0..right.len() {
            l[i + j + 1] = right.left[i].map(|c| c + j + 1);
            r[i + j + 1] = right.right[i].map(|c| c + j + 1);
        }
        Self { left: l, right: r }
    }

    /// Maximal right paths as 0-based label sequences, ordered by their
    /// first node.
    pub fn maximal_right_paths(&self) -> Vec<Vec<usize>> {
        let mut is_right_son = vec![false; self.len()];
        for c in self.right.iter().flatten() {
            is_right_son[*c] = true;
        }
        (0..self.len())
            .filter(|&n| !is_right_son[n])
            .map(|start| {
                let mut path = vec![start];
                let mut node = start;
                while let Some(next) = self.right[node] {
                    path.push(next);
                    node = next;
                }
                path
            })
            .collect()
    }

    /// The permutation `∏ (r₀ r₁ … r_j)` over all maximal right paths.
    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.len()).collect();
        for path in self.maximal_right_paths() {
            for (i, &node) in path.iter().enumerate() {
                images[node] = path[(i + 1) % path.len()];
            }
        }
        Permutation::from_images(images).expect("right paths partition the nodes")
    }

    /// Indented rendering, one node per line, children tagged `L`/`R`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.is_empty() {
            out.push_str("(empty)\n");
            return out;
        }
        self.render_node(0, 0, "", &mut out);
        out
    }

    fn render_node(&self, node: usize, depth: usize, tag: &str, out: &mut String) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(tag);
        out.push_str(&alloc::format!("{}\n", node + 1));
        if let Some(c) = self.left[node] {
            self.render_node(c, depth + 1, "L ", out);
        }
        if let Some(c) = self.right[node] {
            self.render_node(c, depth + 1, "R ", out);
        }
    }
}

/// All labeled ordered binary trees with `k` nodes.
///
/// Trees come out with the left subtree of the root as large as possible
/// first, recursively in both subtrees; for `k = 3` this is the order
/// `id, (2 3), (1 3), (1 2), (1 2 3)` of the associated permutations.
pub fn enumerate_trees(k: usize) -> Result<Vec<BinaryTree>> {
    enumerate_trees_capped(k, MAX_TREE_NODES)
}

pub fn enumerate_trees_capped(k: usize, max: usize) -> Result<Vec<BinaryTree>> {
    check_size("tree size k", k as u64, max as u64)?;
    let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::empty()]];
    for n in 1..=k {
        let mut trees = Vec::with_capacity(catalan(n as u64) as usize);
        for j in (0..n).rev() {
            for l in &by_size[j] {
                for r in &by_size[n - 1 - j] {
                    trees.push(BinaryTree::join(l, r));
                }
            }
        }
        by_size.push(trees);
    }
    Ok(by_size.swap_remove(k))
}

/// `P_k`: the permutations of all trees with `k` nodes, in enumeration order.
pub fn tree_perm_set(k: usize) -> Result<Vec<Permutation>> {
    Ok(enumerate_trees(k)?
        .iter()
        .map(BinaryTree::to_permutation)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    /// Independent count: trees as nested (left, right) shapes, generated by
    /// brute force over all shape pairs and deduplicated.
    fn brute_count(k: usize) -> usize {
        let mut shapes: Vec<BTreeSet<String>> = vec![BTreeSet::from([String::from(".")])];
        for n in 1..=k {
            let mut set = BTreeSet::new();
            for a in 0..n {
                for l in &shapes[a] {
                    for r in &shapes[n - 1 - a] {
                        set.insert(alloc::format!("({l},{r})"));
                    }
                }
            }
            shapes.push(set);
        }
        shapes[k].len()
    }

    #[test]
    fn catalan_values() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (k, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(k as u64), c);
        }
        assert_eq!(catalan(12), 208012);
    }

    #[test]
    fn counts_match_brute_force() {
        for k in 0..=8 {
            assert_eq!(enumerate_trees(k).unwrap().len(), brute_count(k), "k={k}");
        }
    }

    #[test]
    fn three_node_permutations() {
        let shown: Vec<String> = tree_perm_set(3)
            .unwrap()
            .iter()
            .map(Permutation::display_full)
            .collect();
        assert_eq!(
            shown,
            ["(1)(2)(3)", "(1)(2 3)", "(1 3)(2)", "(1 2)(3)", "(1 2 3)"]
        );
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_trees(0).unwrap(), vec![BinaryTree::empty()]);
        let one = tree_perm_set(1).unwrap();
        assert_eq!(one, vec![Permutation::identity(1)]);
        let chain = enumerate_trees(5).unwrap().pop().unwrap();
        assert_eq!(chain.to_permutation().to_string(), "(1 2 3 4 5)");
    }

    #[test]
    fn tree_permutations_are_distinct() {
        for k in 1..=8 {
            let perms = tree_perm_set(k).unwrap();
            let set: BTreeSet<_> = perms.iter().collect();
            assert_eq!(set.len(), perms.len(), "k={k}");
        }
        assert_eq!(tree_perm_set(4).unwrap().len(), 14);
    }

    #[test]
    fn too_large() {
        assert!(enumerate_trees(13).is_err());
    }

    #[test]
    fn render_shape() {
        let trees = enumerate_trees(3).unwrap();
        assert_eq!(trees[2].render(), "1\n  L 2\n  R 3\n");
    }
}
