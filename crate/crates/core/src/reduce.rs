//! Reductions of the set of permutation tuples that must be evaluated:
//! simultaneous conjugation (equal invariants), intransitivity (products of
//! lower-degree invariants) and melting (equal invariants on projectors).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_size, Error, Result};
use crate::perm::Permutation;
use crate::tree::{catalan, tree_perm_set};
use crate::tuple::PermTuple;

/// Largest degree for brute-force lexicographic canonicalization.
pub const MAX_CANONICAL_DEGREE: usize = 7;
/// Largest degree for the table-driven orbit walk.
pub const MAX_ORBIT_DEGREE: usize = 9;
/// Largest degree for [`reduction_counts`] without the long-running opt-in.
pub const DEFAULT_MAX_REDUCTION_DEGREE: usize = 7;
pub const LONG_RUNNING_MAX_REDUCTION_DEGREE: usize = 8;

/// Published pair counts for two qubits, indexed by `k - 1`:
/// `((k!)², C(k)², conjugacy classes, transitive pairs, transitive classes,
/// transitive classes that cannot be melted)`.
pub const TWO_QUBIT_REDUCTION_TABLE: [[u64; 6]; 8] = [
    [1, 1, 1, 1, 1, 1],
    [4, 4, 4, 3, 3, 2],
    [36, 25, 10, 15, 6, 3],
    [576, 196, 36, 97, 20, 10],
    [14_400, 1_764, 114, 733, 60, 22],
    [518_400, 17_424, 496, 6_147, 291, 100],
    [25_401_600, 184_041, 2_142, 55_541, 1_310, 361],
    [1_625_702_400, 2_044_900, 10_758, 530_773, 6_975, 1_717],
];

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Positions `i` such that successively swapping entries `i, i + 1` walks
/// through all `k!` arrangements (plain changes). Length `k! - 1`.
pub fn plain_change_swaps(k: usize) -> Vec<u8> {
    if k <= 1 {
        return Vec::new();
    }
    let sub = plain_change_swaps(k - 1);
    let blocks = factorial(k - 1) as usize;
    let mut out = Vec::with_capacity(factorial(k) as usize - 1);
    for b in 0..blocks {
        let sweeping_left = b % 2 == 0;
        if sweeping_left {
            out.extend((0..k - 1).rev().map(|i| i as u8));
        } else {
            out.extend((0..k - 1).map(|i| i as u8));
        }
        if b + 1 < blocks {
            // the largest element now sits at position 0 or k-1
            let shift = u8::from(sweeping_left);
            out.push(sub[b] + shift);
        }
    }
    out
}

fn conjugate_images_by_adjacent(images: &mut [usize], i: usize) {
    // s π s with s = (i i+1)
    images.swap(i, i + 1);
    for x in images.iter_mut() {
        if *x == i {
            *x = i + 1;
        } else if *x == i + 1 {
            *x = i;
        }
    }
}

/// Lexicographically smallest simultaneous conjugate `τ⁻¹ π_ν τ`, comparing
/// part 1's image array first, then part 2's, and so on.
pub fn canonical_form(t: &PermTuple) -> Result<PermTuple> {
    canonical_form_capped(t, MAX_CANONICAL_DEGREE)
}

pub fn canonical_form_capped(t: &PermTuple, max_degree: usize) -> Result<PermTuple> {
    let k = t.degree();
    check_size("canonicalization degree k", k as u64, max_degree as u64)?;
    let mut current: Vec<Vec<usize>> = t.parts().iter().map(|p| p.images().to_vec()).collect();
    let mut best = current.clone();
    for s in plain_change_swaps(k) {
        for part in current.iter_mut() {
            conjugate_images_by_adjacent(part, s as usize);
        }
        if current < best {
            best.clone_from(&current);
        }
    }
    PermTuple::new(
        best.into_iter()
            .map(|im| Permutation::from_images(im).expect("conjugate is a permutation"))
            .collect(),
    )
}

/// Rank-indexed conjugation tables for adjacent transpositions.
pub struct ConjugationTables {
    degree: usize,
    swaps: Vec<u8>,
    tables: Vec<Vec<u32>>,
}

impl ConjugationTables {
    pub fn new(degree: usize) -> Result<Self> {
        check_size("orbit degree k", degree as u64, MAX_ORBIT_DEGREE as u64)?;
        let n = factorial(degree);
        let mut tables = vec![vec![0u32; n as usize]; degree.saturating_sub(1)];
        for r in 0..n {
            let p = Permutation::unrank(degree, r);
            for (i, table) in tables.iter_mut().enumerate() {
                let mut im = p.images().to_vec();
                conjugate_images_by_adjacent(&mut im, i);
                table[r as usize] = Permutation::from_images(im).expect("bijection").rank() as u32;
            }
        }
        Ok(Self {
            degree,
            swaps: plain_change_swaps(degree),
            tables,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Calls `visit` on the ranks of every simultaneous conjugate of the
    /// tuple with ranks `start`, once per conjugator (so each conjugate
    /// appears `|centralizer|` times).
    pub fn walk_orbit(&self, start: &[u32], mut visit: impl FnMut(&[u32])) {
        let mut cur = start.to_vec();
        visit(&cur);
        for &s in &self.swaps {
            let table = &self.tables[s as usize];
            for r in cur.iter_mut() {
                *r = table[*r as usize];
            }
            visit(&cur);
        }
    }
}

/// Maps a tuple of permutation ranks to the index of a seed, if it is one.
pub trait SeedLookup {
    fn seed_index(&self, ranks: &[u32]) -> Option<usize>;
}

/// Arbitrary seed list, looked up by binary search.
pub struct SortedSeeds {
    keys: Vec<(Vec<u32>, usize)>,
}

impl SortedSeeds {
    pub fn new(ranks: &[Vec<u32>]) -> Self {
        let mut keys: Vec<(Vec<u32>, usize)> = ranks
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        keys.sort();
        Self { keys }
    }

    /// All seed indices sharing these ranks.
    fn indices(&self, ranks: &[u32]) -> &[(Vec<u32>, usize)] {
        let lo = self.keys.partition_point(|(k, _)| k.as_slice() < ranks);
        let hi = self.keys.partition_point(|(k, _)| k.as_slice() <= ranks);
        &self.keys[lo..hi]
    }
}

impl SeedLookup for SortedSeeds {
    fn seed_index(&self, ranks: &[u32]) -> Option<usize> {
        self.indices(ranks).first().map(|(_, i)| *i)
    }
}

/// Seeds forming a Cartesian product `S × … × S` of one permutation set;
/// seed index is the mixed-radix position, part 1 most significant.
pub struct ProductSeeds {
    position: Vec<u32>,
    size: usize,
}

impl ProductSeeds {
    pub fn new(degree: usize, factor: &[Permutation]) -> Self {
        let mut position = vec![u32::MAX; factorial(degree) as usize];
        for (i, p) in factor.iter().enumerate() {
            position[p.rank() as usize] = i as u32;
        }
        Self {
            position,
            size: factor.len(),
        }
    }
}

impl SeedLookup for ProductSeeds {
    #[inline]
    fn seed_index(&self, ranks: &[u32]) -> Option<usize> {
        let mut idx = 0usize;
        for &r in ranks {
            let p = self.position[r as usize];
            if p == u32::MAX {
                return None;
            }
            idx = idx * self.size + p as usize;
        }
        Some(idx)
    }
}

/// Simultaneous-conjugacy classes meeting a seed set.
#[derive(Debug, Clone)]
pub struct OrbitClasses {
    /// First seed (in seed order) of every class, in order of discovery.
    pub representatives: Vec<PermTuple>,
    /// Class index of every seed.
    pub seed_class: Vec<usize>,
    /// Number of conjugates walked.
    pub explored: u64,
}

impl OrbitClasses {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Partitions `seeds` into simultaneous-conjugacy classes by walking each new
/// seed's orbit under all conjugators. `max_steps` bounds the total walk.
pub fn orbit_classes(
    seeds: &[PermTuple],
    k: usize,
    max_steps: Option<u64>,
) -> Result<OrbitClasses> {
    if let Some(bad) = seeds.iter().find(|s| s.degree() != k) {
        return Err(Error::DimensionMismatch(alloc::format!(
            "seed {bad} has degree {} instead of {k}",
            bad.degree()
        )));
    }
    let tables = ConjugationTables::new(k)?;
    let ranks: Vec<Vec<u32>> = seeds
        .iter()
        .map(|s| s.parts().iter().map(|p| p.rank() as u32).collect())
        .collect();
    let lookup = SortedSeeds::new(&ranks);
    let walk = walk_classes(
        &tables,
        seeds.len(),
        |i| ranks[i].clone(),
        |r, mark| {
            for (_, i) in lookup.indices(r) {
                mark(*i);
            }
        },
        max_steps,
    )?;
    Ok(OrbitClasses {
        representatives: walk.rep_indices.iter().map(|&i| seeds[i].clone()).collect(),
        seed_class: walk.seed_class,
        explored: walk.explored,
    })
}

struct ClassWalk {
    rep_indices: Vec<usize>,
    seed_class: Vec<usize>,
    explored: u64,
}

fn walk_classes(
    tables: &ConjugationTables,
    n_seeds: usize,
    seed_ranks: impl Fn(usize) -> Vec<u32>,
    mut lookup: impl FnMut(&[u32], &mut dyn FnMut(usize)),
    max_steps: Option<u64>,
) -> Result<ClassWalk> {
    const UNSEEN: usize = usize::MAX;
    let mut seed_class = vec![UNSEEN; n_seeds];
    let mut rep_indices = Vec::new();
    let per_orbit = factorial(tables.degree());
    let mut explored = 0u64;
    for i in 0..n_seeds {
        if seed_class[i] != UNSEEN {
            continue;
        }
        if let Some(max) = max_steps {
            if explored + per_orbit > max {
                return Err(Error::Resource {
                    explored,
                    classes: rep_indices.len(),
                });
            }
        }
        let class = rep_indices.len();
        rep_indices.push(i);
        tables.walk_orbit(&seed_ranks(i), |r| {
            lookup(r, &mut |j| seed_class[j] = class);
        });
        explored += per_orbit;
    }
    Ok(ClassWalk {
        rep_indices,
        seed_class,
        explored,
    })
}

/// All tuples `P_k × … × P_k` (`parts` factors), part 1 most significant.
pub fn tree_tuples(k: usize, parts: usize) -> Result<Vec<PermTuple>> {
    let factor = tree_perm_set(k)?;
    let c = factor.len();
    let total = c.checked_pow(parts as u32).ok_or(Error::Size {
        what: "number of tree tuples",
        value: u64::MAX,
        max: u32::MAX as u64,
    })?;
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut ps = vec![Permutation::identity(k); parts];
        for slot in (0..parts).rev() {
            ps[slot] = factor[idx % c].clone();
            idx /= c;
        }
        out.push(PermTuple::new(ps)?);
    }
    Ok(out)
}

/// Classes of simultaneous conjugacy meeting `P_k^N`, using the product
/// structure of the seed set for constant-time membership.
pub fn tree_tuple_classes(k: usize, parts: usize, max_steps: Option<u64>) -> Result<OrbitClasses> {
    let factor = tree_perm_set(k)?;
    let tables = ConjugationTables::new(k)?;
    let lookup = ProductSeeds::new(k, &factor);
    let factor_ranks: Vec<u32> = factor.iter().map(|p| p.rank() as u32).collect();
    let c = factor.len();
    let n_seeds = c.pow(parts as u32);
    let ranks_of = |mut idx: usize| {
        let mut r = vec![0u32; parts];
        for slot in (0..parts).rev() {
            r[slot] = factor_ranks[idx % c];
            idx /= c;
        }
        r
    };
    let walk = walk_classes(
        &tables,
        n_seeds,
        ranks_of,
        |r, mark| {
            if let Some(i) = lookup.seed_index(r) {
                mark(i);
            }
        },
        max_steps,
    )?;
    let representatives = walk
        .rep_indices
        .iter()
        .map(|&i| {
            let parts = ranks_of(i)
                .iter()
                .map(|&x| Permutation::unrank(k, x as u64))
                .collect();
            PermTuple::new(parts).expect("tree tuple")
        })
        .collect();
    Ok(OrbitClasses {
        representatives,
        seed_class: walk.seed_class,
        explored: walk.explored,
    })
}

/// Number of simultaneous-conjugacy classes of all of `S_k^N`, by Burnside:
/// `Σ_λ z_λ^{N-1}` over cycle types `λ ⊢ k`, `z_λ` the centralizer order.
pub fn all_tuple_class_count(k: usize, parts: usize) -> u128 {
    fn recurse(remaining: usize, max_part: usize, z: u128, parts: usize, acc: &mut u128) {
        if remaining == 0 {
            *acc += z.pow(parts.saturating_sub(1) as u32);
            return;
        }
        for size in (1..=max_part.min(remaining)).rev() {
            // choose multiplicity m ≥ 1 of `size`
            let mut zz = z;
            let mut m = 0;
            let mut left = remaining;
            while left >= size {
                m += 1;
                left -= size;
                zz = zz * size as u128 * m as u128;
                recurse(left, size - 1, zz, parts, acc);
            }
        }
    }
    let mut acc = 0;
    recurse(k, k, 1, parts, &mut acc);
    acc
}

/// Identifies `l` and `m` whenever every part maps `l` to `m`, repeatedly,
/// until no such pair is left. The result has the same invariant value on
/// projectors.
pub fn melt(t: &PermTuple) -> PermTuple {
    let mut current = t.clone();
    while let Some((l, m)) = current.common_arrow() {
        current = melt_once(&current, l, m);
    }
    current
}

/// One identification step for a pair with `π_ν(l) = m` in every part.
pub fn melt_once(t: &PermTuple, l: usize, m: usize) -> PermTuple {
    let k = t.degree();
    let relabel = |x: usize| if x > m { x - 1 } else { x };
    let parts = t
        .parts()
        .iter()
        .map(|p| {
            debug_assert_eq!(p.apply(l), m);
            let images = (0..k)
                .filter(|&x| x != m)
                .map(|x| relabel(if x == l { p.apply(m) } else { p.apply(x) }))
                .collect();
            Permutation::from_images(images).expect("melting keeps a bijection")
        })
        .collect();
    PermTuple::new(parts).expect("degree stays positive")
}

/// Options for [`reduction_counts`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ReductionOptions {
    /// Permit `k = 8`, which walks roughly 4·10⁸ conjugates.
    pub allow_long_running: bool,
    pub max_steps: Option<u64>,
}

/// One row of pair counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionCounts {
    pub all_tuples: u128,
    pub tree_tuples: u128,
    pub conjugacy_classes: u64,
    pub transitive_tuples: u64,
    pub transitive_classes: u64,
    pub unmeltable_transitive_classes: u64,
}

impl ReductionCounts {
    pub fn as_array(&self) -> [u128; 6] {
        [
            self.all_tuples,
            self.tree_tuples,
            self.conjugacy_classes as u128,
            self.transitive_tuples as u128,
            self.transitive_classes as u128,
            self.unmeltable_transitive_classes as u128,
        ]
    }
}

/// Counts of `N`-tuples to consider at degree `k` after each reduction.
pub fn reduction_counts(k: usize, parts: usize, opts: ReductionOptions) -> Result<ReductionCounts> {
    let cap = if opts.allow_long_running {
        LONG_RUNNING_MAX_REDUCTION_DEGREE
    } else {
        DEFAULT_MAX_REDUCTION_DEGREE
    };
    check_size("reduction degree k", k as u64, cap as u64)?;
    if k == 0 || parts == 0 {
        return Err(Error::Validation("k and N must be at least 1".into()));
    }
    let classes = tree_tuple_classes(k, parts, opts.max_steps)?;
    let factor = tree_perm_set(k)?;
    let transitive_tuples = count_transitive_products(&factor, parts);
    let mut transitive_classes = 0;
    let mut unmeltable = 0;
    for rep in &classes.representatives {
        if rep.is_transitive() {
            transitive_classes += 1;
            if rep.common_arrow().is_none() {
                unmeltable += 1;
            }
        }
    }
    Ok(ReductionCounts {
        all_tuples: (factorial(k) as u128).pow(parts as u32),
        tree_tuples: (catalan(k as u64) as u128).pow(parts as u32),
        conjugacy_classes: classes.count() as u64,
        transitive_tuples,
        transitive_classes,
        unmeltable_transitive_classes: unmeltable,
    })
}

fn count_transitive_products(factor: &[Permutation], parts: usize) -> u64 {
    let c = factor.len();
    let mut count = 0;
    let mut idx = vec![0usize; parts];
    loop {
        let t = PermTuple::new(idx.iter().map(|&i| factor[i].clone()).collect()).expect("tuple");
        if t.is_transitive() {
            count += 1;
        }
        let mut slot = parts;
        loop {
            if slot == 0 {
                return count;
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < c {
                break;
            }
            idx[slot] = 0;
        }
    }
}
