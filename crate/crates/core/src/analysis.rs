//! Dimension counts, generator checks, characteristic-polynomial identities
//! and the local-equivalence test for two-qubit (and `N`-qubit) states.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{check_size, Error, Result};
use crate::invariant::{eval_invariant, Contract, ContractionPlan, EntryColumns, InvariantId};
use crate::modular::{self, Fp2};
use crate::reduce::tree_tuple_classes;
use crate::sample::random_density;
use crate::scalar::Scalar;
use crate::state::DensityOperator;
use crate::tuple::PermTuple;

/// Dimensions `d_k` of the degree-`k` invariants of two qubits, `k = 0..=23`.
pub const MOLIEN_COEFFICIENTS: [u64; 24] = [
    1, 1, 4, 6, 16, 23, 52, 77, 150, 224, 396, 583, 964, 1395, 2180, 3100, 4639, 6466, 9344, 12785,
    17936, 24121, 33008, 43674,
];

/// Order of the pole of the Molien series at `z = 1`.
pub const ALGEBRAICALLY_INDEPENDENT: usize = 10;

pub fn molien_coefficient(k: usize) -> Option<u64> {
    MOLIEN_COEFFICIENTS.get(k).copied()
}

/// Generating invariants of two qubits: `(π₁;π₂, degree, number of terms)`.
pub const GENERATORS: [(&str, usize, usize); 21] = [
    ("id;id", 1, 4),
    ("id;(1 2)", 2, 10),
    ("(1 2);id", 2, 10),
    ("(1 2);(1 2)", 2, 10),
    ("(1 2 3);(1 2)", 3, 52),
    ("(1 2 3);(1 2 3)", 3, 24),
    ("(1 2 3 4);(1 3)", 4, 110),
    ("(1 2 3 4);(1 2 3)", 4, 144),
    ("(1 2 3 4);(1 2 3 4)", 4, 70),
    ("(1 2 3 4);(1 2)(3 4)", 4, 98),
    ("(1 2 3)(4 5);(1 2 3 4 5)", 5, 456),
    ("(1 2 3 4 5 6);(1 2 3 5)", 6, 1334),
    ("(1 2 3)(4 5);(1 2 4 5 6)", 6, 1586),
    ("(1 2 3)(4 5);(1 2 3 4 5 6)", 6, 1542),
    ("(1 2 3)(4 5);(1 2 3 4)(5 6)", 6, 1464),
    ("(1 2 3 4)(5 6 7);(1 2 4 5 6 7)", 7, 4156),
    ("(1 2 3 4)(5 6 7);(1 2 6 7)(3 5)", 7, 4576),
    ("(1 2 3 4 5)(6 7 8);(1 2 3 5 6 7 8)", 8, 10414),
    ("(1 2 3 4 5)(6 7 8);(1 2 3 7 8)(4 6)", 8, 11340),
    ("(1 2 3 4 5)(6 7 8);(1 2 3 6 7 8 9)(4 5)", 9, 24780),
    ("(1 2 3 4 5)(6 7 8 9);(1 2 3 5 6 7 8)", 9, 24168),
];

/// One generating invariant with its expected expansion size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub id: InvariantId,
    pub degree: usize,
    pub terms: usize,
}

pub fn generators() -> Vec<Generator> {
    GENERATORS
        .iter()
        .map(|&(text, degree, terms)| Generator {
            id: InvariantId::new(
                PermTuple::parse(text, Some(degree)).expect("generator table parses"),
            ),
            degree,
            terms,
        })
        .collect()
}

/// Relative singular-value cutoff for numerical rank.
pub const RANK_TOLERANCE: f64 = 1e-8;
/// Relative tolerance for float invariant comparisons: values differ when
/// `|a − b| > tol · (1 + max(|a|, |b|))`.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-7;
/// Extra sampled states beyond the expected dimension.
pub const DEFAULT_EXTRA_SAMPLES: usize = 50;
/// Minimum margin of samples over the expected dimension.
pub const MIN_EXTRA_SAMPLES: usize = 30;
pub const DEFAULT_MAX_DIMENSION_DEGREE: usize = 7;
pub const LONG_RUNNING_MAX_DIMENSION_DEGREE: usize = 8;
pub const MAX_COMPLETENESS_DEGREE: usize = 8;

/// Numerical rank of a row set with the singular-value cutoff
/// `rel_tol · σ_max`; rows are scaled to unit norm first, which leaves the
/// rank unchanged and evens out magnitudes.
pub fn numerical_rank(rows: &[Vec<Complex64>], rel_tol: f64) -> RankResult {
    let cols = rows.first().map_or(0, Vec::len);
    let kept: Vec<&Vec<Complex64>> = rows
        .iter()
        .filter(|r| r.iter().any(|z| z.norm_sqr() > 0.0))
        .collect();
    if kept.is_empty() || cols == 0 {
        return RankResult::default();
    }
    let m = nalgebra::DMatrix::from_fn(kept.len(), cols, |r, c| {
        let norm = libm::sqrt(kept[r].iter().map(|z| z.norm_sqr()).sum());
        kept[r][c] / norm
    });
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let cutoff = rel_tol * sv[0];
    let rank = sv.iter().take_while(|&&s| s > cutoff).count();
    RankResult {
        rank,
        smallest_kept: sv.get(rank.wrapping_sub(1)).copied().unwrap_or(0.0) / sv[0],
        largest_dropped: sv.get(rank).copied().unwrap_or(0.0) / sv[0],
    }
}

/// Rank plus the relative singular values on either side of the cutoff.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RankResult {
    pub rank: usize,
    pub smallest_kept: f64,
    pub largest_dropped: f64,
}

/// `count` random two-qubit (or `dims`) states; the first `m` states for
/// any `m ≤ count` do not depend on `count`.
pub fn sample_states(
    dims: &[usize],
    count: usize,
    seed: u64,
) -> Result<Vec<DensityOperator<Complex64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_density(dims, rng.next_u64()))
        .collect()
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Values of each tuple's invariant at each sampled state.
fn value_table(
    tuples: &[PermTuple],
    dims: &[usize],
    columns: &EntryColumns,
) -> Result<Vec<Vec<Complex64>>> {
    par_map(tuples, |t| {
        ContractionPlan::new(t, dims)?.contract_batch(columns)
    })
    .into_iter()
    .collect()
}

fn prefix(rows: &[Vec<Complex64>], n: usize) -> Vec<Vec<Complex64>> {
    rows.iter().map(|r| r[..n].to_vec()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionOptions {
    /// Sampled states; defaults to `d_k + 50`.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Recompute with twice the samples and compare ranks.
    pub check_stability: bool,
    /// Permit `k = 8`.
    pub allow_long_running: bool,
    /// Also compute the exact rank over `GF(p²)` at rational states.
    pub exact: bool,
}

impl Default for DimensionOptions {
    fn default() -> Self {
        Self {
            samples: None,
            seed: 1,
            check_stability: true,
            allow_long_running: false,
            exact: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub degree: usize,
    pub expected: Option<u64>,
    /// Candidate invariants (rows of the value table).
    pub candidates: usize,
    pub samples: usize,
    pub rank: RankResult,
    /// Rank with doubled samples, when checked.
    pub doubled_rank: Option<usize>,
    /// Exact rank over `GF(p²)`, when requested; a lower bound on the true
    /// dimension.
    pub exact_rank: Option<usize>,
}

impl DimensionReport {
    pub fn is_stable(&self) -> bool {
        self.doubled_rank.is_none_or(|r| r == self.rank.rank)
    }

    pub fn matches_reference(&self) -> bool {
        self.expected == Some(self.rank.rank as u64)
            && self
                .exact_rank
                .is_none_or(|r| self.expected == Some(r as u64))
    }
}

fn check_samples(k: usize, samples: Option<usize>) -> Result<usize> {
    let expected = molien_coefficient(k).unwrap_or(0) as usize;
    let n = samples.unwrap_or(expected + DEFAULT_EXTRA_SAMPLES);
    if n < expected + MIN_EXTRA_SAMPLES {
        return Err(Error::Validation(alloc::format!(
            "need at least d_k + {MIN_EXTRA_SAMPLES} = {} samples at degree {k}, got {n}",
            expected + MIN_EXTRA_SAMPLES
        )));
    }
    Ok(n)
}

/// Numerical dimension of the degree-`k` invariants of two qubits: the rank
/// of one invariant per simultaneous-conjugacy class of tree pairs,
/// evaluated at random states.
pub fn dimension_of_degree(k: usize, opts: DimensionOptions) -> Result<DimensionReport> {
    let cap = if opts.allow_long_running {
        LONG_RUNNING_MAX_DIMENSION_DEGREE
    } else {
        DEFAULT_MAX_DIMENSION_DEGREE
    };
    check_size("dimension degree k", k as u64, cap as u64)?;
    let samples = check_samples(k, opts.samples)?;
    if k == 0 {
        return Ok(DimensionReport {
            degree: 0,
            expected: molien_coefficient(0),
            candidates: 1,
            samples,
            rank: RankResult {
                rank: 1,
                smallest_kept: 1.0,
                largest_dropped: 0.0,
            },
            doubled_rank: opts.check_stability.then_some(1),
            exact_rank: opts.exact.then_some(1),
        });
    }
    let classes = tree_tuple_classes(k, 2, None)?;
    let total = if opts.check_stability {
        2 * samples
    } else {
        samples
    };
    let states = sample_states(&[2, 2], total, opts.seed)?;
    let columns = EntryColumns::new(&states)?;
    let rows = value_table(&classes.representatives, &[2, 2], &columns)?;
    let rank = numerical_rank(&prefix(&rows, samples), RANK_TOLERANCE);
    let doubled_rank = opts
        .check_stability
        .then(|| numerical_rank(&rows, RANK_TOLERANCE).rank);
    let exact_rank = if opts.exact {
        Some(modular::rank(&exact_value_table(
            &classes.representatives,
            samples,
            opts.seed,
        )?))
    } else {
        None
    };
    Ok(DimensionReport {
        degree: k,
        expected: molien_coefficient(k),
        candidates: rows.len(),
        samples,
        rank,
        doubled_rank,
        exact_rank,
    })
}

/// Multisets of generator indices whose degrees sum to `k`, each sorted.
pub fn generator_monomials(degrees: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        degrees: &[usize],
        start: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for g in start..degrees.len() {
            if degrees[g] <= left {
                cur.push(g);
                rec(degrees, g, left - degrees[g], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport {
    pub degree: usize,
    pub expected: u64,
    pub monomials: usize,
    pub samples: usize,
    /// Numerical rank at Hilbert–Schmidt random states.
    pub rank: RankResult,
    /// Exact rank over `GF(p²)` at random rational states.
    pub exact_rank: usize,
}

impl CompletenessReport {
    /// Decided by the exact rank: it never exceeds the true rank, and the
    /// true rank never exceeds `d_k`.
    pub fn is_complete(&self) -> bool {
        self.exact_rank as u64 == self.expected
    }
}

/// Entry bound of the Gaussian-integer factor `G` of exact sample states.
const EXACT_SAMPLE_BOUND: i64 = 20;

/// Invariant values at random rational states, reduced modulo `p`.
fn exact_value_table(tuples: &[PermTuple], samples: usize, seed: u64) -> Result<Vec<Vec<Fp2>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let states: Vec<Vec<Fp2>> = (0..samples)
        .map(|_| modular::random_state(4, EXACT_SAMPLE_BOUND, rng.next_u64()))
        .collect();
    let columns = EntryColumns::from_entries(4, &states)?;
    par_map(tuples, |t| {
        ContractionPlan::new(t, &[2, 2])?.contract_batch(&columns)
    })
    .into_iter()
    .collect()
}

fn monomial_rows<T: Copy + core::iter::Product>(
    monomials: &[Vec<usize>],
    cache: &[Vec<T>],
    samples: usize,
) -> Vec<Vec<T>> {
    monomials
        .iter()
        .map(|mono| {
            (0..samples)
                .map(|s| mono.iter().map(|&g| cache[g][s]).product())
                .collect()
        })
        .collect()
}

/// Rank of all degree-`k` monomials in the generators, at random states.
pub fn generator_completeness(
    k: usize,
    samples: Option<usize>,
    seed: u64,
) -> Result<CompletenessReport> {
    check_size(
        "completeness degree k",
        k as u64,
        MAX_COMPLETENESS_DEGREE as u64,
    )?;
    let samples = check_samples(k, samples)?;
    let expected = molien_coefficient(k).unwrap_or(0);
    if k == 0 {
        return Ok(CompletenessReport {
            degree: 0,
            expected,
            monomials: 1,
            samples,
            rank: RankResult {
                rank: 1,
                smallest_kept: 1.0,
                largest_dropped: 0.0,
            },
            exact_rank: 1,
        });
    }
    let gens: Vec<Generator> = generators().into_iter().filter(|g| g.degree <= k).collect();
    let states = sample_states(&[2, 2], samples, seed)?;
    let columns = EntryColumns::new(&states)?;
    let tuples: Vec<PermTuple> = gens.iter().map(|g| g.id.tuple().clone()).collect();
    let cache = value_table(&tuples, &[2, 2], &columns)?;
    let degrees: Vec<usize> = gens.iter().map(|g| g.degree).collect();
    let monomials = generator_monomials(&degrees, k);
    let rows = monomial_rows(&monomials, &cache, samples);
    let exact_cache = exact_value_table(&tuples, samples, seed)?;
    let exact_rows = monomial_rows(&monomials, &exact_cache, samples);
    Ok(CompletenessReport {
        degree: k,
        expected,
        monomials: monomials.len(),
        samples,
        rank: numerical_rank(&rows, RANK_TOLERANCE),
        exact_rank: modular::rank(&exact_rows),
    })
}

/// One identity `lhs = rhs` between a characteristic-polynomial
/// coefficient and a polynomial in invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck<S> {
    pub name: &'static str,
    pub lhs: S,
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyReport<S> {
    pub checks: Vec<IdentityCheck<S>>,
    pub max_deviation: f64,
    /// Every identity holds with exact equality (exact scalars only).
    pub exact: bool,
}

/// Checks the coefficients of `det(X·I − ρ)` and of the characteristic
/// polynomials of both reductions against their expressions in
/// low-degree invariants.
pub fn charpoly_identities<S: Contract>(rho: &DensityOperator<S>) -> Result<CharPolyReport<S>> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(alloc::format!(
            "two-qubit operator required, got dims {:?}",
            rho.dims()
        )));
    }
    let f = |text: &str| eval_invariant(&InvariantId::parse(text)?, rho);
    let f1 = f("id;id")?;
    let f22 = f("(1 2);(1 2)")?;
    let f33 = f("(1 2 3);(1 2 3)")?;
    let f44 = f("(1 2 3 4);(1 2 3 4)")?;
    let f2a = f("(1 2);id")?;
    let f2b = f("id;(1 2)")?;
    let q = |n: i64, d: i64| S::from_ratio(n, d);
    let sq = |x: &S| x.clone() * x.clone();

    let chi = rho.char_poly()?;
    let r1 = rho.partial_trace(&[0])?.char_poly()?;
    let r2 = rho.partial_trace(&[1])?.char_poly()?;
    let f1_2 = sq(&f1);
    let f1_3 = f1_2.clone() * f1.clone();
    let f1_4 = sq(&f1_2);
    let checks = vec![
        IdentityCheck {
            name: "X^3 coefficient",
            lhs: chi[1].clone(),
            rhs: -f1.clone(),
        },
        IdentityCheck {
            name: "X^2 coefficient",
            lhs: chi[2].clone(),
            rhs: q(1, 2) * f1_2.clone() - q(1, 2) * f22.clone(),
        },
        IdentityCheck {
            name: "X^1 coefficient",
            lhs: chi[3].clone(),
            rhs: q(-1, 6) * f1_3 + q(1, 2) * f1.clone() * f22.clone() - q(1, 3) * f33.clone(),
        },
        IdentityCheck {
            name: "constant coefficient",
            lhs: chi[4].clone(),
            rhs: q(1, 24) * f1_4 - q(1, 4) * f1_2.clone() * f22.clone()
                + q(1, 3) * f1.clone() * f33
                + q(1, 8) * sq(&f22)
                - q(1, 4) * f44,
        },
        IdentityCheck {
            name: "reduction 1, X^1 coefficient",
            lhs: r1[1].clone(),
            rhs: -f1.clone(),
        },
        IdentityCheck {
            name: "reduction 1, constant coefficient",
            lhs: r1[2].clone(),
            rhs: q(1, 2) * (f1_2.clone() - f2a),
        },
        IdentityCheck {
            name: "reduction 2, X^1 coefficient",
            lhs: r2[1].clone(),
            rhs: -f1,
        },
        IdentityCheck {
            name: "reduction 2, constant coefficient",
            lhs: r2[2].clone(),
            rhs: q(1, 2) * (f1_2 - f2b),
        },
    ];
    let max_deviation = checks
        .iter()
        .map(|c| (c.lhs.clone() - c.rhs.clone()).to_c64().norm())
        .fold(0.0, f64::max);
    let exact = S::EXACT && checks.iter().all(|c| c.lhs == c.rhs);
    Ok(CharPolyReport {
        checks,
        max_deviation,
        exact,
    })
}

/// Outcome of [`local_equiv_test`]. Agreement never proves equivalence.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<S> {
    Inequivalent {
        witness: InvariantId,
        value_a: S,
        value_b: S,
    },
    InconclusiveUpToDegree(usize),
}

impl<S> Verdict<S> {
    pub fn is_inequivalent(&self) -> bool {
        matches!(self, Verdict::Inequivalent { .. })
    }
}

impl<S> fmt::Display for Verdict<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Inequivalent { .. } => f.write_str("INEQUIVALENT"),
            Verdict::InconclusiveUpToDegree(k) => write!(f, "INCONCLUSIVE_UP_TO_DEGREE({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<S> {
    pub verdict: Verdict<S>,
    pub max_degree: usize,
    /// Highest degree fully or partly evaluated.
    pub degrees_checked: usize,
    pub invariants_checked: usize,
    pub exact: bool,
    pub tolerance: f64,
}

impl<S: Scalar> fmt::Display for EquivalenceReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Verdict::Inequivalent {
            witness,
            value_a,
            value_b,
        } = &self.verdict
        {
            writeln!(f, "witness: {}", witness.tuple())?;
            writeln!(f, "witness degree: {}", witness.degree())?;
            writeln!(f, "value a: {}", value_a.to_text())?;
            writeln!(f, "value b: {}", value_b.to_text())?;
        }
        writeln!(f, "degrees checked: 1..={}", self.degrees_checked)?;
        writeln!(f, "invariants checked: {}", self.invariants_checked)?;
        writeln!(f, "mode: {}", if self.exact { "exact" } else { "float" })?;
        if self.exact {
            writeln!(f, "tolerance: none (exact comparison)")
        } else {
            writeln!(f, "tolerance: {:e} relative", self.tolerance)
        }
    }
}

pub const MAX_EQUIVALENCE_DEGREE: usize = 7;
pub const DEFAULT_MAX_EXACT_EQUIVALENCE_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceOptions {
    pub max_degree: usize,
    /// Float comparison tolerance, relative as in [`EQUIVALENCE_TOLERANCE`].
    pub tolerance: f64,
    /// Permit exact evaluation beyond degree 6.
    pub allow_long_running: bool,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_EXACT_EQUIVALENCE_DEGREE,
            tolerance: EQUIVALENCE_TOLERANCE,
            allow_long_running: false,
        }
    }
}

fn values_differ<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    if S::EXACT {
        return a != b;
    }
    let (x, y) = (a.to_c64(), b.to_c64());
    (x - y).norm() > tol * (1.0 + x.norm().max(y.norm()))
}

/// Compares both operators on one invariant per transitive class of tree
/// tuples, degree by degree, and stops at the first difference.
/// Non-transitive classes factor into lower-degree invariants and add
/// nothing once those agree.
pub fn local_equiv_test<S: Contract>(
    a: &DensityOperator<S>,
    b: &DensityOperator<S>,
    opts: EquivalenceOptions,
) -> Result<EquivalenceReport<S>> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "cannot compare dims {:?} with {:?}",
            a.dims(),
            b.dims()
        )));
    }
    check_size(
        "equivalence degree",
        opts.max_degree as u64,
        MAX_EQUIVALENCE_DEGREE as u64,
    )?;
    if S::EXACT
        && opts.max_degree > DEFAULT_MAX_EXACT_EQUIVALENCE_DEGREE
        && !opts.allow_long_running
    {
        return Err(Error::Size {
            what: "exact equivalence degree (enable long-running mode)",
            value: opts.max_degree as u64,
            max: DEFAULT_MAX_EXACT_EQUIVALENCE_DEGREE as u64,
        });
    }
    let parties = a.parties();
    let mut checked = 0;
    for k in 1..=opts.max_degree {
        let classes = tree_tuple_classes(k, parties, None)?;
        let transitive: Vec<&PermTuple> = classes
            .representatives
            .iter()
            .filter(|t| t.is_transitive())
            .collect();
        let values = par_map(&transitive, |t| -> Result<(S, S)> {
            let plan = ContractionPlan::new(t, a.dims())?;
            Ok((plan.evaluate(a)?, plan.evaluate(b)?))
        });
        for (t, v) in transitive.iter().zip(values) {
            let (va, vb) = v?;
            checked += 1;
            if values_differ(&va, &vb, opts.tolerance) {
                return Ok(EquivalenceReport {
                    verdict: Verdict::Inequivalent {
                        witness: InvariantId::new((*t).clone()),
                        value_a: va,
                        value_b: vb,
                    },
                    max_degree: opts.max_degree,
                    degrees_checked: k,
                    invariants_checked: checked,
                    exact: S::EXACT,
                    tolerance: opts.tolerance,
                });
            }
        }
    }
    Ok(EquivalenceReport {
        verdict: Verdict::InconclusiveUpToDegree(opts.max_degree),
        max_degree: opts.max_degree,
        degrees_checked: opts.max_degree,
        invariants_checked: checked,
        exact: S::EXACT,
        tolerance: opts.tolerance,
    })
}

/// Renders a report header line used by text outputs.
pub fn describe_rank(r: &RankResult) -> String {
    alloc::format!(
        "rank {} (smallest kept σ/σmax {:.3e}, largest dropped {:.3e})",
        r.rank,
        r.smallest_kept,
        r.largest_dropped
    )
}
