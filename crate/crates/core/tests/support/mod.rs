//! Randomized property suites, shared by the core integration tests and the
//! acceptance runner. Each suite takes a case count and reports the first
//! (shrunk) counterexample.

use luinv_core::invariant::eval_invariant_oracle;
use luinv_core::reduce::{melt, tree_tuples};
use luinv_core::sample::{
    random_density, random_local_unitary, random_projector, random_rational_projector,
};
use luinv_core::symbolic::expand_symbolic;
use luinv_core::{
    eval_invariant, DensityOperator, GaussianRational, InvariantId, Matrix, PermTuple, Permutation,
    Role, Scalar,
};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub type Suite = (&'static str, u32, fn(u32) -> Result<(), String>);

/// Name, default case count and runner of every suite.
pub const SUITES: [Suite; 10] = [
    ("contraction = dense oracle (kN <= 12)", 500, oracle),
    ("local-unitary invariance, two qubits", 100, lu_invariance),
    (
        "local-unitary invariance, three qubits",
        100,
        lu_invariance_three,
    ),
    ("simultaneous conjugation", 100, conjugation),
    ("factorization over orbits", 100, factorization),
    (
        "melting on rank <= 3 rational projectors",
        100,
        melting_projectors,
    ),
    ("melting on pure states", 100, melting_pure),
    (
        "inverse tuple gives complex conjugate",
        100,
        hermitian_symmetry,
    ),
    ("single party: product of power traces", 100, cycle_traces),
    ("symbolic expansion = contraction", 100, symbolic),
];

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((0..k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn tuple(k: usize, parts: usize) -> impl Strategy<Value = PermTuple> {
    proptest::collection::vec(perm(k), parts).prop_map(|p| PermTuple::new(p).unwrap())
}

/// `(tuple, seed)` with `1 ≤ k ≤ max_k` and the given number of parts.
fn case(max_k: usize, parts: usize) -> impl Strategy<Value = (PermTuple, u64)> {
    (1..=max_k).prop_flat_map(move |k| (tuple(k, parts), any::<u64>()))
}

/// A full-rank exact state `(P₁ + 2 P₂) / tr`, with `P₁`, `P₂` random
/// rational projectors.
pub fn rational_state(dims: &[usize], seed: u64) -> DensityOperator<GaussianRational> {
    let d: usize = dims.iter().product();
    let p1 = random_rational_projector(dims, 1, seed).unwrap();
    let p2 = random_rational_projector(dims, d.min(2), seed ^ 0x5eed).unwrap();
    let m = p1
        .matrix()
        .add(&p2.matrix().scale(&GaussianRational::from_i64(2)));
    let tr = m.trace();
    let m = m.map(|z| z / tr.clone());
    DensityOperator::new(dims.to_vec(), m, Role::State).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

fn power_trace(m: &Matrix<Complex64>, n: usize) -> Complex64 {
    let mut p = m.clone();
    for _ in 1..n {
        p = p.mul(m);
    }
    p.trace()
}

fn value<S: luinv_core::invariant::Contract>(t: &PermTuple, rho: &DensityOperator<S>) -> S {
    eval_invariant(&InvariantId::new(t.clone()), rho).unwrap()
}

pub fn oracle(cases: u32) -> Result<(), String> {
    let strategy = (1usize..=3).prop_flat_map(|n| case((12 / n).min(8), n));
    run(cases, strategy, |(t, seed)| {
        let (k, parts) = (t.degree(), t.len());
        let id = InvariantId::new(t);
        let dims = vec![2; parts];
        let rho = random_density(&dims, seed).unwrap();
        let fast = eval_invariant(&id, &rho).unwrap();
        let slow = eval_invariant_oracle(&id, &rho).unwrap();
        prop_assert!(close(fast, slow, 1e-9), "{id}: {fast} vs {slow}");
        if k * parts <= 8 {
            let exact = rational_state(&dims, seed);
            prop_assert_eq!(
                eval_invariant(&id, &exact).unwrap(),
                eval_invariant_oracle(&id, &exact).unwrap()
            );
        }
        Ok(())
    })
}

pub fn lu_invariance(cases: u32) -> Result<(), String> {
    run(cases, case(5, 2), |(t, seed)| {
        let rho = random_density(&[2, 2], seed).unwrap();
        let moved = rho
            .conjugate_local(&random_local_unitary(2, seed.wrapping_add(1)))
            .unwrap();
        let (a, b) = (value(&t, &rho), value(&t, &moved));
        prop_assert!(close(a, b, 1e-9), "{t}: {a} vs {b}");
        Ok(())
    })
}

pub fn lu_invariance_three(cases: u32) -> Result<(), String> {
    run(cases, case(3, 3), |(t, seed)| {
        let rho = random_density(&[2, 2, 2], seed).unwrap();
        let moved = rho
            .conjugate_local(&random_local_unitary(3, !seed))
            .unwrap();
        let (a, b) = (value(&t, &rho), value(&t, &moved));
        prop_assert!(close(a, b, 1e-9), "{t}: {a} vs {b}");
        Ok(())
    })
}

pub fn conjugation(cases: u32) -> Result<(), String> {
    let strategy = (1usize..=6).prop_flat_map(|k| (tuple(k, 2), perm(k), any::<u64>()));
    run(cases, strategy, |(t, tau, seed)| {
        let rho = rational_state(&[2, 2], seed);
        prop_assert_eq!(value(&t, &rho), value(&t.conjugate_by(&tau), &rho));
        Ok(())
    })
}

pub fn factorization(cases: u32) -> Result<(), String> {
    run(cases, case(6, 2), |(t, seed)| {
        let rho = rational_state(&[2, 2], seed);
        let product = t
            .split_orbits()
            .iter()
            .map(|piece| value(piece, &rho))
            .fold(GaussianRational::from_i64(1), |acc, v| acc * v);
        prop_assert_eq!(value(&t, &rho), product);
        Ok(())
    })
}

/// Tree pairs melt far more often than uniform random pairs.
fn meltable(max_k: usize) -> impl Strategy<Value = PermTuple> {
    let pool: Vec<PermTuple> = (2..=max_k)
        .flat_map(|k| tree_tuples(k, 2).unwrap())
        .filter(|t| t.common_arrow().is_some())
        .collect();
    prop_oneof![
        proptest::sample::select(pool),
        (1..=max_k).prop_flat_map(|k| tuple(k, 2))
    ]
}

pub fn melting_projectors(cases: u32) -> Result<(), String> {
    run(
        cases,
        (meltable(5), 1usize..=3, any::<u64>()),
        |(t, rank, seed)| {
            let p = random_rational_projector(&[2, 2], rank, seed).unwrap();
            prop_assert_eq!(value(&t, &p), value(&melt(&t), &p));
            Ok(())
        },
    )
}

pub fn melting_pure(cases: u32) -> Result<(), String> {
    run(cases, (meltable(6), any::<u64>()), |(t, seed)| {
        let p = random_projector(&[2, 2], 1, seed).unwrap();
        let (a, b) = (value(&t, &p), value(&melt(&t), &p));
        prop_assert!(close(a, b, 1e-9), "{t}: {a} vs {b}");
        Ok(())
    })
}

pub fn hermitian_symmetry(cases: u32) -> Result<(), String> {
    run(cases, case(6, 2), |(t, seed)| {
        let rho = rational_state(&[2, 2], seed);
        prop_assert_eq!(value(&t, &rho).conj(), value(&t.inverse(), &rho));
        Ok(())
    })
}

pub fn cycle_traces(cases: u32) -> Result<(), String> {
    run(cases, (case(7, 1), 2usize..=4), |((t, seed), n)| {
        let rho = random_density(&[n], seed).unwrap();
        let expected: Complex64 = t.parts()[0]
            .cycles()
            .iter()
            .map(|c| power_trace(rho.matrix(), c.len()))
            .product();
        let got = value(&t, &rho);
        prop_assert!(close(got, expected, 1e-10), "{t}: {got} vs {expected}");
        Ok(())
    })
}

pub fn symbolic(cases: u32) -> Result<(), String> {
    run(cases, case(5, 2), |(t, seed)| {
        let id = InvariantId::new(t);
        let poly = expand_symbolic(&id).unwrap();
        prop_assert_eq!(poly.coefficient_sum(), 4u64.pow(id.degree() as u32));
        let rho = rational_state(&[2, 2], seed);
        prop_assert_eq!(
            poly.evaluate(rho.matrix()).unwrap(),
            eval_invariant(&id, &rho).unwrap()
        );
        Ok(())
    })
}
