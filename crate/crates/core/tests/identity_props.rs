mod common;

use common::{all_transitive_relations, dense_identity_space, example3_pi, int, to_dense_rows};
use proptest::prelude::*;
use quiverpi::{
    commutator, evaluate, identity_space, maximal_chains, parse_poly, product, standard_poly, tideal_component,
    Factor, IdentitySubspace, IncidenceAlgebra, IncidenceElement, PathSet, Permutation, TransitiveRelation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_relation(rng: &mut ChaCha8Rng, n: usize, density: f64) -> TransitiveRelation {
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|_| rng.random_bool(density)).collect();
    TransitiveRelation::closure_of(n, pairs).unwrap()
}

#[test]
fn matches_dense_oracle_on_all_small_patterns() {
    for n in 1..=3 {
        for rel in all_transitive_relations(n) {
            for m in 1..=4 {
                let fast = identity_space(&rel, m).unwrap();
                let dense = dense_identity_space(&rel, m);
                assert_eq!(to_dense_rows(&fast.basis()), dense, "m={m}\n{}", rel.render());
            }
        }
    }
}

#[test]
fn kernel_elements_vanish_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut evaluations = 0;
    while evaluations < 1000 {
        let n = rng.random_range(1..=3);
        let rel = random_relation(&mut rng, n, 0.5);
        if rel.is_empty() {
            continue;
        }
        let m = rng.random_range(2..=4);
        let space = identity_space(&rel, m).unwrap();
        let alg = IncidenceAlgebra::new(rel.clone());
        for f in space.basis().iter().take(3) {
            for _ in 0..10 {
                let xs: Vec<IncidenceElement> = (0..m)
                    .map(|_| {
                        IncidenceElement::from_terms(
                            n,
                            rel.pairs().into_iter().map(|p| (p, int(rng.random_range(-9..=9)))),
                        )
                    })
                    .collect();
                assert!(evaluate(&alg, f, &xs).unwrap().is_zero(), "{f}\n{}", rel.render());
                evaluations += 1;
            }
        }
    }
}

#[test]
fn identity_spaces_are_permutation_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let n = rng.random_range(1..=3);
        let rel = random_relation(&mut rng, n, 0.5);
        for m in 1..=4 {
            let space = identity_space(&rel, m).unwrap();
            for f in space.basis() {
                for tau in Permutation::all(m) {
                    assert!(space.contains(&f.permute_variables(&tau).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn relabeling_leaves_identity_space_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let rel = random_relation(&mut rng, 3, 0.4);
        for m in 2..=4 {
            let base = identity_space(&rel, m).unwrap();
            let mut images = vec![1, 2, 3];
            loop {
                let moved = rel.relabel(&images).unwrap();
                assert_eq!(identity_space(&moved, m).unwrap(), base);
                if !next_perm(&mut images) {
                    break;
                }
            }
        }
    }
}

fn next_perm(v: &mut [usize]) -> bool {
    let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else { return false };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[test]
fn larger_pattern_has_fewer_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let n = rng.random_range(2..=4);
        let small = random_relation(&mut rng, n, 0.3);
        let extra = random_relation(&mut rng, n, 0.2);
        let big = TransitiveRelation::closure_of(n, small.pairs().into_iter().chain(extra.pairs())).unwrap();
        assert!(small.is_subset_of(&big));
        let m = rng.random_range(2..=4);
        let id_big = identity_space(&big, m).unwrap();
        let id_small = identity_space(&small, m).unwrap();
        assert!(id_big.is_subspace_of(&id_small).unwrap());
    }
}

#[test]
fn tideal_of_an_identity_stays_inside() {
    let cases = [
        (TransitiveRelation::from_pairs(2, [(1, 1), (1, 2)]).unwrap(), parse_poly("comm(1,2)*x(3)").unwrap()),
        (TransitiveRelation::from_pairs(2, [(1, 1), (1, 2), (2, 2)]).unwrap(), parse_poly("comm(1,2)*comm(3,4)").unwrap()),
        (TransitiveRelation::full(2), standard_poly(4).unwrap()),
        (TransitiveRelation::full(1), commutator(1, 2).unwrap()),
    ];
    for (rel, g) in cases {
        assert!(identity_space(&rel, g.degree()).unwrap().contains(&g).unwrap());
        for m in g.degree()..=5 {
            let t = tideal_component(std::slice::from_ref(&g), m).unwrap();
            assert!(t.is_subspace_of(&identity_space(&rel, m).unwrap()).unwrap(), "{g} m={m}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_largest_common_subspace(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = identity_space(&random_relation(&mut rng, 3, 0.4), m).unwrap();
        let b = identity_space(&random_relation(&mut rng, 3, 0.4), m).unwrap();
        let c = a.intersect(&b).unwrap();
        prop_assert!(c.is_subspace_of(&a).unwrap() && c.is_subspace_of(&b).unwrap());
        for f in a.basis() {
            prop_assert_eq!(b.contains(&f).unwrap(), c.contains(&f).unwrap());
        }
    }
}

fn comm_times(a: usize, b: usize, c: usize) -> quiverpi::MultilinearPoly {
    product(&[Factor::commutator(a, b).unwrap(), Factor::var(c).unwrap()]).unwrap()
}

#[test]
fn spec_examples() {
    let ex1 = TransitiveRelation::from_pairs(2, [(1, 1), (1, 2)]).unwrap();
    let s3 = identity_space(&ex1, 3).unwrap();
    let expected = IdentitySubspace::span(3, &[comm_times(1, 2, 3), comm_times(1, 3, 2), comm_times(2, 3, 1)]).unwrap();
    assert_eq!(s3, expected);

    let f = identity_space(&TransitiveRelation::full(1), 2).unwrap();
    assert_eq!(f, IdentitySubspace::span(2, &[commutator(1, 2).unwrap()]).unwrap());
    assert!(!identity_space(&TransitiveRelation::full(2), 3).unwrap().contains(&standard_poly(3).unwrap()).unwrap());

    assert_eq!(tideal_component(&[commutator(1, 2).unwrap()], 2).unwrap().dimension(), 1);
    assert_eq!(tideal_component(&[comm_times(1, 2, 3)], 3).unwrap().dimension(), 3);
    assert_eq!(tideal_component(&[parse_poly("x(1)").unwrap()], 2).unwrap(), IdentitySubspace::full(2));

    let m2 = identity_space(&TransitiveRelation::full(2), 4).unwrap();
    assert!(tideal_component(&[standard_poly(4).unwrap()], 4).unwrap().is_subspace_of(&m2).unwrap());
}

#[test]
fn chain_intersection_reproduces_example_patterns() {
    let q = common::example2();
    for pi in [PathSet::all(&q), example3_pi(&q)] {
        let rel = TransitiveRelation::from_pi(&q, &pi);
        let chains = maximal_chains(&rel).unwrap();
        assert_eq!(chains.len(), 2);
        for m in 4..=5 {
            let whole = identity_space(&rel, m).unwrap();
            let parts = identity_space(&chains[0].pattern(), m)
                .unwrap()
                .intersect(&identity_space(&chains[1].pattern(), m).unwrap())
                .unwrap();
            assert_eq!(whole, parts, "m={m}");
        }
    }
}
