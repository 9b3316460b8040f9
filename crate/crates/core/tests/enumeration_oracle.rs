//! Enumeration checked against counting identities, an independent
//! generator and brute-force filters.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nutaut::aut::{automorphism_group, canonical_form, CanonicalCode};
use nutaut::enumeration::{
    count_graphs, enumerate_graphs, enumerate_regular, enumerate_regular_by_switching, nut_graphs,
};
use nutaut::exec;
use nutaut::graph::Graph;
use nutaut::kernel::nut_certificate;

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

fn codes(gs: &[Graph]) -> BTreeSet<CanonicalCode> {
    gs.iter().map(canonical_form).collect()
}

/// Number of labelled graphs represented by a list of class representatives.
fn labelled(gs: &[Graph], n: usize) -> BigUint {
    gs.iter().fold(BigUint::zero(), |acc, g| acc + factorial(n) / automorphism_group(g).order())
}

#[test]
fn orbit_counting_recovers_all_labelled_graphs() {
    for n in 1..=8 {
        let gs = enumerate_graphs(n, false).unwrap();
        assert_eq!(labelled(&gs, n), BigUint::one() << (n * (n - 1) / 2), "n={n}");
        assert_eq!(codes(&gs).len(), gs.len(), "duplicate class at n={n}");
    }
}

#[test]
fn connected_labelled_counts() {
    let known: [u64; 8] = [1, 1, 4, 38, 728, 26704, 1866256, 251548592];
    for (n, want) in (1..=8).zip(known) {
        let gs = enumerate_graphs(n, true).unwrap();
        assert!(gs.iter().all(Graph::is_connected));
        assert_eq!(labelled(&gs, n), BigUint::from(want), "n={n}");
    }
}

#[test]
fn counts_agree_with_listing() {
    for n in 1..=8 {
        for conn in [false, true] {
            assert_eq!(count_graphs(n, conn).unwrap(), enumerate_graphs(n, conn).unwrap().len() as u64);
        }
    }
}

#[test]
fn regular_generator_matches_filtered_census() {
    for n in 2..=9 {
        let conn = enumerate_graphs(n, true).unwrap();
        let mut by_degree: HashMap<usize, Vec<Graph>> = HashMap::new();
        for g in conn {
            if let Some(d) = g.regular_degree() {
                by_degree.entry(d).or_default().push(g);
            }
        }
        for d in 1..n {
            if n * d % 2 == 1 {
                continue;
            }
            let gen = enumerate_regular(n, d).unwrap();
            let want = by_degree.remove(&d).unwrap_or_default();
            assert_eq!(codes(&gen), codes(&want), "n={n} d={d}");
            assert_eq!(gen.len(), want.len());
        }
    }
}

#[test]
fn augmentation_agrees_with_switching() {
    for (d, max_n) in [(3, 12), (4, 11), (5, 10)] {
        for n in d + 1..=max_n {
            if n * d % 2 == 1 {
                continue;
            }
            let a = enumerate_regular(n, d).unwrap();
            let b = enumerate_regular_by_switching(n, d).unwrap();
            assert_eq!(codes(&a), codes(&b), "n={n} d={d}");
            assert_eq!(a.len(), codes(&a).len());
        }
    }
}

#[test]
fn nut_census_shape() {
    for (n, want) in [(7, 3), (8, 13), (9, 560)] {
        let gs = nut_graphs(n).unwrap();
        assert_eq!(gs.len(), want, "n={n}");
        assert_eq!(codes(&gs).len(), want);
        for g in &gs {
            assert!(g.is_connected());
            assert!(!g.is_bipartite());
            assert!(g.degree_profile().min >= 2);
            if let Some(d) = g.regular_degree() {
                assert!(d >= 3);
            }
            let c = nut_certificate(g);
            assert!(c.is_nut && c.recheck(g));
        }
    }
    for n in 1..=6 {
        assert!(nut_graphs(n).unwrap().is_empty(), "no nut graph of order {n}");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let par = (enumerate_graphs(7, true).unwrap(), enumerate_regular(10, 4).unwrap(), nut_graphs(8).unwrap());
    let seq = exec::sequential(|| {
        (enumerate_graphs(7, true).unwrap(), enumerate_regular(10, 4).unwrap(), nut_graphs(8).unwrap())
    });
    assert_eq!(par, seq);
}

fn class_codes(n: usize) -> &'static BTreeSet<CanonicalCode> {
    static CELL: OnceLock<Vec<BTreeSet<CanonicalCode>>> = OnceLock::new();
    &CELL.get_or_init(|| (0..=7).map(|n| codes(&enumerate_graphs(n.max(1), false).unwrap())).collect())[n]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn every_random_graph_has_a_listed_class(n in 1usize..=7, bits in any::<u32>()) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(n, &edges).unwrap();
        prop_assert!(class_codes(n).contains(&canonical_form(&g)));
    }
}
