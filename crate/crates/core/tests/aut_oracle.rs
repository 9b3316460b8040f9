//! Automorphism groups and canonical forms checked against brute force.

use std::collections::HashSet;

use nutaut::aut::{are_isomorphic, automorphism_group, canonical_form, canonical_labeling};
use nutaut::graph::Graph;
use proptest::prelude::*;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in g.edges().iter() {
        m[u as usize][v as usize] = true;
        m[v as usize][u as usize] = true;
    }
    m
}

fn brute_aut_count(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let m = matrix(g);
    let edges = g.edges();
    perms
        .iter()
        .filter(|p| edges.iter().all(|&(u, v)| m[p[u as usize]][p[v as usize]]))
        .count() as u64
}

fn from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

#[test]
fn group_orders_match_brute_force_up_to_six() {
    for n in 1..=6 {
        let perms = permutations(n);
        let m = n * (n - 1) / 2;
        for mask in 0..1u64 << m {
            let g = from_mask(n, mask);
            let got = automorphism_group(&g).order_u64().unwrap();
            assert_eq!(got, brute_aut_count(&g, &perms), "n={n} mask={mask}");
        }
    }
}

#[test]
fn canonical_codes_count_isomorphism_classes() {
    let expected = [1usize, 2, 4, 11, 34, 156];
    for n in 1..=6 {
        let m = n * (n - 1) / 2;
        let codes: HashSet<_> = (0..1u64 << m).map(|mask| canonical_form(&from_mask(n, mask))).collect();
        assert_eq!(codes.len(), expected[n - 1], "n={n}");
    }
}

#[test]
fn canonical_labeling_yields_the_canonical_graph() {
    let g = Graph::from_lcf(12, &[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2]).unwrap();
    let c = canonical_labeling(&g, None, None).unwrap();
    assert_eq!(c.graph(&g), nutaut::aut::canonical_graph(&g));
    assert!(c.generators.is_empty());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let mask = bits.iter().enumerate().fold(0u64, |a, (i, &b)| a | (b as u64) << i);
            from_mask(n, mask)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seven_vertex_orders_match_brute_force(g in arb_graph(7).prop_filter("n=7", |g| g.order() == 7)) {
        let perms = permutations(7);
        prop_assert_eq!(automorphism_group(&g).order_u64().unwrap(), brute_aut_count(&g, &perms));
    }

    #[test]
    fn relabelling_preserves_code(g in arb_graph(11), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut p: Vec<u32> = (0..g.order() as u32).collect();
        p.shuffle(&mut rng);
        let h = g.relabel(&p);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(automorphism_group(&g).order(), automorphism_group(&h).order());
    }

    #[test]
    fn complement_shares_the_group(g in arb_graph(9)) {
        prop_assert!(automorphism_group(&g).same_group(&automorphism_group(&g.complement())));
    }
}
