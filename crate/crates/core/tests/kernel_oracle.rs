//! Kernel routes against an independent rational Gauss-Jordan reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use nutaut::graph::Graph;
use nutaut::kernel::{nullspace, nullspace_bareiss, nullspace_modular, nut_certificate};
use proptest::prelude::*;

/// Canonical basis from the reduced row echelon form over Q: for each free
/// column f, set x_f = 1, other free columns 0, solve, clear denominators.
fn oracle(g: &Graph) -> Vec<Vec<BigInt>> {
    let n = g.order();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    if g.has_edge(u, v) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(sel) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, sel);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); n];
            x[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -m[row][f].clone();
            }
            let lcm = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let mut v: Vec<BigInt> = x
                .iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect();
            let content = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
            let sign = if v.iter().find(|e| !e.is_zero()).unwrap().is_negative() { -1 } else { 1 };
            for e in v.iter_mut() {
                *e = &*e / &content * sign;
            }
            v
        })
        .collect()
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

#[test]
fn every_labelled_graph_up_to_six_vertices() {
    for n in 1..=6usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let expect = oracle(&g);
            let got = nullspace(&g);
            assert_eq!(got.nullity, expect.len(), "n={n} mask={mask}");
            assert_eq!(got.basis, expect, "n={n} mask={mask}");
        }
    }
}

#[test]
fn nut_verdict_agrees_with_oracle_definition() {
    for n in 2..=6usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let basis = oracle(&g);
            let expect = g.is_connected() && basis.len() == 1 && basis[0].iter().all(|x| !x.is_zero());
            let cert = nut_certificate(&g);
            assert_eq!(cert.is_nut, expect);
            assert_eq!(nutaut::kernel::is_nut(&g), expect);
            assert!(cert.recheck(&g));
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn both_routes_match_oracle(g in arb_graph(18)) {
        let expect = oracle(&g);
        prop_assert_eq!(&nullspace_bareiss(&g).basis, &expect);
        prop_assert_eq!(&nullspace_modular(&g).unwrap().basis, &expect);
    }

    #[test]
    fn nullity_is_relabelling_invariant(g in arb_graph(14), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<u32> = (0..g.order() as u32).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(nullspace(&g).nullity, nullspace(&h).nullity);
    }
}

#[test]
fn modular_route_on_a_large_sparse_graph() {
    // two long cycles joined by a path; nullity computed by both routes
    let mut edges = Vec::new();
    for i in 0..150 {
        edges.push((i, (i + 1) % 150));
        edges.push((150 + i, 150 + (i + 1) % 150));
    }
    edges.push((0, 150));
    let g = Graph::new(300, &edges).unwrap();
    assert_eq!(nullspace_modular(&g).unwrap(), nullspace_bareiss(&g));
}
