//! Exact nullspace of the adjacency matrix and nut certification.
//!
//! No floating point is involved anywhere: small graphs go through
//! fraction-free Bareiss elimination over big integers, large ones through a
//! multi-modular elimination whose output is verified exactly before it is
//! accepted. Both routes return the same canonical basis: for every free
//! column `f` of the rational echelon form, the primitive integer vector with
//! last nonzero coordinate at `f` that vanishes on the other free columns,
//! sign-normalised so its first nonzero entry is positive.

mod bareiss;
mod modular;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;

/// Orders above this use the multi-modular route.
pub const BAREISS_MAX_ORDER: usize = 40;

/// Exact kernel of `A(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub nullity: usize,
    pub basis: Vec<Vec<BigInt>>,
}

/// Why a graph is not a nut graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NutFailure {
    /// Fewer than two vertices.
    TooSmall,
    Disconnected,
    Nullity(usize),
    /// The kernel vector vanishes at this vertex.
    ZeroEntry(usize),
}

impl fmt::Display for NutFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NutFailure::TooSmall => write!(f, "order<2"),
            NutFailure::Disconnected => write!(f, "disconnected"),
            NutFailure::Nullity(k) => write!(f, "nullity={k}"),
            NutFailure::ZeroEntry(v) => write!(f, "zero-entry@{v}"),
        }
    }
}

/// Re-checkable evidence for or against nut-ness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NutCertificate {
    pub is_nut: bool,
    pub nullity: usize,
    /// Present exactly when the nullity is 1.
    pub kernel_vector: Option<Vec<BigInt>>,
    pub failure: Option<NutFailure>,
}

impl NutCertificate {
    /// True iff no coordinate of the kernel vector is zero.
    pub fn is_full(&self) -> bool {
        self.kernel_vector
            .as_ref()
            .is_some_and(|x| x.iter().all(|v| !v.is_zero()))
    }

    /// Re-multiplies `A(G)·x` exactly and re-checks every claim that
    /// can be checked without recomputing the nullity.
    pub fn recheck(&self, g: &Graph) -> bool {
        if let Some(x) = &self.kernel_vector {
            if x.len() != g.order() || !annihilates(g, x) || !is_normalized(x) {
                return false;
            }
        }
        if self.is_nut {
            self.nullity == 1
                && self.failure.is_none()
                && self.is_full()
                && g.order() >= 2
                && g.is_connected()
        } else {
            self.failure.is_some()
        }
    }
}

/// Divides out the content and makes the first nonzero entry positive.
pub(crate) fn normalize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        if !g.is_one() {
            *x = &*x / &g;
        }
        if flip {
            *x = -&*x;
        }
    }
}

fn is_normalized(v: &[BigInt]) -> bool {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else { return false };
    let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    first.is_positive() && content.is_one()
}

/// True iff `A(G)·x = 0`.
pub fn annihilates(g: &Graph, x: &[BigInt]) -> bool {
    (0..g.order()).all(|u| {
        let mut s = BigInt::zero();
        for &w in g.neighbors(u) {
            s += &x[w as usize];
        }
        s.is_zero()
    })
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<BigInt>> {
    let n = g.order();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for &(u, v) in g.edges() {
        m[u as usize][v as usize] = BigInt::one();
        m[v as usize][u as usize] = BigInt::one();
    }
    m
}

/// Kernel basis by fraction-free elimination, regardless of size.
pub fn nullspace_bareiss(g: &Graph) -> KernelBasis {
    let ech = bareiss::echelon(adjacency_matrix(g), g.order());
    let basis = ech.kernel();
    KernelBasis { nullity: basis.len(), basis }
}

/// Kernel basis by the verified multi-modular route; `None` only if the
/// prime budget ran out without a verified reconstruction.
pub fn nullspace_modular(g: &Graph) -> Option<KernelBasis> {
    modular::nullspace(g).map(|basis| KernelBasis { nullity: basis.len(), basis })
}

/// Exact kernel basis of `A(G)`. Deterministic: the result depends only on
/// the labelled graph.
pub fn nullspace(g: &Graph) -> KernelBasis {
    if g.order() <= BAREISS_MAX_ORDER {
        return nullspace_bareiss(g);
    }
    nullspace_modular(g).unwrap_or_else(|| nullspace_bareiss(g))
}

/// Rank of `A(G)` modulo a fixed large prime. Never exceeds the rational
/// rank, so `n - rank_mod_p` bounds the nullity from above.
pub fn nullity_upper_bound(g: &Graph) -> usize {
    g.order() - modular::rank_mod(g, modular::primes()[0])
}

/// Nut certificate with failure reasons checked in the order: order,
/// connectivity, nullity, fullness.
pub fn nut_certificate(g: &Graph) -> NutCertificate {
    let n = g.order();
    let structural = if n < 2 {
        Some(NutFailure::TooSmall)
    } else if !g.is_connected() {
        Some(NutFailure::Disconnected)
    } else {
        None
    };
    // a nonsingular matrix mod p is nonsingular over Q
    if n > 0 && nullity_upper_bound(g) == 0 {
        return NutCertificate {
            is_nut: false,
            nullity: 0,
            kernel_vector: None,
            failure: Some(structural.unwrap_or(NutFailure::Nullity(0))),
        };
    }
    let kb = nullspace(g);
    let kernel_vector = (kb.nullity == 1).then(|| kb.basis[0].clone());
    let failure = structural.or_else(|| {
        if kb.nullity != 1 {
            return Some(NutFailure::Nullity(kb.nullity));
        }
        kb.basis[0]
            .iter()
            .position(Zero::is_zero)
            .map(NutFailure::ZeroEntry)
    });
    NutCertificate {
        is_nut: failure.is_none(),
        nullity: kb.nullity,
        kernel_vector,
        failure,
    }
}

/// Fast yes/no nut test.
pub fn is_nut(g: &Graph) -> bool {
    if g.order() < 2 || !g.is_connected() || nullity_upper_bound(g) == 0 {
        return false;
    }
    nut_certificate(g).is_nut
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cycles_have_even_nullity_or_none() {
        assert_eq!(nullspace(&Graph::cycle(4)).nullity, 2);
        for n in 3..20 {
            let k = nullspace(&Graph::cycle(n)).nullity;
            assert_ne!(k, 1, "C_{n}");
            assert_eq!(k, if n % 4 == 0 { 2 } else { 0 });
        }
    }

    #[test]
    fn path_p3_kernel() {
        let kb = nullspace(&Graph::path(3));
        assert_eq!(kb.nullity, 1);
        assert_eq!(kb.basis[0], ints(&[1, 0, -1]));
        let cert = nut_certificate(&Graph::path(3));
        assert!(!cert.is_nut);
        assert_eq!(cert.failure, Some(NutFailure::ZeroEntry(1)));
        assert!(cert.recheck(&Graph::path(3)));
    }

    #[test]
    fn k1_is_not_a_nut_graph() {
        let cert = nut_certificate(&Graph::empty(1));
        assert_eq!(cert.nullity, 1);
        assert_eq!(cert.failure, Some(NutFailure::TooSmall));
        assert!(!cert.is_nut);
    }

    #[test]
    fn two_cliques_joined_by_square() {
        let mut edges = Vec::new();
        for base in [0, 5] {
            for u in 0..5 {
                for v in u + 1..5 {
                    edges.push((base + u, base + v));
                }
            }
        }
        edges.extend([(0, 5), (5, 1), (1, 6), (6, 0)]);
        let g = Graph::new(10, &edges).unwrap();
        let cert = nut_certificate(&g);
        assert!(cert.is_nut);
        // +1 on the square, -1 on the remaining clique vertices
        assert_eq!(
            cert.kernel_vector.unwrap(),
            ints(&[1, 1, -1, -1, -1, 1, 1, -1, -1, -1])
        );
    }

    #[test]
    fn frucht_graph_is_nut() {
        let g = Graph::from_lcf(12, &[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2]).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        let cert = nut_certificate(&g);
        assert!(cert.is_nut, "{cert:?}");
        assert!(cert.recheck(&g));
    }

    #[test]
    fn modular_route_matches_bareiss() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = rng.gen_range(2..40);
            let p = [0.08, 0.15, 0.3][trial % 3];
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let a = nullspace_bareiss(&g);
            let b = nullspace_modular(&g).expect("reconstruction");
            assert_eq!(a, b, "trial {trial}");
        }
        // structured inputs with large nullity
        for g in [Graph::empty(5), Graph::cycle(12), Graph::complete(7).complement(), star(9)] {
            assert_eq!(nullspace_bareiss(&g), nullspace_modular(&g).unwrap());
        }
    }

    fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn certificate_recheck_detects_tampering() {
        let g = Graph::from_lcf(12, &[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2]).unwrap();
        let mut cert = nut_certificate(&g);
        cert.kernel_vector.as_mut().unwrap()[0] += 1;
        assert!(!cert.recheck(&g));
    }
}
