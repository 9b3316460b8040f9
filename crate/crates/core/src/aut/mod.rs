//! Automorphism groups, canonical forms and isomorphism testing.
//!
//! The search individualizes a vertex of the first smallest non-singleton
//! cell (lowest index first), refines to an equitable partition using
//! degree-in-cell counts, and recurses. Automorphisms found at leaves prune
//! sibling subtrees by orbits of the subgroup fixing the current path.

mod partition;
mod search;

pub use search::{Cancelled, Deadline, SearchStats};

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use partition::{Adjacency, Partition, Scratch};

use crate::codec::to_graph6;
use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};

/// Canonical form: the graph6 bytes of the canonically relabelled graph,
/// plus the relabelling used (`labeling[v]` is the new index of `v`).
/// Equality, ordering and hashing look at `code` only.
#[derive(Debug, Clone)]
pub struct CanonicalCode {
    pub code: Vec<u8>,
    pub labeling: Vec<u32>,
}

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.code).expect("graph6 is ASCII")
    }
}

impl PartialEq for CanonicalCode {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for CanonicalCode {}

impl Hash for CanonicalCode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

/// Result of a canonical labelling run.
#[derive(Debug, Clone)]
pub struct Canon {
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<u32>,
    /// Generators of the automorphism group (of the coloured graph).
    pub generators: Vec<Permutation>,
    pub stats: SearchStats,
}

impl Canon {
    pub fn graph(&self, g: &Graph) -> Graph {
        g.relabel(&self.labeling)
    }
}

fn initial(n: usize, colors: Option<&[Vec<usize>]>) -> Partition {
    match colors {
        Some(cells) => Partition::from_cells(n, cells),
        None => Partition::unit(n),
    }
}

/// True iff `p` maps edges of `g` onto edges of `g`.
pub fn is_automorphism(g: &Graph, p: &Permutation) -> bool {
    p.degree() == g.order()
        && g.edges()
            .iter()
            .all(|&(u, v)| g.has_edge(p.apply(u as usize), p.apply(v as usize)))
}

/// Generators of the automorphism group preserving the ordered colour
/// classes `colors` (all vertices one class if `None`).
pub fn automorphism_generators(
    g: &Graph,
    colors: Option<&[Vec<usize>]>,
    deadline: Option<Deadline>,
) -> Result<(Vec<Permutation>, SearchStats), Cancelled> {
    let adj = Adjacency::new(g.adjacency());
    let out = search::run(&adj, initial(g.order(), colors), false, deadline)?;
    for gamma in &out.generators {
        assert!(is_automorphism(g, gamma), "search produced a non-automorphism");
    }
    Ok((out.generators, out.stats))
}

/// The full automorphism group of `g`.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let (gens, _) = automorphism_generators(g, None, None).expect("no deadline");
    PermGroup::from_generators(g.order(), &gens).expect("degrees match")
}

/// Canonical labelling with automorphism generators.
pub fn canonical_labeling(
    g: &Graph,
    colors: Option<&[Vec<usize>]>,
    deadline: Option<Deadline>,
) -> Result<Canon, Cancelled> {
    let n = g.order();
    let adj = Adjacency::new(g.adjacency());
    let out = search::run(&adj, initial(n, colors), true, deadline)?;
    for gamma in &out.generators {
        assert!(is_automorphism(g, gamma), "search produced a non-automorphism");
    }
    let lab = out.canonical_lab.unwrap_or_default();
    let mut labeling = vec![0u32; n];
    for (i, &v) in lab.iter().enumerate() {
        labeling[v as usize] = i as u32;
    }
    Ok(Canon { labeling, generators: out.generators, stats: out.stats })
}

/// Canonical form of `g`; equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> CanonicalCode {
    let c = canonical_labeling(g, None, None).expect("no deadline");
    let code = to_graph6(&c.graph(g)).into_bytes();
    CanonicalCode { code, labeling: c.labeling }
}

/// Canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_labeling(g, None, None).expect("no deadline").graph(g)
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    g1.order() == g2.order()
        && g1.size() == g2.size()
        && g1.degree_profile().degrees == g2.degree_profile().degrees
        && canonical_form(g1) == canonical_form(g2)
}

/// Canonical data for a graph given as bit rows (n ≤ 64), used by the
/// enumerators to skip building `Graph` values.
pub(crate) struct RowCanon {
    /// Bit rows of the canonically relabelled graph.
    pub cert: Vec<u64>,
    /// `labeling[v]` is the canonical index of `v`.
    pub labeling: Vec<u32>,
    pub generators: Vec<Permutation>,
}

/// `colors` must be an isomorphism-invariant ordered partition for the
/// result to be canonical for the uncoloured graph.
pub(crate) fn canon_rows(rows: &[u64], colors: Option<&[Vec<usize>]>) -> RowCanon {
    let n = rows.len();
    debug_assert!(n <= 64);
    let adj = Adjacency::Dense(rows.to_vec());
    let out = search::run(&adj, initial(n, colors), true, None).expect("no deadline");
    let mut labeling = vec![0u32; n];
    for (i, &v) in out.canonical_lab.expect("canonical mode").iter().enumerate() {
        labeling[v as usize] = i as u32;
    }
    RowCanon { cert: out.canonical_cert.expect("canonical mode"), labeling, generators: out.generators }
}

pub(crate) fn aut_rows(rows: &[u64], colors: Option<&[Vec<usize>]>) -> Vec<Permutation> {
    let adj = Adjacency::Dense(rows.to_vec());
    search::run(&adj, initial(rows.len(), colors), false, None).expect("no deadline").generators
}

/// Coarsest equitable partition finer than the ordered partition `cells`.
/// Cells are returned in their refined order, each sorted.
pub fn refine_partition(g: &Graph, cells: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let adj = Adjacency::new(g.adjacency());
    let mut p = Partition::from_cells(g.order(), cells);
    p.refine(&adj, None, &mut Scratch::default(), 0);
    p.to_cells()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &Graph) -> u64 {
        automorphism_group(g).order_u64().unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &e).unwrap()
    }

    fn frucht() -> Graph {
        Graph::from_lcf(12, &[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2]).unwrap()
    }

    /// Two K5 minus an edge, both missing-edge pairs joined to a centre.
    fn two_cliques_with_centre() -> Graph {
        let mut e = Vec::new();
        for base in [0, 5] {
            for u in 0..5 {
                for v in u + 1..5 {
                    if (u, v) != (0, 1) {
                        e.push((base + u, base + v));
                    }
                }
            }
        }
        e.extend([(10, 0), (10, 1), (10, 5), (10, 6)]);
        Graph::new(11, &e).unwrap()
    }

    #[test]
    fn known_group_orders() {
        assert_eq!(order(&Graph::complete(4)), 24);
        assert_eq!(order(&Graph::cycle(5)), 10);
        assert_eq!(order(&petersen()), 120);
        assert_eq!(order(&frucht()), 1);
        assert_eq!(order(&Graph::empty(5)), 120);
        assert_eq!(order(&Graph::empty(0)), 1);
        let g = two_cliques_with_centre();
        assert_eq!(g.regular_degree(), Some(4));
        assert_eq!(order(&g), 288);
    }

    #[test]
    fn relabellings_share_a_code() {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for g in [petersen(), frucht(), two_cliques_with_centre(), Graph::cycle(9)] {
            let c = canonical_form(&g);
            for _ in 0..5 {
                let mut p: Vec<u32> = (0..g.order() as u32).collect();
                p.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabel(&p)), c);
            }
        }
    }

    #[test]
    fn non_isomorphic_pairs() {
        let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&Graph::cycle(6), &two_triangles));
        let mut k33 = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                k33.push((u, v));
            }
        }
        let k33 = Graph::new(6, &k33).unwrap();
        assert!(!are_isomorphic(&k33, &Graph::cycle(6)));
        assert!(are_isomorphic(&Graph::cycle(6), &Graph::circulant(6, &[1])));
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(refine_partition(&Graph::cycle(6), &[(0..6).collect()]).len(), 1);
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(refine_partition(&star, &[(0..4).collect()]), vec![vec![1, 2, 3], vec![0]]);
    }

    #[test]
    fn colours_restrict_the_group() {
        let c = Graph::cycle(6);
        let (gens, _) = automorphism_generators(&c, Some(&[vec![0], vec![1, 2, 3, 4, 5]]), None).unwrap();
        let grp = PermGroup::from_generators(6, &gens).unwrap();
        assert_eq!(grp.order_u64(), Some(2));
    }

    #[test]
    fn large_sparse_graph_uses_list_refinement() {
        let g = Graph::cycle(200);
        assert_eq!(order(&g), 400);
        let mut p: Vec<u32> = (0..200).collect();
        p.reverse();
        p.swap(3, 77);
        let h = g.relabel(&p);
        assert!(are_isomorphic(&g, &h));
        assert!(!are_isomorphic(&g, &Graph::circulant(200, &[2])));
    }

    #[test]
    fn deadline_cancels() {
        let past = Deadline(std::time::Instant::now() - std::time::Duration::from_secs(1));
        assert_eq!(
            canonical_labeling(&petersen(), None, Some(past)).unwrap_err(),
            Cancelled
        );
    }
}
