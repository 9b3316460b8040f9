//! Triangle multiplier and the two gadget-decoration pipelines.
//!
//! Vertex layout of `M₃(H)` for `H` on `κ` vertices and bouquets of `t`
//! triangles (all indices 1-based in names, 0-based in the graph):
//!
//! ```text
//! h_i         = i - 1
//! t_i^(j,k)   = κ + (i-1)·2t + (j-1)·2 + (k-1)
//! ```
//!
//! Gadget copies are coalesced in a fixed order and their non-root vertices
//! appended in gadget order, so two runs give identical graphs rather than
//! merely isomorphic ones. The quartic build attaches at `q₁` for every `i`
//! before attaching at `q₂`; the degree-`d` build goes by ascending `i`,
//! then `j`, then `k`.

mod report;

pub use report::{verify_report, PipelineReport, ReportError, Theorem, REPORT_HEADER};

use thiserror::Error;

use crate::aut::automorphism_group;
use crate::gadgets::{GadgetError, GadgetKind, GadgetRecord};
use crate::graph::{Graph, GraphError, VertexTag};
use crate::perm::{groups_isomorphic, IsoVerdict, PermGroup, Permutation, DEFAULT_ISO_BOUND};

/// Degrees handled by the higher-degree pipeline.
pub const SUPPORTED_DEGREES: [usize; 5] = [8, 12, 16, 20, 24];

/// Target ω(d) values for the higher-degree pipeline. Only d = 8 is
/// enforced; the rest are reported for comparison.
pub const TARGET_OMEGA: [(usize, usize); 5] = [(8, 53), (12, 99), (16, 161), (20, 241), (24, 337)];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("input graph is disconnected")]
    NotConnected,
    #[error("input graph is not regular")]
    NotRegular,
    #[error("input graph has odd degree {0}")]
    OddDegree(usize),
    #[error("input graph has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("unsupported degree {0}; expected one of 8, 12, 16, 20, 24")]
    UnsupportedDegree(usize),
    #[error("need {needed} gadgets, got {found}")]
    NotEnoughGadgets { needed: usize, found: usize },
    #[error("gadgets {0} and {1} are isomorphic")]
    DuplicateGadgets(usize, usize),
    #[error("gadget {index} has kind {found}, expected {expected}")]
    WrongGadgetKind { index: usize, expected: GadgetKind, found: GadgetKind },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `M₃(H)` with its vertex names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierResult {
    pub graph: Graph,
    pub tags: Vec<VertexTag>,
    /// Triangles per bouquet.
    pub t: usize,
    pub kappa: usize,
}

impl MultiplierResult {
    /// Index of `t_i^(j,k)`, 1-based arguments.
    pub fn triangle_vertex(&self, i: usize, j: usize, k: usize) -> usize {
        triangle_index(self.kappa, self.t, i, j, k)
    }

    /// `β_{i,j}`: swaps the two ends of triangle `j` at `h_i`.
    pub fn beta(&self, i: usize, j: usize) -> Permutation {
        self.swap(&[(self.triangle_vertex(i, j, 1), self.triangle_vertex(i, j, 2))])
    }

    /// `γ_i`: exchanges triangles 1 and 2 at `h_i`. Needs `t ≥ 2`.
    pub fn gamma(&self, i: usize) -> Permutation {
        self.swap(&[
            (self.triangle_vertex(i, 1, 1), self.triangle_vertex(i, 2, 1)),
            (self.triangle_vertex(i, 1, 2), self.triangle_vertex(i, 2, 2)),
        ])
    }

    fn swap(&self, pairs: &[(usize, usize)]) -> Permutation {
        let mut img: Vec<u32> = (0..self.graph.order() as u32).collect();
        for &(a, b) in pairs {
            img.swap(a, b);
        }
        Permutation::from_images(img).expect("transpositions")
    }
}

fn triangle_index(kappa: usize, t: usize, i: usize, j: usize, k: usize) -> usize {
    kappa + (i - 1) * 2 * t + (j - 1) * 2 + (k - 1)
}

/// Degree of `h` if it is connected and regular of even degree.
fn even_regular_degree(h: &Graph) -> Result<usize, ConstructionError> {
    if !h.is_connected() {
        return Err(ConstructionError::NotConnected);
    }
    let d = h.regular_degree().ok_or(ConstructionError::NotRegular)?;
    if d == 0 || d % 2 == 1 {
        return Err(ConstructionError::OddDegree(d));
    }
    Ok(d)
}

/// Fuses a bouquet of `d/2` triangles onto every vertex of the connected
/// `d`-regular graph `h` (`d` even).
pub fn triangle_multiplier(h: &Graph) -> Result<MultiplierResult, ConstructionError> {
    let t = even_regular_degree(h)? / 2;
    let kappa = h.order();
    let mut edges: Vec<(usize, usize)> = h.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect();
    let mut tags: Vec<VertexTag> = (1..=kappa as u32).map(|i| VertexTag::Base { i }).collect();
    for i in 1..=kappa {
        for j in 1..=t {
            let a = triangle_index(kappa, t, i, j, 1);
            edges.extend([(i - 1, a), (i - 1, a + 1), (a, a + 1)]);
            for k in 1..=2 {
                tags.push(VertexTag::Triangle { i: i as u32, j: j as u32, k });
            }
        }
    }
    let graph = Graph::new(kappa * (2 * t + 1), &edges)?;
    Ok(MultiplierResult { graph, tags, t, kappa })
}

/// Gadget pairs per triangle for degree `d`: `s` is the least integer with
/// `C(s,2) ≥ d/4`, and the first `d/4` pairs from `{1..s}` in lexicographic
/// order are used. Gadget indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub s: usize,
    pub pairs: Vec<(usize, usize)>,
}

pub fn pairing_schedule(d: usize) -> Result<Schedule, ConstructionError> {
    if !SUPPORTED_DEGREES.contains(&d) {
        return Err(ConstructionError::UnsupportedDegree(d));
    }
    let need = d / 4;
    let s = (2..).find(|s| s * (s - 1) / 2 >= need).expect("unbounded");
    let pairs = (1..=s).flat_map(|a| (a + 1..=s).map(move |b| (a, b))).take(need).collect();
    Ok(Schedule { s, pairs })
}

/// Coalesces `gadget` at `root` onto vertex `at` of `g`, tagging the new
/// vertices as copy `copy`.
fn attach(g: &Graph, tags: &mut Vec<VertexTag>, at: usize, gadget: &Graph, root: usize, copy: u32) -> Graph {
    let c = g.coalesce(at, gadget, root).expect("vertices in range");
    for local in (0..gadget.order()).filter(|&w| w != root) {
        tags.push(VertexTag::GadgetInterior { copy, local: local as u32 });
    }
    c.graph
}

/// Decoration for the quartic pipeline. Deterministic and unchecked; the
/// public entry point is [`build_thm1`].
pub(crate) fn assemble_thm1(h: &Graph, q0: &GadgetRecord, sigma: usize) -> Result<(Graph, Vec<VertexTag>), ConstructionError> {
    let m = triangle_multiplier(h)?;
    if m.t != 2 {
        return Err(ConstructionError::WrongDegree { expected: 4, found: 2 * m.t });
    }
    let [q1, q2] = q0.roots[..] else {
        return Err(GadgetError::Spec("expected two roots".into()).into());
    };
    let (mut g, mut tags) = (m.graph.clone(), m.tags.clone());
    let mut copy = 0;
    for (j, root) in [(1, q1), (2, q2)] {
        for i in 1..=m.kappa {
            copy += 1;
            g = attach(&g, &mut tags, m.triangle_vertex(i, j, 1), &q0.gadget, root, copy);
        }
    }
    if sigma > 0 {
        for i in 1..=m.kappa {
            g = g.subdivide_edge(i - 1, m.triangle_vertex(i, 1, 2), 4 * sigma)?;
            for pos in 1..=4 * sigma as u32 {
                tags.push(VertexTag::Subdivision { i: i as u32, pos });
            }
        }
    }
    Ok((g, tags))
}

/// Decoration for degree `d`. Unchecked beyond the input shapes.
pub(crate) fn assemble_thm2(h: &Graph, d: usize, gadgets: &[GadgetRecord]) -> Result<(Graph, Vec<VertexTag>), ConstructionError> {
    let sched = pairing_schedule(d)?;
    let m = triangle_multiplier(h)?;
    if 4 * m.t != d {
        return Err(ConstructionError::WrongDegree { expected: d / 2, found: 2 * m.t });
    }
    if gadgets.len() < sched.s {
        return Err(ConstructionError::NotEnoughGadgets { needed: sched.s, found: gadgets.len() });
    }
    for (index, r) in gadgets.iter().enumerate() {
        if r.kind != GadgetKind::Proto(d) {
            return Err(ConstructionError::WrongGadgetKind { index: index + 1, expected: GadgetKind::Proto(d), found: r.kind });
        }
        if r.roots.len() != 1 {
            return Err(GadgetError::Spec("expected one root".into()).into());
        }
    }
    let (mut g, mut tags) = (m.graph.clone(), m.tags.clone());
    let mut copy = 0;
    for i in 1..=m.kappa {
        for (j, &(a, b)) in sched.pairs.iter().enumerate() {
            for (k, which) in [(1, a), (2, b)] {
                copy += 1;
                let q = &gadgets[which - 1];
                g = attach(&g, &mut tags, m.triangle_vertex(i, j + 1, k), &q.gadget, q.roots[0], copy);
            }
        }
    }
    Ok((g, tags))
}

/// Expected order of the degree-`d` build: `ω·κ` with
/// `ω = 1 + Σ_j (|Q_a| + |Q_b|)`.
pub fn thm2_omega(d: usize, gadgets: &[GadgetRecord]) -> Result<usize, ConstructionError> {
    let sched = pairing_schedule(d)?;
    if gadgets.len() < sched.s {
        return Err(ConstructionError::NotEnoughGadgets { needed: sched.s, found: gadgets.len() });
    }
    Ok(1 + sched.pairs.iter().map(|&(a, b)| gadgets[a - 1].gadget.order() + gadgets[b - 1].gadget.order()).sum::<usize>())
}

/// Builds the quartic pipeline: `M₃(h)`, copies of `q0` at `q₁` on every
/// `t_i^(1,1)` then at `q₂` on every `t_i^(2,1)`, and if `sigma > 0` each
/// edge `h_i t_i^(1,2)` replaced by a path through `4σ` new vertices.
///
/// Input errors are returned; certification failures are recorded in the
/// report.
pub fn build_thm1(h: &Graph, q0: &GadgetRecord, sigma: usize) -> Result<PipelineReport, ConstructionError> {
    if even_regular_degree(h)? != 4 {
        return Err(ConstructionError::WrongDegree { expected: 4, found: h.regular_degree().unwrap_or(0) });
    }
    if q0.kind != GadgetKind::Q0 {
        return Err(ConstructionError::WrongGadgetKind { index: 1, expected: GadgetKind::Q0, found: q0.kind });
    }
    q0.verify()?;
    let (g, tags) = assemble_thm1(h, q0, sigma)?;
    let kappa = h.order();
    Ok(PipelineReport::certify(
        Theorem::One,
        sigma,
        None,
        h.clone(),
        g,
        tags,
        vec![q0.clone()],
        (19 + 4 * sigma) * kappa,
        None,
    ))
}

/// Builds the degree-`d` pipeline on a connected `(d/2)`-regular `h`.
pub fn build_thm2(h: &Graph, d: usize, gadgets: &[GadgetRecord]) -> Result<PipelineReport, ConstructionError> {
    pairing_schedule(d)?;
    let hd = even_regular_degree(h)?;
    if 2 * hd != d {
        return Err(ConstructionError::WrongDegree { expected: d / 2, found: hd });
    }
    for r in gadgets {
        r.verify()?;
    }
    let codes: Vec<_> = gadgets.iter().map(GadgetRecord::code).collect();
    for a in 0..codes.len() {
        if let Some(b) = (a + 1..codes.len()).find(|&b| codes[a] == codes[b]) {
            return Err(ConstructionError::DuplicateGadgets(a + 1, b + 1));
        }
    }
    let (g, tags) = assemble_thm2(h, d, gadgets)?;
    let omega = thm2_omega(d, gadgets)?;
    let expected = if d == 8 { 53 * h.order() } else { omega * h.order() };
    Ok(PipelineReport::certify(Theorem::Two, 0, Some(d), h.clone(), g, tags, gadgets.to_vec(), expected, None))
}

/// Outcome of the group checks on a decorated graph.
pub(crate) struct GroupCheck {
    pub aut_order: num_bigint::BigUint,
    pub restriction_equal: bool,
    pub iso_verdict: IsoVerdict,
}

/// `Aut(G)` acting on `0..κ` must be `Aut(H)` itself, with equal orders;
/// abstract isomorphism with `input` is checked up to the bound.
pub(crate) fn check_group(g: &Graph, h: &Graph, input: &PermGroup) -> GroupCheck {
    let aut = automorphism_group(g);
    let aut_h = automorphism_group(h);
    let base: Vec<usize> = (0..h.order()).collect();
    let restriction_equal =
        aut.restrict(&base).is_ok_and(|r| r.same_group(&aut_h)) && aut.order() == aut_h.order();
    let iso_verdict = groups_isomorphic(input, &aut, DEFAULT_ISO_BOUND);
    GroupCheck { aut_order: aut.order(), restriction_equal, iso_verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::default_q0;
    use crate::kernel::is_nut;
    use num_bigint::BigUint;

    #[test]
    fn multiplier_examples() {
        let m = triangle_multiplier(&Graph::cycle(4)).unwrap();
        assert_eq!(m.graph.order(), 12);
        assert!(is_nut(&m.graph));
        assert_eq!(automorphism_group(&m.graph).order(), BigUint::from(128u32));
        let m = triangle_multiplier(&Graph::complete(5)).unwrap();
        assert_eq!(m.graph.order(), 25);
        assert_eq!(m.t, 2);
        assert_eq!(m.triangle_vertex(2, 2, 1), 5 + 4 + 2);
        assert_eq!(m.tags[m.triangle_vertex(2, 2, 1)].to_string(), "t2.2.1");
        let m = triangle_multiplier(&Graph::cycle(3)).unwrap();
        assert_eq!(automorphism_group(&m.graph).order(), BigUint::from(48u32));
    }

    #[test]
    fn multiplier_rejects() {
        assert_eq!(triangle_multiplier(&Graph::path(4)), Err(ConstructionError::NotRegular));
        assert_eq!(triangle_multiplier(&Graph::complete(4)), Err(ConstructionError::OddDegree(3)));
        let two = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert_eq!(triangle_multiplier(&two), Err(ConstructionError::NotConnected));
    }

    #[test]
    fn extra_automorphisms_of_the_multiplier() {
        let m = triangle_multiplier(&Graph::complete(5)).unwrap();
        let aut = automorphism_group(&m.graph);
        for i in 1..=5 {
            assert!(aut.contains(&m.gamma(i)));
            for j in 1..=2 {
                assert!(aut.contains(&m.beta(i, j)));
            }
        }
    }

    #[test]
    fn schedules() {
        let s = pairing_schedule(8).unwrap();
        assert_eq!((s.s, s.pairs), (3, vec![(1, 2), (1, 3)]));
        let s = pairing_schedule(12).unwrap();
        assert_eq!((s.s, s.pairs), (3, vec![(1, 2), (1, 3), (2, 3)]));
        let s = pairing_schedule(16).unwrap();
        assert_eq!((s.s, s.pairs), (4, vec![(1, 2), (1, 3), (1, 4), (2, 3)]));
        assert_eq!(pairing_schedule(20).unwrap().s, 4);
        assert_eq!(pairing_schedule(24).unwrap().pairs.len(), 6);
        assert_eq!(pairing_schedule(10), Err(ConstructionError::UnsupportedDegree(10)));
    }

    #[test]
    fn thm1_on_k5() {
        let r = build_thm1(&Graph::complete(5), &default_q0(), 0).unwrap();
        assert_eq!(r.g.order(), 95);
        assert!(r.certified, "{}", r.to_text());
        assert_eq!(r.aut_order, BigUint::from(120u32));
        let r1 = build_thm1(&Graph::complete(5), &default_q0(), 1).unwrap();
        assert_eq!(r1.g.order(), 95 + 20);
        assert!(r1.certified);
        assert_eq!(r1.tags.last().unwrap().to_string(), "s5.4");
    }

    #[test]
    fn thm1_input_errors() {
        let q0 = default_q0();
        assert!(matches!(build_thm1(&Graph::cycle(5), &q0, 0), Err(ConstructionError::WrongDegree { .. })));
        let mut bad = q0.clone();
        bad.roots = vec![0, 0];
        assert!(build_thm1(&Graph::complete(5), &bad, 0).is_err());
    }
}
