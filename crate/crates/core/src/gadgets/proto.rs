//! Proto-gadget search for the degree-`d` pipeline.
//!
//! A proto-gadget `P` on `N` vertices has `d-2` vertices of degree `N-d`
//! and the rest of degree `N-d-1`. Its complement then has `d-2` vertices of
//! degree `d-1` and the rest of degree `d`, and joining a new apex to the
//! deficient ones gives a gadget that is `d`-regular except for the apex
//! (degree `d-2`). Candidates come from a Havel–Hakimi realisation
//! scrambled by seeded double-edge swaps, which keep the degree sequence.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_apex_gadget, GadgetError, GadgetKind, GadgetRecord};
use crate::aut::{canonical_form, canonical_graph, CanonicalCode};
use crate::constructions::SUPPORTED_DEGREES;
use crate::exec;
use crate::graph::Graph;
use crate::kernel::is_nut;

/// Counters reported when a search runs out of budget.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProtoSearchStats {
    pub orders_tried: usize,
    pub swaps: u64,
    pub candidates: u64,
    pub rejected_disconnected: u64,
    pub rejected_not_nut: u64,
    pub rejected_symmetric: u64,
    pub rejected_duplicate: u64,
}

impl fmt::Display for ProtoSearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} orders, {} swaps, {} candidates (disconnected {}, not nut {}, symmetric {}, duplicate {})",
            self.orders_tried,
            self.swaps,
            self.candidates,
            self.rejected_disconnected,
            self.rejected_not_nut,
            self.rejected_symmetric,
            self.rejected_duplicate
        )
    }
}

/// Candidates checked per proto order before moving to the next order.
const CANDIDATES_PER_ORDER: u64 = 200_000;
/// Candidates drawn from the walk before judging them together.
const BATCH: usize = 256;
/// Orders tried above the smallest admissible one.
const ORDER_SPAN: usize = 16;

/// Degree sequence of a proto-gadget of order `n` for degree `d`, if one
/// can exist (even sum, graphical).
pub fn proto_degree_sequence(d: usize, n: usize) -> Option<Vec<usize>> {
    if d < 3 || n < d + 1 {
        return None;
    }
    let hi = n - d;
    let seq: Vec<usize> = (0..n).map(|v| if v < d - 2 { hi } else { hi - 1 }).collect();
    (havel_hakimi(&seq).is_some()).then_some(seq)
}

/// Proto orders searched for degree `d`, smallest first. For d = 8 the
/// order is fixed at 12.
pub fn proto_orders(d: usize) -> Vec<usize> {
    if d == 8 {
        return vec![12];
    }
    (d + 1..=d + ORDER_SPAN).filter(|&n| proto_degree_sequence(d, n).is_some()).collect()
}

/// Deterministic realisation: repeatedly connect the vertex of largest
/// remaining degree (lowest index on ties) to the next largest ones.
fn havel_hakimi(seq: &[usize]) -> Option<Vec<(usize, usize)>> {
    let n = seq.len();
    let mut rem = seq.to_vec();
    let mut edges = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&v| rem[v] > 0).collect();
        if order.is_empty() {
            return Some(edges);
        }
        order.sort_by_key(|&v| (std::cmp::Reverse(rem[v]), v));
        let v = order[0];
        let k = rem[v];
        if k >= order.len() {
            return None;
        }
        rem[v] = 0;
        for &u in &order[1..=k] {
            rem[u] -= 1;
            edges.push((v.min(u), v.max(u)));
        }
    }
}

/// The gadget of a proto-gadget: complement plus an apex (index `|p|`)
/// joined to every vertex of complement degree `d-1`.
pub fn derive_q_from_p(p: &Graph, d: usize) -> Result<(Graph, usize), GadgetError> {
    let c = p.complement();
    let n = c.order();
    let prof = |reason: String| Err(GadgetError::Profile { d, reason });
    if d < 3 {
        return prof("degree below 3".into());
    }
    let mut deficient = Vec::new();
    for v in 0..n {
        match c.degree(v) {
            x if x == d => {}
            x if x + 1 == d => deficient.push(v),
            x => return prof(format!("complement vertex {v} has degree {x}")),
        }
    }
    if deficient.len() != d - 2 {
        return prof(format!("{} deficient vertices, expected {}", deficient.len(), d - 2));
    }
    let mut edges: Vec<(usize, usize)> = c.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect();
    edges.extend(deficient.iter().map(|&v| (v, n)));
    let q = Graph::new(n + 1, &edges).expect("apex edges are new");
    Ok((q, n))
}

struct Walker {
    n: usize,
    edges: Vec<(usize, usize)>,
    rows: Vec<u64>,
}

impl Walker {
    fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut rows = vec![0u64; n];
        for &(u, v) in &edges {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Walker { n, edges, rows }
    }

    /// One attempted switch; returns whether the graph changed.
    fn swap(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let m = self.edges.len();
        if m < 2 {
            return false;
        }
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        let (a, b) = self.edges[i];
        let (mut c, mut d) = self.edges[j];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if i == j || a == c || a == d || b == c || b == d {
            return false;
        }
        if self.rows[a] >> c & 1 == 1 || self.rows[b] >> d & 1 == 1 {
            return false;
        }
        for (u, v) in [(a, b), (c, d)] {
            self.rows[u] ^= 1 << v;
            self.rows[v] ^= 1 << u;
        }
        for (u, v) in [(a, c), (b, d)] {
            self.rows[u] ^= 1 << v;
            self.rows[v] ^= 1 << u;
        }
        self.edges[i] = (a.min(c), a.max(c));
        self.edges[j] = (b.min(d), b.max(d));
        true
    }

    fn graph(&self) -> Graph {
        Graph::new(self.n, &self.edges).expect("switches keep the graph simple")
    }
}

enum Verdict {
    Disconnected,
    NotNut,
    Symmetric,
    Accept(CanonicalCode),
}

fn judge(p: &Graph, d: usize) -> Result<Verdict, GadgetError> {
    let (q, apex) = derive_q_from_p(p, d)?;
    if !q.is_connected() {
        return Ok(Verdict::Disconnected);
    }
    if !is_nut(&q) {
        return Ok(Verdict::NotNut);
    }
    if check_apex_gadget(&q, apex, d).is_err() {
        return Ok(Verdict::Symmetric);
    }
    Ok(Verdict::Accept(canonical_form(&q)))
}

/// Searches for `count` pairwise non-isomorphic apex gadgets for degree
/// `d`, trying proto orders from [`proto_orders`] in turn. Each accepted
/// gadget is connected, nut and asymmetric. Deterministic given `seed`;
/// records are returned in canonical-code order of the gadget.
pub fn search_proto(d: usize, count: usize, seed: u64) -> Result<Vec<GadgetRecord>, GadgetError> {
    if !SUPPORTED_DEGREES.contains(&d) {
        return Err(GadgetError::UnsupportedDegree(d));
    }
    let mut stats = ProtoSearchStats::default();
    let mut accepted: Vec<(CanonicalCode, GadgetRecord)> = Vec::new();
    let mut codes: HashSet<CanonicalCode> = HashSet::new();
    for n in proto_orders(d) {
        if accepted.len() >= count {
            break;
        }
        stats.orders_tried += 1;
        let seq = proto_degree_sequence(d, n).expect("listed orders are admissible");
        let mut walk = Walker::new(n, havel_hakimi(&seq).expect("graphical"));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let burst = 2 * walk.edges.len().max(1);
        let mut tried = 0;
        'order: while tried < CANDIDATES_PER_ORDER && accepted.len() < count {
            // the walk is sequential; candidates are judged in parallel and
            // consumed in walk order, so the outcome ignores the worker count
            let batch: Vec<Graph> = (0..BATCH)
                .map(|_| {
                    for _ in 0..burst {
                        walk.swap(&mut rng);
                    }
                    walk.graph()
                })
                .collect();
            stats.swaps += (BATCH * burst) as u64;
            let verdicts = exec::map(&batch, |p| judge(p, d));
            for (p, v) in batch.into_iter().zip(verdicts) {
                if accepted.len() >= count || tried >= CANDIDATES_PER_ORDER {
                    break 'order;
                }
                stats.candidates += 1;
                tried += 1;
                let code = match v? {
                    Verdict::Disconnected => {
                        stats.rejected_disconnected += 1;
                        continue;
                    }
                    Verdict::NotNut => {
                        stats.rejected_not_nut += 1;
                        continue;
                    }
                    Verdict::Symmetric => {
                        stats.rejected_symmetric += 1;
                        continue;
                    }
                    Verdict::Accept(code) => code,
                };
                if !codes.insert(code.clone()) {
                    stats.rejected_duplicate += 1;
                    continue;
                }
                // store the canonical proto so the record does not depend on the walk
                let p = canonical_graph(&p);
                let (q, apex) = derive_q_from_p(&p, d)?;
                accepted.push((
                    code,
                    GadgetRecord {
                        kind: GadgetKind::Proto(d),
                        gadget: q,
                        roots: vec![apex],
                        proto: Some(p),
                        provenance: format!("seed={seed} order={n} candidate={}", stats.candidates),
                    },
                ));
            }
        }
    }
    if accepted.len() < count {
        return Err(GadgetError::BudgetExhausted { d, found: accepted.len(), needed: count, stats });
    }
    accepted.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(accepted.into_iter().map(|(_, r)| r).collect())
}
