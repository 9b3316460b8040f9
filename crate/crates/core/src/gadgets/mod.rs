//! Gadget graphs: the order-8 symmetry breaker for the quartic pipeline and
//! the apex gadgets derived from proto-gadgets for the higher-degree one.
//!
//! A record is a certificate: [`GadgetRecord::verify`] re-checks every
//! property from the stored graph alone.

mod library;
mod proto;

pub use library::{default_protos, default_q0, format_library, parse_library, LIBRARY_VERSION};
pub use proto::{derive_q_from_p, proto_degree_sequence, proto_orders, search_proto, ProtoSearchStats};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::aut::{automorphism_group, canonical_form, CanonicalCode};
use crate::enumeration::{filter_map_graphs, DEFAULT_CEILING};
use crate::exec;
use crate::graph::Graph;
use crate::kernel::is_nut;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    /// Nut graph with a group of order 2 and two roots in different orbits,
    /// each with trivial stabiliser.
    Q0,
    /// Apex gadget for degree `d`: complement of a proto-gadget plus an apex
    /// joined to the deficient vertices.
    Proto(usize),
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetKind::Q0 => f.write_str("thm1-q0"),
            GadgetKind::Proto(d) => write!(f, "thm2-proto-d{d}"),
        }
    }
}

impl FromStr for GadgetKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "thm1-q0" {
            return Ok(GadgetKind::Q0);
        }
        s.strip_prefix("thm2-proto-d")
            .and_then(|d| d.parse().ok())
            .map(GadgetKind::Proto)
            .ok_or_else(|| format!("unknown gadget kind `{s}`"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("gadget requirement violated: {0}")]
    Spec(String),
    #[error("complement degree profile unsuitable for d={d}: {reason}")]
    Profile { d: usize, reason: String },
    #[error("unsupported degree {0}; expected one of 8, 12, 16, 20, 24")]
    UnsupportedDegree(usize),
    #[error("search budget exhausted for d={d}: found {found} of {needed} gadgets after {stats}")]
    BudgetExhausted { d: usize, found: usize, needed: usize, stats: ProtoSearchStats },
    #[error("gadget library line {line}: {reason}")]
    Library { line: usize, reason: String },
}

/// A gadget together with the data needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetRecord {
    pub kind: GadgetKind,
    pub gadget: Graph,
    /// `[q1, q2]` for [`GadgetKind::Q0`]; `[apex]` for proto gadgets.
    pub roots: Vec<usize>,
    pub proto: Option<Graph>,
    pub provenance: String,
}

impl GadgetRecord {
    pub fn code(&self) -> CanonicalCode {
        canonical_form(&self.gadget)
    }

    /// Re-checks the record from scratch.
    pub fn verify(&self) -> Result<(), GadgetError> {
        let bad = |m: String| Err(GadgetError::Spec(m));
        match self.kind {
            GadgetKind::Q0 => {
                let [q1, q2] = self.roots[..] else {
                    return bad(format!("expected two roots, got {}", self.roots.len()));
                };
                check_q0(&self.gadget, q1, q2).map_err(GadgetError::Spec)
            }
            GadgetKind::Proto(d) => {
                let [w] = self.roots[..] else {
                    return bad(format!("expected one root, got {}", self.roots.len()));
                };
                let Some(p) = &self.proto else {
                    return bad("proto-gadget missing".into());
                };
                let (q, apex) = derive_q_from_p(p, d)?;
                if q != self.gadget || apex != w {
                    return bad("stored gadget is not the one derived from its proto".into());
                }
                check_apex_gadget(&q, apex, d).map_err(GadgetError::Spec)
            }
        }
    }
}

/// Checks the order-2 symmetry-breaker properties with roots `q1`, `q2`.
pub fn check_q0(g: &Graph, q1: usize, q2: usize) -> Result<(), String> {
    if q1 >= g.order() || q2 >= g.order() {
        return Err("root out of range".into());
    }
    if !is_nut(g) {
        return Err("not a nut graph".into());
    }
    let aut = automorphism_group(g);
    if aut.order_u64() != Some(2) {
        return Err(format!("automorphism group has order {}, not 2", aut.order()));
    }
    if aut.orbit(q1).contains(&q2) {
        return Err("roots lie in the same orbit".into());
    }
    if !aut.stabilizer(q1).is_trivial() || !aut.stabilizer(q2).is_trivial() {
        return Err("a root has a nontrivial stabiliser".into());
    }
    Ok(())
}

/// Lexicographically least root pair satisfying [`check_q0`], assuming the
/// graph itself is nut with a group of order 2.
pub fn q0_roots(g: &Graph) -> Option<(usize, usize)> {
    let aut = automorphism_group(g);
    if aut.order_u64() != Some(2) {
        return None;
    }
    let n = g.order();
    let free: Vec<bool> = (0..n).map(|v| aut.orbit(v).len() == 2).collect();
    for q1 in (0..n).filter(|&v| free[v]) {
        let orbit = aut.orbit(q1);
        if let Some(q2) = (0..n).find(|&v| free[v] && !orbit.contains(&v)) {
            return Some((q1, q2));
        }
    }
    None
}

fn check_apex_gadget(q: &Graph, apex: usize, d: usize) -> Result<(), String> {
    if q.degree(apex) != d - 2 {
        return Err(format!("apex degree {} is not {}", q.degree(apex), d - 2));
    }
    if let Some(v) = (0..q.order()).find(|&v| v != apex && q.degree(v) != d) {
        return Err(format!("vertex {v} has degree {}, not {d}", q.degree(v)));
    }
    if !q.is_connected() {
        return Err("gadget is disconnected".into());
    }
    if !is_nut(q) {
        return Err("gadget is not a nut graph".into());
    }
    if !automorphism_group(q).is_trivial() {
        return Err("gadget has nontrivial automorphisms".into());
    }
    Ok(())
}

/// Every order-2 symmetry breaker on at most `max_order` vertices (one per
/// isomorphism class), canonically labelled, with the least valid roots,
/// sorted by canonical code.
pub fn search_q0(max_order: usize) -> Vec<GadgetRecord> {
    let mut found = Vec::new();
    for n in 2..=max_order.min(DEFAULT_CEILING) {
        let hits = filter_map_graphs(n, true, DEFAULT_CEILING, |g| {
            (is_nut(g) && automorphism_group(g).order_u64() == Some(2)).then(|| g.clone())
        })
        .expect("order within ceiling");
        found.extend(exec::map(&hits, |g| {
            let c = canonical_form(g);
            let h = g.relabel(&c.labeling);
            let (q1, q2) = q0_roots(&h)?;
            Some((
                c,
                GadgetRecord {
                    kind: GadgetKind::Q0,
                    gadget: h,
                    roots: vec![q1, q2],
                    proto: None,
                    provenance: format!("exhaustive order={n}"),
                },
            ))
        }));
    }
    let mut found: Vec<(CanonicalCode, GadgetRecord)> = found.into_iter().flatten().collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q0_search_at_eight() {
        assert!(search_q0(7).is_empty());
        let found = search_q0(8);
        assert!(!found.is_empty());
        for r in &found {
            assert_eq!(r.gadget.order(), 8);
            r.verify().unwrap();
        }
        let codes: Vec<_> = found.iter().map(GadgetRecord::code).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kind_text() {
        for k in [GadgetKind::Q0, GadgetKind::Proto(12)] {
            assert_eq!(k.to_string().parse::<GadgetKind>().unwrap(), k);
        }
    }
}
