//! Isomorph-free generation of small graphs, nut censuses and minimal
//! orders of graphs realising a given group.

mod augment;
pub(crate) mod rows;
mod regular;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::aut::{automorphism_group, canonical_form, CanonicalCode};
use crate::exec;
use crate::graph::Graph;
use crate::kernel::is_nut;
use crate::perm::{groups_isomorphic, IsoVerdict, PermGroup, DEFAULT_ISO_BOUND};
use augment::Mode;

/// Largest order accepted for general censuses.
pub const DEFAULT_CEILING: usize = 10;
/// Largest order accepted for regular censuses.
pub const REGULAR_CEILING: usize = 14;
/// Opt-in ceiling for general censuses. Order 11 takes hours.
pub const STRETCH_CEILING: usize = 11;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("order {n} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    #[error("n*d must be even (n={n}, d={d})")]
    Parity { n: usize, d: usize },
    #[error("degree {d} must be smaller than the order {n}")]
    DegreeTooLarge { n: usize, d: usize },
}

fn check_ceiling(n: usize, ceiling: usize) -> Result<(), EnumError> {
    if n > ceiling || n > 64 {
        return Err(EnumError::CeilingExceeded { n, ceiling: ceiling.min(64) });
    }
    Ok(())
}

fn check_regular(n: usize, d: usize) -> Result<(), EnumError> {
    if n * d % 2 == 1 {
        return Err(EnumError::Parity { n, d });
    }
    if d >= n.max(1) {
        return Err(EnumError::DegreeTooLarge { n, d });
    }
    Ok(())
}

/// Maps `f` over one representative of every isomorphism class of graphs
/// (or connected graphs) of order `n`, keeping the `Some` results in a
/// deterministic order.
pub fn filter_map_graphs<R: Send>(
    n: usize,
    connected_only: bool,
    ceiling: usize,
    f: impl Fn(&Graph) -> Option<R> + Sync,
) -> Result<Vec<R>, EnumError> {
    check_ceiling(n, ceiling)?;
    let mode = if connected_only { Mode::Connected } else { Mode::All };
    Ok(augment::generate(n, mode, &|r: &[u64]| f(&rows::to_graph(r))))
}

/// One graph per isomorphism class of order `n`.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, EnumError> {
    filter_map_graphs(n, connected_only, DEFAULT_CEILING, |g| Some(g.clone()))
}

pub fn count_graphs(n: usize, connected_only: bool) -> Result<u64, EnumError> {
    check_ceiling(n, DEFAULT_CEILING)?;
    let mode = if connected_only { Mode::Connected } else { Mode::All };
    Ok(augment::generate(n, mode, &|_| Some(())).len() as u64)
}

/// One graph per class of connected `d`-regular graphs of order `n`, each
/// in canonical labelling, sorted by canonical code. Generated by vertex
/// augmentation restricted to induced subgraphs whose degrees can still be
/// completed to `d`.
pub fn enumerate_regular(n: usize, d: usize) -> Result<Vec<Graph>, EnumError> {
    check_ceiling(n, REGULAR_CEILING)?;
    check_regular(n, d)?;
    let found = augment::generate(n, Mode::Regular { n, d }, &|r: &[u64]| Some(rows::to_graph(r)));
    Ok(canonical_sorted(&found).into_iter().map(|(_, g)| g).collect())
}

/// The same classes as [`enumerate_regular`], found instead by closing a
/// seed graph under double-edge switches. Slower; kept as an independent
/// route for cross-checking.
pub fn enumerate_regular_by_switching(n: usize, d: usize) -> Result<Vec<Graph>, EnumError> {
    check_ceiling(n, REGULAR_CEILING)?;
    check_regular(n, d)?;
    let found: Vec<Graph> = regular::switch_closure(n, d).iter().map(|c| rows::to_graph(c)).collect();
    Ok(canonical_sorted(&found).into_iter().map(|(_, g)| g).collect())
}

/// Canonical relabellings of `graphs`, sorted by canonical code.
pub fn canonical_sorted(graphs: &[Graph]) -> Vec<(CanonicalCode, Graph)> {
    let mut out = exec::map(graphs, |g| {
        let c = canonical_form(g);
        let h = g.relabel(&c.labeling);
        (c, h)
    });
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Which graphs a census counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusFilter {
    All,
    Connected,
    Regular(usize),
    Nut,
}

impl fmt::Display for CensusFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusFilter::All => f.write_str("all"),
            CensusFilter::Connected => f.write_str("connected"),
            CensusFilter::Regular(d) => write!(f, "{d}-regular"),
            CensusFilter::Nut => f.write_str("nut"),
        }
    }
}

impl FromStr for CensusFilter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(CensusFilter::All),
            "connected" => Ok(CensusFilter::Connected),
            "nut" => Ok(CensusFilter::Nut),
            _ => s
                .strip_suffix("-regular")
                .and_then(|d| d.parse().ok())
                .map(CensusFilter::Regular)
                .ok_or_else(|| format!("unknown census filter `{s}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub n: usize,
    pub filter: CensusFilter,
    pub count: u64,
    /// Canonical codes of the counted graphs, sorted, when requested.
    pub witnesses: Option<Vec<CanonicalCode>>,
}

/// Graphs of order `n` passing `filter`, one per isomorphism class.
pub fn census_graphs(n: usize, filter: CensusFilter) -> Result<Vec<Graph>, EnumError> {
    census_graphs_within(n, filter, DEFAULT_CEILING)
}

/// [`census_graphs`] with the general ceiling raised to `ceiling`.
pub fn census_graphs_within(n: usize, filter: CensusFilter, ceiling: usize) -> Result<Vec<Graph>, EnumError> {
    match filter {
        CensusFilter::All => filter_map_graphs(n, false, ceiling, |g| Some(g.clone())),
        CensusFilter::Connected => filter_map_graphs(n, true, ceiling, |g| Some(g.clone())),
        CensusFilter::Regular(d) => enumerate_regular(n, d),
        CensusFilter::Nut => nut_graphs_within(n, ceiling),
    }
}

pub fn census(n: usize, filter: CensusFilter, with_witnesses: bool) -> Result<CensusResult, EnumError> {
    census_within(n, filter, with_witnesses, DEFAULT_CEILING)
}

/// [`census`] with the general ceiling raised to `ceiling`.
pub fn census_within(n: usize, filter: CensusFilter, with_witnesses: bool, ceiling: usize) -> Result<CensusResult, EnumError> {
    let (count, witnesses) = if with_witnesses {
        let gs = census_graphs_within(n, filter, ceiling)?;
        let codes: Vec<CanonicalCode> = canonical_sorted(&gs).into_iter().map(|(c, _)| c).collect();
        (codes.len() as u64, Some(codes))
    } else {
        let count = match filter {
            CensusFilter::All => filter_map_graphs(n, false, ceiling, |_| Some(()))?.len() as u64,
            CensusFilter::Connected => filter_map_graphs(n, true, ceiling, |_| Some(()))?.len() as u64,
            CensusFilter::Regular(d) => enumerate_regular(n, d)?.len() as u64,
            CensusFilter::Nut => filter_map_graphs(n, true, ceiling, |g| is_nut(g).then_some(()))?.len() as u64,
        };
        (count, None)
    };
    Ok(CensusResult { n, filter, count, witnesses })
}

/// Nut graphs of order `n`, canonically labelled and sorted by code.
pub fn nut_graphs(n: usize) -> Result<Vec<Graph>, EnumError> {
    nut_graphs_within(n, DEFAULT_CEILING)
}

fn nut_graphs_within(n: usize, ceiling: usize) -> Result<Vec<Graph>, EnumError> {
    let found = filter_map_graphs(n, true, ceiling, |g| is_nut(g).then(|| g.clone()))?;
    Ok(canonical_sorted(&found).into_iter().map(|(_, g)| g).collect())
}

/// Nut counts for every order `1..=max_n`.
pub fn census_nuts(max_n: usize) -> Result<Vec<CensusResult>, EnumError> {
    check_ceiling(max_n, DEFAULT_CEILING)?;
    (1..=max_n).map(|n| census(n, CensusFilter::Nut, false)).collect()
}

/// Property a minimal witness must have besides its automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Nut,
    /// Connected and `d`-regular.
    Regular(usize),
    /// Connected, `d`-regular and nut.
    RegularNut(usize),
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Nut => f.write_str("nut"),
            Predicate::Regular(d) => write!(f, "{d}-regular"),
            Predicate::RegularNut(d) => write!(f, "{d}-regular-nut"),
        }
    }
}

impl FromStr for Predicate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "nut" {
            return Ok(Predicate::Nut);
        }
        let bad = || format!("unknown predicate `{s}` (expected nut, <d>-regular or <d>-regular-nut)");
        if let Some(d) = s.strip_suffix("-regular-nut") {
            return d.parse().map(Predicate::RegularNut).map_err(|_| bad());
        }
        if let Some(d) = s.strip_suffix("-regular") {
            return d.parse().map(Predicate::Regular).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl Predicate {
    fn ceiling(self) -> usize {
        match self {
            Predicate::Nut => DEFAULT_CEILING,
            _ => REGULAR_CEILING,
        }
    }

    /// Graphs of order `n` satisfying the predicate, with their groups.
    pub fn candidates(self, n: usize) -> Result<Vec<(Graph, PermGroup)>, EnumError> {
        self.candidates_within(n, self.ceiling())
    }

    fn candidates_within(self, n: usize, ceiling: usize) -> Result<Vec<(Graph, PermGroup)>, EnumError> {
        let gs = match self {
            Predicate::Nut => filter_map_graphs(n, true, ceiling, |g| is_nut(g).then(|| g.clone()))?,
            Predicate::Regular(d) | Predicate::RegularNut(d) => {
                if d >= n || n * d % 2 == 1 {
                    return Ok(Vec::new());
                }
                let mut gs = enumerate_regular(n, d)?;
                if let Predicate::RegularNut(_) = self {
                    gs.retain(is_nut);
                }
                gs
            }
        };
        Ok(exec::map(&gs, |g| (g.clone(), automorphism_group(g))))
    }
}

#[derive(Debug, Clone)]
pub struct MinimalityResult {
    pub group: PermGroup,
    pub predicate: Predicate,
    /// Largest order searched.
    pub max_n: usize,
    /// Smallest order with a witness; `None` means open within `max_n`.
    pub min_order: Option<usize>,
    /// Number of witnesses at `min_order`.
    pub candidate_count: usize,
    /// The witnesses, canonically labelled and sorted by code.
    pub witnesses: Vec<Graph>,
    /// Candidates whose group comparison was undecided (orders above the
    /// isomorphism bound), over all orders searched.
    pub undecided: usize,
}

impl MinimalityResult {
    pub fn is_open(&self) -> bool {
        self.min_order.is_none()
    }
}

/// Smallest order of a graph satisfying `predicate` whose automorphism
/// group is isomorphic to `target`, scanning orders `1..=max_n`.
pub fn minimal_order_for_group(
    target: &PermGroup,
    predicate: Predicate,
    max_n: usize,
) -> Result<MinimalityResult, EnumError> {
    Ok(minimal_orders(std::slice::from_ref(target), predicate, max_n)?.remove(0))
}

/// [`minimal_order_for_group`] for several targets sharing one scan.
pub fn minimal_orders(
    targets: &[PermGroup],
    predicate: Predicate,
    max_n: usize,
) -> Result<Vec<MinimalityResult>, EnumError> {
    minimal_orders_within(targets, predicate, max_n, predicate.ceiling())
}

/// [`minimal_orders`] with the ceiling raised to `ceiling` (e.g.
/// [`STRETCH_CEILING`] for order-11 nut scans).
pub fn minimal_orders_within(
    targets: &[PermGroup],
    predicate: Predicate,
    max_n: usize,
    ceiling: usize,
) -> Result<Vec<MinimalityResult>, EnumError> {
    let ceiling = ceiling.max(predicate.ceiling());
    check_ceiling(max_n, ceiling)?;
    let mut results: Vec<MinimalityResult> = targets
        .iter()
        .map(|t| MinimalityResult {
            group: t.clone(),
            predicate,
            max_n,
            min_order: None,
            candidate_count: 0,
            witnesses: Vec::new(),
            undecided: 0,
        })
        .collect();
    for n in 1..=max_n {
        if results.iter().all(|r| r.min_order.is_some()) {
            break;
        }
        let cands = predicate.candidates_within(n, ceiling)?;
        for r in results.iter_mut().filter(|r| r.min_order.is_none()) {
            let mut hits = Vec::new();
            for (g, aut) in &cands {
                if aut.order() != r.group.order() {
                    continue;
                }
                match groups_isomorphic(&r.group, aut, DEFAULT_ISO_BOUND) {
                    IsoVerdict::Isomorphic => hits.push(g.clone()),
                    IsoVerdict::Undecided => r.undecided += 1,
                    IsoVerdict::NotIsomorphic => {}
                }
            }
            if !hits.is_empty() {
                r.min_order = Some(n);
                r.candidate_count = hits.len();
                r.witnesses = canonical_sorted(&hits).into_iter().map(|(_, g)| g).collect();
            }
        }
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_generators;

    #[test]
    fn graph_counts() {
        assert_eq!(count_graphs(4, false).unwrap(), 11);
        assert_eq!(count_graphs(4, true).unwrap(), 6);
        assert_eq!(count_graphs(7, true).unwrap(), 853);
        assert!(matches!(count_graphs(11, true), Err(EnumError::CeilingExceeded { .. })));
    }

    #[test]
    fn regular_counts_and_errors() {
        assert_eq!(enumerate_regular(5, 4).unwrap(), vec![Graph::complete(5)]);
        assert_eq!(enumerate_regular(9, 4).unwrap(), enumerate_regular_by_switching(9, 4).unwrap());
        assert_eq!(enumerate_regular(10, 4).unwrap().len(), 59);
        assert_eq!(enumerate_regular(10, 3).unwrap().len(), 19);
        assert_eq!(enumerate_regular(5, 3), Err(EnumError::Parity { n: 5, d: 3 }));
        assert_eq!(enumerate_regular(4, 4), Err(EnumError::DegreeTooLarge { n: 4, d: 4 }));
    }

    #[test]
    fn small_nut_census() {
        let c = census_nuts(7).unwrap();
        assert!(c[..6].iter().all(|r| r.count == 0));
        assert_eq!(c[6].count, 3);
        let nuts = nut_graphs(7).unwrap();
        assert_eq!(nuts.len(), 3);
        assert!(nuts.iter().all(|g| g.degree_profile().min >= 2 && !g.is_bipartite()));
    }

    #[test]
    fn minimal_nut_orders_at_seven() {
        let v4 = PermGroup::from_generators(4, &parse_generators("(1,2);(3,4)", 4).unwrap()).unwrap();
        let s3 = PermGroup::from_generators(3, &parse_generators("(1,2,3);(1,2)", 3).unwrap()).unwrap();
        let z5 = PermGroup::from_generators(5, &parse_generators("(1,2,3,4,5)", 5).unwrap()).unwrap();
        let r = minimal_orders(&[v4, s3, z5], Predicate::Nut, 7).unwrap();
        assert_eq!(r[0].min_order, Some(7));
        assert_eq!(r[1].min_order, Some(7));
        assert!(r[2].is_open());
    }

    #[test]
    fn text_forms() {
        for p in [Predicate::Nut, Predicate::Regular(4), Predicate::RegularNut(8)] {
            assert_eq!(p.to_string().parse::<Predicate>().unwrap(), p);
        }
        for f in [CensusFilter::All, CensusFilter::Connected, CensusFilter::Regular(3), CensusFilter::Nut] {
            assert_eq!(f.to_string().parse::<CensusFilter>().unwrap(), f);
        }
    }
}
