//! Individualization-refinement search tree.

use std::cmp::Ordering;
use std::time::Instant;

use super::partition::{Adjacency, Partition, Scratch};
use crate::perm::Permutation;

/// Cooperative cancellation: the search gives up once the instant passes.
#[derive(Debug, Clone, Copy)]
pub struct Deadline(pub Instant);

impl Deadline {
    pub fn after(d: std::time::Duration) -> Self {
        Deadline(Instant::now() + d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cancelled;

impl std::fmt::Display for Cancelled {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("search cancelled by deadline")
    }
}

impl std::error::Error for Cancelled {}

/// Search statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
}

pub(crate) struct Outcome {
    pub generators: Vec<Permutation>,
    /// Best leaf labelling: position -> vertex (canonical mode only).
    pub canonical_lab: Option<Vec<u32>>,
    /// Adjacency of the best leaf; equal across isomorphic inputs.
    pub canonical_cert: Option<Vec<u64>>,
    pub stats: SearchStats,
}

struct Leaf {
    trace: Vec<u64>,
    path: Vec<u32>,
    lab: Vec<u32>,
    cert: Vec<u64>,
}

struct Search<'a> {
    g: &'a Adjacency,
    canonical: bool,
    deadline: Option<Deadline>,
    scratch: Scratch,
    trace: Vec<u64>,
    path: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Permutation>,
    stats: SearchStats,
}

/// Runs the search from `initial` (refined here). In canonical mode the best
/// leaf is tracked and returned; otherwise only automorphisms are collected
/// and nodes off the first path's trace are pruned.
pub(crate) fn run(
    g: &Adjacency,
    mut initial: Partition,
    canonical: bool,
    deadline: Option<Deadline>,
) -> Result<Outcome, Cancelled> {
    let mut s = Search {
        g,
        canonical,
        deadline,
        scratch: Scratch::default(),
        trace: Vec::new(),
        path: Vec::new(),
        first: None,
        best: None,
        gens: Vec::new(),
        stats: SearchStats::default(),
    };
    let t = initial.refine(g, None, &mut s.scratch, 0);
    s.trace.push(t);
    s.node(initial)?;
    let (canonical_lab, canonical_cert) = match s.best {
        Some(b) if canonical => (Some(b.lab), Some(b.cert)),
        _ => (None, None),
    };
    Ok(Outcome { generators: s.gens, canonical_lab, canonical_cert, stats: s.stats })
}

fn lcp(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn certificate(&self, lab: &[u32]) -> Vec<u64> {
        let n = lab.len();
        let mut pos = vec![0u32; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        match self.g {
            Adjacency::Dense(rows) => lab
                .iter()
                .map(|&v| {
                    let mut r = rows[v as usize];
                    let mut out = 0u64;
                    while r != 0 {
                        let w = r.trailing_zeros();
                        r &= r - 1;
                        out |= 1 << pos[w as usize];
                    }
                    out
                })
                .collect(),
            Adjacency::Sparse(lists) => {
                let mut out = Vec::new();
                let mut row = Vec::new();
                for &v in lab {
                    row.clear();
                    row.extend(lists[v as usize].iter().map(|&w| pos[w as usize] as u64));
                    row.sort_unstable();
                    out.push(row.len() as u64);
                    out.extend_from_slice(&row);
                }
                out
            }
        }
    }

    /// Orbits (as representative per vertex) of the stored generators that
    /// fix the current path pointwise.
    fn path_orbits(&self) -> Vec<u32> {
        let n = self.g.n();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for gamma in &self.gens {
            if !self.path.iter().all(|&v| gamma.apply(v as usize) == v as usize) {
                continue;
            }
            for x in 0..n {
                let y = gamma.apply(x);
                let (a, b) = (find(&mut parent, x as u32), find(&mut parent, y as u32));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        (0..n as u32).map(|x| find(&mut parent, x)).collect()
    }

    fn check_deadline(&self) -> Result<(), Cancelled> {
        if let Some(Deadline(t)) = self.deadline {
            if self.stats.nodes % 256 == 1 && Instant::now() > t {
                return Err(Cancelled);
            }
        }
        Ok(())
    }

    /// Explores the subtree below `p`. `Some(level)` asks ancestors to
    /// unwind to the node at that depth.
    fn node(&mut self, p: Partition) -> Result<Option<usize>, Cancelled> {
        self.stats.nodes += 1;
        self.check_deadline()?;
        if p.is_discrete() {
            return Ok(self.leaf(p.lab));
        }
        let depth = self.path.len();
        let target = p.target_cell().expect("non-discrete partition");
        let mut cands: Vec<u32> = p.cell_at(target).to_vec();
        cands.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for v in cands {
            if !explored.is_empty() && !self.gens.is_empty() {
                if orbits.as_ref().is_none_or(|(k, _)| *k != self.gens.len()) {
                    orbits = Some((self.gens.len(), self.path_orbits()));
                }
                let reps = &orbits.as_ref().expect("computed").1;
                if explored.iter().any(|&u| reps[u as usize] == reps[v as usize]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = p.clone();
            let s = child.individualize(v);
            let t = child.refine(self.g, Some(&[s]), &mut self.scratch, s as u64);
            self.path.push(v);
            self.trace.push(t);
            let result = if self.keep() { self.node(child)? } else { None };
            self.trace.pop();
            self.path.pop();
            if let Some(level) = result {
                if level < depth {
                    return Ok(Some(level));
                }
            }
        }
        Ok(None)
    }

    /// Whether the node whose trace was just pushed can still lead to a
    /// leaf equivalent to the first leaf or at least as good as the best.
    fn keep(&self) -> bool {
        let Some(first) = &self.first else { return true };
        let k = self.trace.len();
        if first.trace.len() >= k && first.trace[..k] == self.trace[..] {
            return true;
        }
        if !self.canonical {
            return false;
        }
        let best = self.best.as_ref().expect("best exists with first");
        let m = k.min(best.trace.len());
        self.trace[..m].cmp(&best.trace[..m]) != Ordering::Less
    }

    fn leaf(&mut self, lab: Vec<u32>) -> Option<usize> {
        self.stats.leaves += 1;
        let cert = self.certificate(&lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { trace: self.trace.clone(), path: self.path.clone(), lab, cert };
            if self.canonical {
                self.best = Some(Leaf {
                    trace: leaf.trace.clone(),
                    path: leaf.path.clone(),
                    lab: leaf.lab.clone(),
                    cert: leaf.cert.clone(),
                });
            }
            self.first = Some(leaf);
            return None;
        };
        if first.trace == self.trace && first.cert == cert {
            let jump = lcp(&first.path, &self.path);
            let gamma = map_between(&first.lab, &lab);
            self.add_generator(gamma);
            return Some(jump);
        }
        if !self.canonical {
            return None;
        }
        let best = self.best.as_ref().expect("best exists with first");
        match self.trace.cmp(&best.trace).then_with(|| cert.cmp(&best.cert)) {
            Ordering::Equal => {
                let jump = lcp(&best.path, &self.path);
                let gamma = map_between(&best.lab, &lab);
                self.add_generator(gamma);
                Some(jump)
            }
            Ordering::Greater => {
                self.best = Some(Leaf { trace: self.trace.clone(), path: self.path.clone(), lab, cert });
                None
            }
            Ordering::Less => None,
        }
    }

    fn add_generator(&mut self, gamma: Permutation) {
        if !gamma.is_identity() && !self.gens.contains(&gamma) {
            self.gens.push(gamma);
        }
    }
}

/// The permutation sending `from[i]` to `to[i]`.
fn map_between(from: &[u32], to: &[u32]) -> Permutation {
    let mut images = vec![0u32; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        images[a as usize] = b;
    }
    Permutation::from_images(images).expect("two labellings differ by a bijection")
}
