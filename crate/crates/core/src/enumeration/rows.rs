//! Small graphs as adjacency bit rows (n ≤ 64).

use crate::graph::Graph;
use crate::perm::Permutation;

#[cfg(test)]
pub(crate) fn from_graph(g: &Graph) -> Vec<u64> {
    let mut rows = vec![0u64; g.order()];
    for &(u, v) in g.edges() {
        rows[u as usize] |= 1 << v;
        rows[v as usize] |= 1 << u;
    }
    rows
}

pub(crate) fn to_graph(rows: &[u64]) -> Graph {
    let mut edges = Vec::new();
    for (u, &r) in rows.iter().enumerate() {
        let mut high = r & !((2u64 << u) - 1);
        while high != 0 {
            let v = high.trailing_zeros();
            high &= high - 1;
            edges.push((u as u32, v));
        }
    }
    Graph::from_sorted_unchecked(rows.len(), edges)
}

pub(crate) fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices reachable from the lowest vertex of `within`, using only
/// vertices of `within`.
fn reach(rows: &[u64], within: u64) -> u64 {
    if within == 0 {
        return 0;
    }
    let mut seen = within & within.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = rows[v] & within & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

pub(crate) fn is_connected(rows: &[u64]) -> bool {
    let all = full(rows.len());
    !rows.is_empty() && reach(rows, all) == all
}

/// Vertices whose removal leaves the graph connected (all of them when
/// n ≤ 2). Assumes a connected graph.
pub(crate) fn non_cut(rows: &[u64]) -> u64 {
    let n = rows.len();
    let all = full(n);
    if n <= 2 {
        return all;
    }
    let mut out = 0;
    for v in 0..n {
        let rest = all & !(1 << v);
        if reach(rows, rest) == rest {
            out |= 1 << v;
        }
    }
    out
}

/// Orbit representative (least point) of every point under `gens`.
pub(crate) fn orbit_reps(n: usize, gens: &[Permutation]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut parent, x as u32), find(&mut parent, g.apply(x) as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    (0..n as u32).map(|x| find(&mut parent, x)).collect()
}
