//! Connected regular graphs by closure under double-edge switches.
//!
//! Any two connected d-regular graphs on the same vertex set are linked by
//! a sequence of switches `ab, cd -> ac, bd` that stays within connected
//! graphs, so a breadth-first search over isomorphism classes reaches all
//! of them. This shares nothing with vertex augmentation beyond the
//! canonical labeller, which makes it a useful cross-check.

use std::collections::HashSet;

use super::rows;
use crate::aut::canon_rows;
use crate::exec;

/// A connected d-regular graph on `n` vertices (`n·d` even, `d < n`).
fn seed_graph(n: usize, d: usize) -> Vec<u64> {
    let mut r = vec![0u64; n];
    let mut join = |u: usize, v: usize| {
        r[u] |= 1 << v;
        r[v] |= 1 << u;
    };
    for u in 0..n {
        for j in 1..=d / 2 {
            join(u, (u + j) % n);
        }
        if d % 2 == 1 {
            join(u, (u + n / 2) % n);
        }
    }
    r
}

fn edges(r: &[u64]) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for (u, &row) in r.iter().enumerate() {
        let mut high = row & !((2u64 << u) - 1);
        while high != 0 {
            let v = high.trailing_zeros() as usize;
            high &= high - 1;
            e.push((u, v));
        }
    }
    e
}

/// Canonical certificates of all connected graphs one switch away.
fn switch_neighbours(cert: &[u64], seen: &HashSet<Vec<u64>>) -> Vec<Vec<u64>> {
    let es = edges(cert);
    let mut local: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    let mut g = cert.to_vec();
    for i in 0..es.len() {
        let (a, b) = es[i];
        for &(c, d) in &es[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            for (x, y, z, w) in [(a, c, b, d), (a, d, b, c)] {
                // remove ab, cd; add xy, zw
                if g[x] >> y & 1 == 1 || g[z] >> w & 1 == 1 {
                    continue;
                }
                let toggle = |g: &mut [u64], u: usize, v: usize| {
                    g[u] ^= 1 << v;
                    g[v] ^= 1 << u;
                };
                toggle(&mut g, a, b);
                toggle(&mut g, c, d);
                toggle(&mut g, x, y);
                toggle(&mut g, z, w);
                if rows::is_connected(&g) {
                    let c = canon_rows(&g, None).cert;
                    if !seen.contains(&c) && !local.contains(&c) {
                        local.insert(c.clone());
                        out.push(c);
                    }
                }
                toggle(&mut g, x, y);
                toggle(&mut g, z, w);
                toggle(&mut g, a, b);
                toggle(&mut g, c, d);
            }
        }
    }
    out
}

/// Canonical bit rows of every connected `d`-regular class on `n`
/// vertices, in discovery order.
pub(crate) fn switch_closure(n: usize, d: usize) -> Vec<Vec<u64>> {
    if n == 0 || n * d % 2 == 1 || d >= n {
        return Vec::new();
    }
    if d <= 1 {
        // only K1 and K2 are connected
        return if n == d + 1 { vec![canon_rows(&seed_graph(n, d), None).cert] } else { Vec::new() };
    }
    let start = canon_rows(&seed_graph(n, d), None).cert;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(start.clone());
    let mut found = vec![start.clone()];
    let mut frontier = vec![start];
    const CHUNK: usize = 512;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let cands = exec::flat_map(chunk, |c| switch_neighbours(c, &seen));
            for c in cands {
                if seen.insert(c.clone()) {
                    found.push(c.clone());
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_regular_counts() {
        assert_eq!(switch_closure(5, 4).len(), 1);
        assert_eq!(switch_closure(6, 3).len(), 2);
        assert_eq!(switch_closure(8, 3).len(), 5);
        assert_eq!(switch_closure(9, 4).len(), 16);
        assert_eq!(switch_closure(7, 2).len(), 1);
        assert_eq!(switch_closure(2, 1).len(), 1);
        assert_eq!(switch_closure(4, 1).len(), 0);
        assert_eq!(switch_closure(7, 3).len(), 0);
    }
}
