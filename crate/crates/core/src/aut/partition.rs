//! Ordered partitions and equitable refinement.

use std::collections::VecDeque;

/// Adjacency in the form the refiner wants: bit rows for small graphs,
/// neighbour lists otherwise.
pub(crate) enum Adjacency {
    Dense(Vec<u64>),
    Sparse(Vec<Vec<u32>>),
}

impl Adjacency {
    pub fn new(adj: &[Vec<u32>]) -> Self {
        if adj.len() <= 64 {
            Adjacency::Dense(
                adj.iter()
                    .map(|ns| ns.iter().fold(0u64, |m, &w| m | 1 << w))
                    .collect(),
            )
        } else {
            Adjacency::Sparse(adj.to_vec())
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Adjacency::Dense(rows) => rows.len(),
            Adjacency::Sparse(lists) => lists.len(),
        }
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = (h ^ x).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Scratch buffers reused across refinements.
#[derive(Default)]
pub(crate) struct Scratch {
    counts: Vec<u32>,
    touched: Vec<u32>,
    cells: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
}

impl Scratch {
    fn ensure(&mut self, n: usize) {
        if self.counts.len() < n {
            self.counts.resize(n, 0);
            self.in_queue.resize(n, false);
        }
    }
}

/// Ordered partition of `0..n`. Cells are contiguous ranges of `lab`.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    /// Vertex at each position.
    pub lab: Vec<u32>,
    /// Start position of each vertex's cell.
    cell: Vec<u32>,
    /// Cell length, valid at cell start positions.
    len: Vec<u32>,
    pub cells: usize,
}

impl Partition {
    pub fn unit(n: usize) -> Self {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n as u32;
        }
        Partition {
            lab: (0..n as u32).collect(),
            cell: vec![0; n],
            len,
            cells: usize::from(n > 0),
        }
    }

    /// Partition with the given ordered cells; must cover `0..n` exactly.
    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Self {
        let mut p = Partition { lab: Vec::with_capacity(n), cell: vec![0; n], len: vec![0; n], cells: 0 };
        for c in cells.iter().filter(|c| !c.is_empty()) {
            let start = p.lab.len() as u32;
            for &v in c {
                p.lab.push(v as u32);
                p.cell[v] = start;
            }
            p.len[start as usize] = c.len() as u32;
            p.cells += 1;
        }
        assert_eq!(p.lab.len(), n, "cells must partition the vertex set");
        p
    }

    pub fn n(&self) -> usize {
        self.lab.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    /// Start positions of all cells, in order.
    pub fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.lab.len() {
                return None;
            }
            let cur = s;
            s += self.len[s] as usize;
            Some(cur)
        })
    }

    pub fn cell_at(&self, start: usize) -> &[u32] {
        &self.lab[start..start + self.len[start] as usize]
    }

    pub fn to_cells(&self) -> Vec<Vec<usize>> {
        self.starts()
            .map(|s| {
                let mut c: Vec<usize> = self.cell_at(s).iter().map(|&v| v as usize).collect();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// First smallest cell of size > 1.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for s in self.starts() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|(bl, _)| l < bl) {
                best = Some((l, s));
                if l == 2 {
                    break;
                }
            }
        }
        best.map(|(_, s)| s)
    }

    /// Moves `v` into a singleton cell at the front of its cell and returns
    /// the singleton's start.
    pub fn individualize(&mut self, v: u32) -> usize {
        let s = self.cell[v as usize] as usize;
        let l = self.len[s] as usize;
        debug_assert!(l > 1);
        let at = s + self.lab[s..s + l].iter().position(|&x| x == v).expect("member");
        self.lab.swap(s, at);
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for &x in &self.lab[s + 1..s + l] {
            self.cell[x as usize] = (s + 1) as u32;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// the cells starting at `splitters` as the initial queue (all cells if
    /// `None`). Returns a trace hash that depends only on the isomorphism
    /// type of (graph, partition).
    pub fn refine(&mut self, g: &Adjacency, splitters: Option<&[usize]>, sc: &mut Scratch, seed: u64) -> u64 {
        let n = self.n();
        sc.ensure(n);
        let mut h = mix(seed, self.cells as u64);
        sc.queue.clear();
        match splitters {
            Some(list) => {
                for &s in list {
                    if !sc.in_queue[s] {
                        sc.in_queue[s] = true;
                        sc.queue.push_back(s as u32);
                    }
                }
            }
            None => {
                let starts: Vec<usize> = self.starts().collect();
                for s in starts {
                    sc.in_queue[s] = true;
                    sc.queue.push_back(s as u32);
                }
            }
        }
        while let Some(w) = sc.queue.pop_front() {
            let w = w as usize;
            sc.in_queue[w] = false;
            if self.is_discrete() {
                continue;
            }
            h = mix(h, w as u64);
            self.count_into(g, w, sc);
            // cells with at least one counted vertex, in position order
            sc.cells.clear();
            for &u in &sc.touched {
                let c = self.cell[u as usize];
                if self.len[c as usize] > 1 {
                    sc.cells.push(c);
                }
            }
            sc.cells.sort_unstable();
            sc.cells.dedup();
            for ci in 0..sc.cells.len() {
                let s = sc.cells[ci] as usize;
                h = self.split_cell(s, sc, h);
            }
            for &u in &sc.touched {
                sc.counts[u as usize] = 0;
            }
            sc.touched.clear();
        }
        mix(h, self.cells as u64)
    }

    fn count_into(&self, g: &Adjacency, w: usize, sc: &mut Scratch) {
        let splitter = &self.lab[w..w + self.len[w] as usize];
        match g {
            Adjacency::Sparse(lists) => {
                for &x in splitter {
                    for &u in &lists[x as usize] {
                        let c = &mut sc.counts[u as usize];
                        if *c == 0 {
                            sc.touched.push(u);
                        }
                        *c += 1;
                    }
                }
            }
            Adjacency::Dense(rows) => {
                let mask = splitter.iter().fold(0u64, |m, &x| m | 1 << x);
                for s in self.starts() {
                    if self.len[s] == 1 {
                        continue;
                    }
                    for &u in self.cell_at(s) {
                        let c = (rows[u as usize] & mask).count_ones();
                        if c > 0 {
                            sc.counts[u as usize] = c;
                            sc.touched.push(u);
                        }
                    }
                }
            }
        }
    }

    fn split_cell(&mut self, s: usize, sc: &mut Scratch, mut h: u64) -> u64 {
        let l = self.len[s] as usize;
        let counts = &sc.counts;
        let cell = &mut self.lab[s..s + l];
        let first = counts[cell[0] as usize];
        if cell.iter().all(|&v| counts[v as usize] == first) {
            return mix(h, ((s as u64) << 32) | first as u64);
        }
        cell.sort_unstable_by_key(|&v| (counts[v as usize], v));
        // pieces in ascending count order
        let was_queued = sc.in_queue[s];
        let mut pieces: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < l {
            let c = counts[cell[i] as usize];
            let mut j = i + 1;
            while j < l && counts[cell[j] as usize] == c {
                j += 1;
            }
            pieces.push((s + i, j - i));
            h = mix(h, ((c as u64) << 32) | (j - i) as u64);
            i = j;
        }
        for &(ps, pl) in &pieces {
            self.len[ps] = pl as u32;
            for k in ps..ps + pl {
                let v = self.lab[k] as usize;
                self.cell[v] = ps as u32;
            }
        }
        self.cells += pieces.len() - 1;
        let largest = if was_queued {
            usize::MAX
        } else {
            let mut best = 0;
            for (k, &(_, pl)) in pieces.iter().enumerate() {
                if pl > pieces[best].1 {
                    best = k;
                }
            }
            best
        };
        for (k, &(ps, _)) in pieces.iter().enumerate() {
            if k != largest && !sc.in_queue[ps] {
                sc.in_queue[ps] = true;
                sc.queue.push_back(ps as u32);
            }
        }
        mix(h, s as u64)
    }
}
