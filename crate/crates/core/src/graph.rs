//! Immutable simple graphs and the elementary surgeries used by the
//! constructions: complement, subdivision, disjoint union and coalescence.
//!
//! Vertices are `0..n`. Every surgery that introduces or renames vertices
//! returns explicit index maps so callers can keep track of vertex names.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Errors raised while building or operating on graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} out of range for a graph of order {1}")]
    VertexOutOfRange(usize, usize),
    #[error("subdivision count must be at least 1")]
    ZeroSubdivision,
}

/// A finite simple undirected graph on the vertex set `0..n`.
///
/// The edge list is kept sorted with `u < v` in every pair; adjacency lists
/// are sorted as well. Values are never mutated after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Degree statistics of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    /// Vertex degrees sorted ascending.
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
}

impl DegreeProfile {
    pub fn is_regular(&self) -> bool {
        self.min == self.max
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        self.is_regular().then_some(self.min)
    }

    /// Number of vertices with degree `d`.
    pub fn count(&self, d: usize) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::EndpointOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            norm.push((u as u32, v as u32));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        Ok(Self::from_sorted_unchecked(n, norm))
    }

    /// Caller guarantees `edges` is sorted, duplicate free, loop free and in range.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Builds a graph from adjacency lists that are already symmetric.
    pub(crate) fn from_pairs_unchecked(n: usize, mut edges: Vec<(u32, u32)>) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_unchecked(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Self::from_sorted_unchecked(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
        Self::from_pairs_unchecked(n, edges)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i as u32 - 1, i as u32)).collect();
        Self::from_sorted_unchecked(n, edges)
    }

    /// Circulant graph: `i ~ i ± s (mod n)` for every jump `s`.
    pub fn circulant(n: usize, jumps: &[usize]) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for &s in jumps {
                let j = (i + s) % n;
                if j != i {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Self::from_pairs_unchecked(n, edges)
    }

    /// Cubic graph from LCF notation: a Hamiltonian cycle plus chords `i ~ i + jumps[i mod len]`.
    pub fn from_lcf(n: usize, jumps: &[i64]) -> Result<Self, GraphError> {
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for i in 0..n {
            let j = (i as i64 + jumps[i % jumps.len()]).rem_euclid(n as i64) as usize;
            if i < j {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        DegreeProfile {
            min: degrees.first().copied().unwrap_or(0),
            max: degrees.last().copied().unwrap_or(0),
            degrees,
        }
    }

    /// `Some(d)` if every vertex has degree `d` (the empty graph on zero
    /// vertices counts as 0-regular).
    pub fn regular_degree(&self) -> Option<usize> {
        self.degree_profile().regular_degree()
    }

    /// True iff the graph has exactly one connected component.
    /// The null graph (n = 0) is not connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.components().len() == 1
    }

    /// Connected components, each as a sorted vertex list, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Proper 2-colouring check.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 - self.size());
        for u in 0..self.n {
            let mut nb = self.adj[u].iter().peekable();
            for v in u + 1..self.n {
                while nb.peek().is_some_and(|&&w| (w as usize) < v) {
                    nb.next();
                }
                if nb.peek().is_some_and(|&&w| w as usize == v) {
                    continue;
                }
                edges.push((u as u32, v as u32));
            }
        }
        Graph::from_sorted_unchecked(self.n, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Graph::from_pairs_unchecked(self.n, edges)
    }

    /// Induced subgraph on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i as u32;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (a, b) = (index[u as usize], index[v as usize]);
            if a != u32::MAX && b != u32::MAX {
                edges.push((a, b));
            }
        }
        Graph::from_pairs_unchecked(vertices.len(), edges)
    }

    /// Replaces the edge `{u, v}` by a path through `k` new vertices.
    ///
    /// New vertices are `n..n+k`, in order along the path from the smaller
    /// endpoint to the larger one.
    pub fn subdivide_edge(&self, u: usize, v: usize, k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroSubdivision);
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let n = self.n;
        let mut edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != (a as u32, b as u32))
            .collect();
        let mut prev = a;
        for i in 0..k {
            edges.push((prev as u32, (n + i) as u32));
            prev = n + i;
        }
        edges.push((b as u32, prev as u32));
        Ok(Graph::from_pairs_unchecked(n + k, edges))
    }

    /// Disjoint union; `other` is shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_sorted_unchecked(self.n + other.n, edges)
    }

    /// Coalescence `(self, v1) ⊙ (other, v2)`: disjoint union with `v1` and
    /// `v2` identified.
    ///
    /// The vertices of `self` keep their indices. The vertices of `other`
    /// except `v2` are appended in increasing order; `v2` becomes `v1`.
    pub fn coalesce(&self, v1: usize, other: &Graph, v2: usize) -> Result<Coalescence, GraphError> {
        if v1 >= self.n {
            return Err(GraphError::VertexOutOfRange(v1, self.n));
        }
        if v2 >= other.n {
            return Err(GraphError::VertexOutOfRange(v2, other.n));
        }
        let mut second_map = Vec::with_capacity(other.n);
        let mut next = self.n as u32;
        for w in 0..other.n {
            if w == v2 {
                second_map.push(v1 as u32);
            } else {
                second_map.push(next);
                next += 1;
            }
        }
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|&(u, v)| (second_map[u as usize], second_map[v as usize])),
        );
        let graph = Graph::from_pairs_unchecked(self.n + other.n - 1, edges);
        Ok(Coalescence {
            graph,
            first_map: (0..self.n as u32).collect(),
            second_map,
        })
    }

    pub(crate) fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }
}

/// Result of [`Graph::coalesce`] with the embeddings of both operands.
#[derive(Debug, Clone)]
pub struct Coalescence {
    pub graph: Graph,
    /// Old index in the first operand → index in the result.
    pub first_map: Vec<u32>,
    /// Old index in the second operand → index in the result.
    pub second_map: Vec<u32>,
}

/// The role a vertex plays in a constructed graph. Indices are 1-based, as
/// vertex names are usually written (`h_i`, `t_i^(j,k)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexTag {
    /// Vertex `h_i` of the base graph.
    Base { i: u32 },
    /// Triangle vertex `t_i^(j,k)`: triangle `j` of the bouquet at `h_i`, end `k ∈ {1,2}`.
    Triangle { i: u32, j: u32, k: u32 },
    /// Non-root vertex `local` (0-based index in the gadget) of gadget copy `copy`.
    GadgetInterior { copy: u32, local: u32 },
    /// The apex of a stand-alone gadget.
    GadgetApex,
    /// The `pos`-th vertex inserted on the subdivided edge at `h_i`.
    Subdivision { i: u32, pos: u32 },
}

impl fmt::Display for VertexTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexTag::Base { i } => write!(f, "h{i}"),
            VertexTag::Triangle { i, j, k } => write!(f, "t{i}.{j}.{k}"),
            VertexTag::GadgetInterior { copy, local } => write!(f, "g{copy}.{local}"),
            VertexTag::GadgetApex => write!(f, "w"),
            VertexTag::Subdivision { i, pos } => write!(f, "s{i}.{pos}"),
        }
    }
}

impl std::str::FromStr for VertexTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("malformed vertex tag {s:?}");
        let nums = |rest: &str| -> Result<Vec<u32>, String> {
            rest.split('.').map(|x| x.parse::<u32>().map_err(|_| bad())).collect()
        };
        if s == "w" {
            return Ok(VertexTag::GadgetApex);
        }
        let (head, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let v = nums(rest)?;
        match (head, v.as_slice()) {
            ("h", [i]) => Ok(VertexTag::Base { i: *i }),
            ("t", [i, j, k]) => Ok(VertexTag::Triangle { i: *i, j: *j, k: *k }),
            ("g", [c, l]) => Ok(VertexTag::GadgetInterior { copy: *c, local: *l }),
            ("s", [i, p]) => Ok(VertexTag::Subdivision { i: *i, pos: *p }),
            _ => Err(bad()),
        }
    }
}
