//! Bipartite graphs, digraphs and the structural predicates the rest of the
//! crate is built on.
//!
//! Vertices are dense 0-based indices per part. A [`Vertex`] tags an index
//! with its part; vertices order `s`-side first, then by index, and that order
//! is the "smallest identifier" used for every tie-break.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decomposition::Decomposition;
use crate::Verdict;

/// The two parts of a bipartite graph: `S` carries suffixes, `P` prefixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    S,
    P,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::S => Side::P,
            Side::P => Side::S,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub const fn s(index: usize) -> Self {
        Vertex { side: Side::S, index }
    }

    pub const fn p(index: usize) -> Self {
        Vertex { side: Side::P, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::S => write!(f, "s{}", self.index + 1),
            Side::P => write!(f, "p{}", self.index + 1),
        }
    }
}

/// An edge between `s`-vertex `s` and `p`-vertex `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub s: usize,
    pub p: usize,
}

impl Edge {
    pub const fn new(s: usize, p: usize) -> Self {
        Edge { s, p }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    EndpointOutOfRange { from: usize, to: usize },
    DuplicateEdge { from: usize, to: usize },
    DifferentParts(Vertex, Vertex),
    SameVertex(Vertex),
    VertexOutOfRange(Vertex),
    Disconnected,
    Empty,
    Edgeless,
    Unbalanced { ns: usize, np: usize },
    NotATree,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EndpointOutOfRange { from, to } => {
                write!(f, "edge ({from}, {to}) has an endpoint outside the vertex range")
            }
            GraphError::DuplicateEdge { from, to } => write!(f, "duplicate edge ({from}, {to})"),
            GraphError::DifferentParts(u, v) => write!(f, "{u} and {v} lie in different parts"),
            GraphError::SameVertex(v) => write!(f, "vertex {v} passed twice"),
            GraphError::VertexOutOfRange(v) => write!(f, "vertex {v} does not exist"),
            GraphError::Disconnected => f.write_str("graph is disconnected"),
            GraphError::Empty => f.write_str("graph has no vertices"),
            GraphError::Edgeless => f.write_str("graph has no edges"),
            GraphError::Unbalanced { ns, np } => {
                write!(f, "parts have different sizes ({ns} and {np})")
            }
            GraphError::NotATree => f.write_str("graph is not a tree"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Row-major bit matrix; row `i` holds the neighbourhood of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { words, data: vec![0; rows * words] }
    }

    fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    pub(crate) fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub(crate) fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }
}

fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn count_and_not(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & !y).count_ones() as usize).sum()
}

/// A finite bipartite graph with distinguished parts `V_s` and `V_p`.
///
/// Immutable after construction. Edges are kept sorted by `(s, p)`; an edge's
/// position in that order is its *edge id*, which is how decompositions
/// address edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    ns: usize,
    np: usize,
    edges: Vec<Edge>,
    adj_s: Vec<Vec<usize>>,
    adj_p: Vec<Vec<usize>>,
    rows_s: BitMatrix,
    rows_p: BitMatrix,
}

/// An induced four-vertex path `a - b - c - d`.
///
/// `edges` lists `(a,b)`, `(b,c)`, `(c,d)` as edge ids, so `edges[1]` is the
/// middle edge. `a` and `c` are `s`-vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedP4 {
    pub vertices: [Vertex; 4],
    pub edges: [usize; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwinStatus {
    NotTwins,
    IsolatedTwins,
    NonIsolatedTwins,
}

/// Result of [`BipartiteGraph::radius_center`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusCenter {
    pub radius: usize,
    pub center: Vertex,
    /// `levels[i]` holds the vertices at distance `i` from the center.
    pub levels: Vec<Vec<Vertex>>,
}

impl BipartiteGraph {
    pub fn new(ns: usize, np: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list: Vec<Edge> = Vec::new();
        for (s, p) in edges {
            if s >= ns || p >= np {
                return Err(GraphError::EndpointOutOfRange { from: s, to: p });
            }
            list.push(Edge::new(s, p));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge { from: w[0].s, to: w[0].p });
        }
        let mut adj_s = vec![Vec::new(); ns];
        let mut adj_p = vec![Vec::new(); np];
        let mut rows_s = BitMatrix::new(ns, np);
        let mut rows_p = BitMatrix::new(np, ns);
        for e in &list {
            adj_s[e.s].push(e.p);
            adj_p[e.p].push(e.s);
            rows_s.set(e.s, e.p);
            rows_p.set(e.p, e.s);
        }
        for a in &mut adj_p {
            a.sort_unstable();
        }
        Ok(BipartiteGraph { ns, np, edges: list, adj_s, adj_p, rows_s, rows_p })
    }

    /// The complete bipartite graph `K_{ns,np}`.
    pub fn complete(ns: usize, np: usize) -> Self {
        let edges = (0..ns).flat_map(|s| (0..np).map(move |p| (s, p)));
        BipartiteGraph::new(ns, np, edges).expect("complete graph edges are valid")
    }

    pub fn ns(&self) -> usize {
        self.ns
    }

    pub fn np(&self) -> usize {
        self.np
    }

    pub fn is_balanced(&self) -> bool {
        self.ns == self.np
    }

    pub fn vertex_count(&self) -> usize {
        self.ns + self.np
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, s: usize, p: usize) -> Option<usize> {
        self.edges.binary_search(&Edge::new(s, p)).ok()
    }

    pub fn has_edge(&self, s: usize, p: usize) -> bool {
        s < self.ns && p < self.np && self.rows_s.get(s, p)
    }

    /// Dense index of `v` in `0..vertex_count()`: `s`-vertices first.
    pub fn vertex_id(&self, v: Vertex) -> usize {
        match v.side {
            Side::S => v.index,
            Side::P => self.ns + v.index,
        }
    }

    pub fn vertex_at(&self, id: usize) -> Vertex {
        if id < self.ns {
            Vertex::s(id)
        } else {
            Vertex::p(id - self.ns)
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex_at(i))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v.side {
            Side::S => v.index < self.ns,
            Side::P => v.index < self.np,
        }
    }

    /// Neighbour indices (in the opposite part) of `v`, ascending.
    pub fn neighbors(&self, v: Vertex) -> &[usize] {
        match v.side {
            Side::S => &self.adj_s[v.index],
            Side::P => &self.adj_p[v.index],
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub(crate) fn row(&self, v: Vertex) -> &[u64] {
        match v.side {
            Side::S => self.rows_s.row(v.index),
            Side::P => self.rows_p.row(v.index),
        }
    }

    fn same_part(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(GraphError::VertexOutOfRange(x));
            }
        }
        if u.side != v.side {
            return Err(GraphError::DifferentParts(u, v));
        }
        Ok(())
    }

    /// Subgraph on the same vertex sets keeping only the listed edge ids.
    pub fn edge_subgraph(&self, ids: impl IntoIterator<Item = usize>) -> BipartiteGraph {
        let edges = ids.into_iter().map(|i| (self.edges[i].s, self.edges[i].p));
        BipartiteGraph::new(self.ns, self.np, edges).expect("subgraph of a valid graph")
    }

    /// Every induced `P4`, once per path.
    ///
    /// Each path is found from its middle edge `(s, p)`: an outer `s`-vertex
    /// `s'` adjacent to `p` and an outer `p`-vertex `p'` adjacent to `s`, with
    /// `s'` and `p'` non-adjacent. Paths come out ordered by middle edge id,
    /// then by `s'`, then by `p'`.
    pub fn induced_p4s(&self) -> Vec<InducedP4> {
        let mut out = Vec::new();
        self.scan_p4s(|p4| {
            out.push(p4);
            false
        });
        out
    }

    /// The first induced `P4` in [`induced_p4s`](Self::induced_p4s) order.
    pub fn find_induced_p4(&self) -> Option<InducedP4> {
        let mut found = None;
        self.scan_p4s(|p4| {
            found = Some(p4);
            true
        });
        found
    }

    fn scan_p4s(&self, mut visit: impl FnMut(InducedP4) -> bool) {
        for (mid, e) in self.edges.iter().enumerate() {
            for &so in &self.adj_p[e.p] {
                if so == e.s {
                    continue;
                }
                for &po in &self.adj_s[e.s] {
                    if po == e.p || self.rows_s.get(so, po) {
                        continue;
                    }
                    let first = self.edge_id(so, e.p).expect("edge exists");
                    let last = self.edge_id(e.s, po).expect("edge exists");
                    let p4 = InducedP4 {
                        vertices: [Vertex::s(so), Vertex::p(e.p), Vertex::s(e.s), Vertex::p(po)],
                        edges: [first, mid, last],
                    };
                    if visit(p4) {
                        return;
                    }
                }
            }
        }
    }

    /// Holds iff every connected component is a biclique; otherwise the
    /// witness is an induced `P4`.
    pub fn is_disjoint_union_of_bicliques(&self) -> Verdict<InducedP4> {
        match self.find_induced_p4() {
            None => Verdict::Holds,
            Some(p4) => Verdict::Violated(p4),
        }
    }

    /// True iff no two same-part vertices share two or more neighbours.
    pub fn is_c4_free(&self) -> bool {
        // A C4 has two s-vertices with two common neighbours, so one side suffices.
        for a in 0..self.ns {
            for b in a + 1..self.ns {
                if count_and(self.rows_s.row(a), self.rows_s.row(b)) >= 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<usize>, GraphError> {
        self.same_part(u, v)?;
        let nv = self.neighbors(v);
        Ok(self.neighbors(u).iter().copied().filter(|x| nv.binary_search(x).is_ok()).collect())
    }

    /// `|N(u) ∩ N(v)|` without materialising the set.
    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        self.same_part(u, v)?;
        Ok(count_and(self.row(u), self.row(v)))
    }

    /// `|N(u) \ N(v)|` for same-part vertices.
    pub(crate) fn exclusive_neighbor_count(&self, u: Vertex, v: Vertex) -> usize {
        count_and_not(self.row(u), self.row(v))
    }

    pub fn twin_status(&self, u: Vertex, v: Vertex) -> Result<TwinStatus, GraphError> {
        self.same_part(u, v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(if self.neighbors(u) != self.neighbors(v) {
            TwinStatus::NotTwins
        } else if self.neighbors(u).is_empty() {
            TwinStatus::IsolatedTwins
        } else {
            TwinStatus::NonIsolatedTwins
        })
    }

    /// BFS distances (by dense vertex id) from `start`; `usize::MAX` if unreachable.
    pub fn distances_from(&self, start: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[self.vertex_id(start)] = 0;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let du = dist[self.vertex_id(u)];
            let side = u.side.other();
            for &x in self.neighbors(u) {
                let w = Vertex { side, index: x };
                let id = self.vertex_id(w);
                if dist[id] == usize::MAX {
                    dist[id] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for id in 0..self.vertex_count() {
            if seen[id] {
                continue;
            }
            let d = self.distances_from(self.vertex_at(id));
            let mut comp: Vec<Vertex> = Vec::new();
            for (j, &dj) in d.iter().enumerate() {
                if dj != usize::MAX {
                    seen[j] = true;
                    comp.push(self.vertex_at(j));
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    /// Acyclic (a forest): every component with `c` vertices has `c - 1` edges.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.is_forest()
    }

    /// Minimum eccentricity, the smallest vertex achieving it, and the BFS
    /// distance levels from that vertex.
    pub fn radius_center(&self) -> Result<RadiusCenter, GraphError> {
        if self.vertex_count() == 0 {
            return Err(GraphError::Empty);
        }
        let mut best: Option<(usize, Vertex, Vec<usize>)> = None;
        for v in self.vertices() {
            let d = self.distances_from(v);
            let ecc = *d.iter().max().expect("nonempty");
            if ecc == usize::MAX {
                return Err(GraphError::Disconnected);
            }
            if best.as_ref().is_none_or(|(b, _, _)| ecc < *b) {
                best = Some((ecc, v, d));
            }
        }
        let (radius, center, dist) = best.expect("nonempty");
        let mut levels = vec![Vec::new(); radius + 1];
        for (id, &d) in dist.iter().enumerate() {
            levels[d].push(self.vertex_at(id));
        }
        Ok(RadiusCenter { radius, center, levels })
    }

    /// König line coloring: a decomposition into `Δ` matchings.
    ///
    /// Edges are colored in id order. When the free colors at the two ends
    /// differ, the alternating path of those two colors leaving the `p`-end is
    /// flipped; in a bipartite graph that path never returns to the `s`-end.
    pub fn edge_color(&self) -> Result<Decomposition, GraphError> {
        if self.edges.is_empty() {
            return Err(GraphError::Edgeless);
        }
        let delta = self.max_degree();
        const NONE: usize = usize::MAX;
        // at_s[s*delta + c] = p-vertex joined to s by color c.
        let mut at_s = vec![NONE; self.ns * delta];
        let mut at_p = vec![NONE; self.np * delta];
        for e in &self.edges {
            let free_s = (0..delta).find(|&c| at_s[e.s * delta + c] == NONE).expect("degree bound");
            let free_p = (0..delta).find(|&c| at_p[e.p * delta + c] == NONE).expect("degree bound");
            if at_p[e.p * delta + free_s] != NONE {
                // free_s is taken at p: swap free_s/free_p along the path from p.
                let (a, b) = (free_s, free_p);
                let mut path: Vec<(usize, usize)> = Vec::new();
                let mut cur = Vertex::p(e.p);
                let mut color = a;
                loop {
                    let next = match cur.side {
                        Side::P => at_p[cur.index * delta + color],
                        Side::S => at_s[cur.index * delta + color],
                    };
                    if next == NONE {
                        break;
                    }
                    let (s, p) = match cur.side {
                        Side::P => (next, cur.index),
                        Side::S => (cur.index, next),
                    };
                    path.push((s, p));
                    cur = Vertex { side: cur.side.other(), index: next };
                    color = if color == a { b } else { a };
                }
                let mut colors = Vec::with_capacity(path.len());
                for (i, &(s, p)) in path.iter().enumerate() {
                    let c = if i % 2 == 0 { a } else { b };
                    at_s[s * delta + c] = NONE;
                    at_p[p * delta + c] = NONE;
                    colors.push(if c == a { b } else { a });
                }
                for (&(s, p), &c) in path.iter().zip(&colors) {
                    at_s[s * delta + c] = p;
                    at_p[p * delta + c] = s;
                }
            }
            at_s[e.s * delta + free_s] = e.p;
            at_p[e.p * delta + free_s] = e.s;
        }
        let mut weights = vec![0u32; self.edges.len()];
        for s in 0..self.ns {
            for c in 0..delta {
                let p = at_s[s * delta + c];
                if p != NONE {
                    weights[self.edge_id(s, p).expect("colored edge exists")] = c as u32 + 1;
                }
            }
        }
        Ok(Decomposition::with_size(weights, delta as u32).expect("colors lie in 1..=delta"))
    }
}

/// A finite digraph on `0..n` without parallel same-direction arcs; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    matrix: BitMatrix,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { from: u, to: v });
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge { from: w[0].0, to: w[0].1 });
        }
        let mut matrix = BitMatrix::new(n, n);
        for &(u, v) in &list {
            matrix.set(u, v);
        }
        Ok(Digraph { n, arcs: list, matrix })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs sorted lexicographically; the position is the arc id.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_id(&self, u: usize, v: usize) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix.get(u, v)
    }

    /// Maximum over vertices of in- and out-degree.
    pub fn max_degree(&self) -> usize {
        let mut deg_in = vec![0usize; self.n];
        let mut deg_out = vec![0usize; self.n];
        for &(u, v) in &self.arcs {
            deg_out[u] += 1;
            deg_in[v] += 1;
        }
        deg_in.into_iter().chain(deg_out).max().unwrap_or(0)
    }
}
