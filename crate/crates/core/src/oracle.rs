//! Exact achievability and readability.
//!
//! Fix a label length `L` and a weighting `w`. Every edge `(u, v)` forces
//! `suf_w(u) = pre_w(v)`, i.e. `w` position equalities. Merging those with
//! union-find and giving each class its own symbol yields the *refined*
//! labeling. Any labeling with these overlaps satisfies the same equalities,
//! so it is a coarsening of the refined one; coarsening can only create or
//! shorten overlaps. Hence `w` is achievable at length `L` iff the refined
//! labeling achieves it, and every defect seen while only part of `w` is
//! fixed persists in every completion, which is what makes pruning sound.
//!
//! In the bipartite model `L = max w` loses nothing: overlaps of length at
//! most `L` only read the last `L` symbols of `s`-labels and the first `L`
//! of `p`-labels, so anything beyond can be cut off. The digraph model has no
//! such truncation, so readability there searches each length `r` with
//! weights in `1..r`.
//!
//! An arcless digraph on two or more vertices still needs distinct labels, so
//! its readability is 1.

use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::{Decomposition, DecompositionError};
use crate::graph::{BipartiteGraph, Digraph, Edge};
use crate::labeling::{ov, Labeling, Symbol};
use crate::search::{degree_order, first_weighting, Extension};
use crate::uf::UnionFind;
use crate::{Budget, BudgetExceeded};

/// Why a weighting cannot be achieved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// The forced equalities already give edge `edge` a shorter overlap.
    ShorterOverlap { edge: usize, overlap: usize },
    /// The non-adjacent pair `(s, p)` is forced to overlap.
    UnwantedOverlap { s: usize, p: usize, overlap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Achievability {
    Achievable(Labeling),
    NotAchievable(Refutation),
}

impl Achievability {
    pub fn is_achievable(&self) -> bool {
        matches!(self, Achievability::Achievable(_))
    }
}

/// Class id of every position, laid out vertex-major.
fn classes(uf: &mut UnionFind) -> Vec<u32> {
    (0..uf.len() as u32).map(|x| uf.find(x)).collect()
}

/// Renumber classes by first appearance into a labeling.
fn refined_labeling(uf: &mut UnionFind, vertices: usize, len: usize) -> Labeling {
    let cls = classes(uf);
    let mut symbol = vec![u32::MAX; cls.len()];
    let mut next: Symbol = 0;
    let labels = (0..vertices)
        .map(|v| {
            cls[v * len..(v + 1) * len]
                .iter()
                .map(|&c| {
                    if symbol[c as usize] == u32::MAX {
                        symbol[c as usize] = next;
                        next += 1;
                    }
                    symbol[c as usize]
                })
                .collect()
        })
        .collect();
    Labeling::with_alphabet(len, next, labels).expect("refined labels have uniform length")
}

struct BipartiteGrid<'a> {
    g: &'a BipartiteGraph,
    len: usize,
    stack: Vec<UnionFind>,
}

impl<'a> BipartiteGrid<'a> {
    fn new(g: &'a BipartiteGraph, len: usize) -> Self {
        BipartiteGrid { g, len, stack: vec![UnionFind::new(g.vertex_count() * len)] }
    }

    fn pos(&self, vertex: usize, i: usize) -> u32 {
        (vertex * self.len + i) as u32
    }

    fn force(&self, uf: &mut UnionFind, e: Edge, w: usize) {
        let (u, v) = (e.s, self.g.ns() + e.p);
        for t in 0..w {
            uf.union(self.pos(u, self.len - w + t), self.pos(v, t));
        }
    }

    /// First defect of the refined labeling, judging only weighted edges.
    fn defect(&self, uf: &mut UnionFind, weights: &[u32]) -> Option<Refutation> {
        let cls = classes(uf);
        let label = |v: usize| &cls[v * self.len..(v + 1) * self.len];
        let g = self.g;
        for s in 0..g.ns() {
            for p in 0..g.np() {
                let o = ov(label(s), label(g.ns() + p));
                match g.edge_id(s, p) {
                    Some(edge) => {
                        let w = weights[edge] as usize;
                        if w != 0 && o < w {
                            return Some(Refutation::ShorterOverlap { edge, overlap: o });
                        }
                    }
                    None if o > 0 => return Some(Refutation::UnwantedOverlap { s, p, overlap: o }),
                    None => {}
                }
            }
        }
        None
    }
}

impl Extension for BipartiteGrid<'_> {
    fn push(&mut self, weights: &[u32], _depth: usize, edge: usize) -> bool {
        let mut uf = self.stack.last().expect("base state").clone();
        self.force(&mut uf, self.g.edge(edge), weights[edge] as usize);
        let ok = self.defect(&mut uf, weights).is_none();
        self.stack.push(uf);
        ok
    }

    fn pop(&mut self, _: usize, _: usize) {
        self.stack.pop();
    }

    fn accept(&mut self, _: &[u32]) -> bool {
        true
    }
}

/// Decide whether some overlap labeling has `l`-decomposition exactly `w`;
/// if so, return the refined labeling (length `max w`) as witness.
pub fn oracle_achieves(g: &BipartiteGraph, w: &Decomposition) -> Result<Achievability, DecompositionError> {
    w.fits(g.edge_count())?;
    let len = w.max_weight() as usize;
    let grid = BipartiteGrid::new(g, len);
    let mut uf = grid.stack[0].clone();
    for (id, e) in g.edges().iter().enumerate() {
        grid.force(&mut uf, *e, w.weight(id) as usize);
    }
    Ok(match grid.defect(&mut uf, w.weights()) {
        Some(r) => Achievability::NotAchievable(r),
        None => Achievability::Achievable(refined_labeling(&mut uf, g.vertex_count(), len)),
    })
}

/// A minimum-length labeling and its decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Readability {
    pub value: usize,
    pub labeling: Labeling,
    pub decomposition: Decomposition,
}

/// Exact readability of a bipartite graph: the least `k` such that some
/// weighting in `[k]^E` is achievable.
pub fn readability_bipartite(g: &BipartiteGraph, budget: &mut Budget) -> Result<Readability, BudgetExceeded> {
    if g.edge_count() == 0 {
        let labeling = Labeling::new(0, vec![Vec::new(); g.vertex_count()]).expect("empty labels");
        let decomposition = Decomposition::new(Vec::new()).expect("empty weighting");
        return Ok(Readability { value: 0, labeling, decomposition });
    }
    let order = degree_order(g);
    for k in 1.. {
        let mut grid = BipartiteGrid::new(g, k);
        if let Some(weights) = first_weighting(&order, g.edge_count(), 1, k as u32, &mut grid, budget)? {
            let decomposition = Decomposition::with_size(weights, k as u32).expect("weights in 1..=k");
            let Ok(Achievability::Achievable(labeling)) = oracle_achieves(g, &decomposition) else {
                unreachable!("search accepted an unachievable weighting");
            };
            // The witness is normalised to max w; stretch to k if smaller.
            let labeling = pad_bipartite(g, labeling, k);
            return Ok(Readability { value: k, labeling, decomposition });
        }
    }
    unreachable!()
}

/// Pad outer sides with fresh symbols up to `len`.
fn pad_bipartite(g: &BipartiteGraph, l: Labeling, len: usize) -> Labeling {
    if l.len() == len {
        return l;
    }
    let extra = len - l.len();
    let mut next = l.alphabet_size();
    let labels = l
        .into_labels()
        .into_iter()
        .enumerate()
        .map(|(id, x)| {
            let pad: Vec<Symbol> = (0..extra).map(|i| next + i as Symbol).collect();
            next += extra as Symbol;
            if id < g.ns() {
                pad.into_iter().chain(x).collect()
            } else {
                x.into_iter().chain(pad).collect()
            }
        })
        .collect();
    Labeling::with_alphabet(len, next, labels).expect("padded to uniform length")
}

struct DigraphGrid<'a> {
    d: &'a Digraph,
    len: usize,
    stack: Vec<UnionFind>,
}

impl<'a> DigraphGrid<'a> {
    fn new(d: &'a Digraph, len: usize) -> Self {
        DigraphGrid { d, len, stack: vec![UnionFind::new(d.vertex_count() * len)] }
    }

    fn ok(&self, uf: &mut UnionFind, weights: &[u32]) -> bool {
        let cls = classes(uf);
        let n = self.d.vertex_count();
        let label = |v: usize| &cls[v * self.len..(v + 1) * self.len];
        for u in 0..n {
            for v in 0..n {
                if u < v && label(u) == label(v) {
                    return false;
                }
                let o = ov(label(u), label(v));
                match self.d.arc_id(u, v) {
                    Some(a) => {
                        let w = weights[a] as usize;
                        if w != 0 && o < w {
                            return false;
                        }
                    }
                    None => {
                        if o > 0 && o < self.len {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl Extension for DigraphGrid<'_> {
    fn push(&mut self, weights: &[u32], _depth: usize, arc: usize) -> bool {
        let mut uf = self.stack.last().expect("base state").clone();
        let (u, v) = self.d.arcs()[arc];
        let w = weights[arc] as usize;
        for t in 0..w {
            uf.union((u * self.len + self.len - w + t) as u32, (v * self.len + t) as u32);
        }
        let ok = self.ok(&mut uf, weights);
        self.stack.push(uf);
        ok
    }

    fn pop(&mut self, _: usize, _: usize) {
        self.stack.pop();
    }

    fn accept(&mut self, _: &[u32]) -> bool {
        true
    }
}

/// Arc ids by descending sum of tail out-degree and head in-degree, ties by id.
fn arc_order(d: &Digraph) -> Vec<usize> {
    let n = d.vertex_count();
    let mut deg = vec![0usize; n];
    for &(u, v) in d.arcs() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut order: Vec<usize> = (0..d.arc_count()).collect();
    order.sort_by_key(|&a| {
        let (u, v) = d.arcs()[a];
        (core::cmp::Reverse(deg[u] + deg[v]), a)
    });
    order
}

/// Exact readability of a digraph: the least `r` admitting an injective
/// overlap labeling of length `r`.
pub fn readability_digraph(d: &Digraph, budget: &mut Budget) -> Result<Readability, BudgetExceeded> {
    let n = d.vertex_count();
    if d.arc_count() == 0 {
        let (value, labels) =
            if n <= 1 { (0, vec![Vec::new(); n]) } else { (1, (0..n as Symbol).map(|i| vec![i]).collect()) };
        let labeling = Labeling::new(value, labels).expect("uniform labels");
        let decomposition = Decomposition::new(Vec::new()).expect("empty weighting");
        return Ok(Readability { value, labeling, decomposition });
    }
    let order = arc_order(d);
    for r in 2.. {
        let mut grid = DigraphGrid::new(d, r);
        if let Some(weights) = first_weighting(&order, d.arc_count(), 1, r as u32 - 1, &mut grid, budget)? {
            let mut uf = grid.stack.pop().expect("final state");
            let labeling = refined_labeling(&mut uf, n, r);
            let decomposition = Decomposition::with_size(weights, r as u32 - 1).expect("weights in 1..r");
            return Ok(Readability { value: r, labeling, decomposition });
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{bipartite_decomposition, verify_bipartite, verify_digraph};

    #[test]
    fn achieves_three_vertex_path() {
        let g = BipartiteGraph::new(2, 1, [(0, 0), (1, 0)]).unwrap();
        let w = Decomposition::new(vec![1, 2]).unwrap();
        let Achievability::Achievable(l) = oracle_achieves(&g, &w).unwrap() else { panic!() };
        assert!(verify_bipartite(&g, &l).unwrap().holds());
        assert_eq!(bipartite_decomposition(&g, &l).unwrap(), w);
    }

    #[test]
    fn rejects_p4_453() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let w = Decomposition::new(vec![4, 5, 3]).unwrap();
        assert!(!oracle_achieves(&g, &w).unwrap().is_achievable());
    }

    #[test]
    fn bipartite_small_values() {
        let mut b = Budget::default();
        let edge = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(readability_bipartite(&edge, &mut b).unwrap().value, 1);
        let none = BipartiteGraph::new(3, 3, []).unwrap();
        assert_eq!(readability_bipartite(&none, &mut b).unwrap().value, 0);
        let p4 = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let r = readability_bipartite(&p4, &mut b).unwrap();
        assert_eq!(r.value, 2);
        assert!(verify_bipartite(&p4, &r.labeling).unwrap().holds());
        assert_eq!(r.labeling.len(), 2);
    }

    #[test]
    fn digraph_small_values() {
        let mut b = Budget::default();
        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        let r = readability_digraph(&arc, &mut b).unwrap();
        assert_eq!(r.value, 2);
        assert!(verify_digraph(&arc, &r.labeling).unwrap().holds());
        assert_eq!(readability_digraph(&Digraph::new(1, []).unwrap(), &mut b).unwrap().value, 0);
        assert_eq!(readability_digraph(&Digraph::new(3, []).unwrap(), &mut b).unwrap().value, 1);
        let lp = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(readability_digraph(&lp, &mut b).unwrap().value, 2);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c6 = BipartiteGraph::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]).unwrap();
        let mut b = Budget::new(5);
        assert_eq!(readability_bipartite(&c6, &mut b), Err(BudgetExceeded { limit: 5 }));
    }
}
