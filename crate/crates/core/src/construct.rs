//! Labelings built from decompositions, and the digraph/bipartite bridge.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decomposition::{self, Decomposition, DecompositionError, HubViolation, Rule, RuleChecker};
use crate::graph::{BipartiteGraph, Digraph, Edge, GraphError, InducedP4, Side, Vertex};
use crate::labeling::{self, Label, Labeling, LabelingError, Symbol};
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    Graph(GraphError),
    Decomposition(DecompositionError),
    Labeling(LabelingError),
    HasC4,
    P4RuleViolated(InducedP4),
    /// The weighting satisfies the `P4`-rule only, on a graph with a cycle.
    NeitherStrictNorAcyclic,
    HubRuleViolated(HubViolation),
    /// An edge weight smaller than its endpoints' current label lengths.
    FillerUnderflow {
        edge: usize,
    },
    ZeroLength,
    NoArcs,
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::Graph(e) => e.fmt(f),
            ConstructError::Decomposition(e) => e.fmt(f),
            ConstructError::Labeling(e) => e.fmt(f),
            ConstructError::HasC4 => f.write_str("graph contains a C4"),
            ConstructError::P4RuleViolated(p) => {
                write!(f, "decomposition violates the P4-rule on edges {:?}", p.edges)
            }
            ConstructError::NeitherStrictNorAcyclic => {
                f.write_str("decomposition is not strict and the graph has a cycle")
            }
            ConstructError::HubRuleViolated(v) => write!(f, "decomposition violates the HUB-rule: {v:?}"),
            ConstructError::FillerUnderflow { edge } => {
                write!(f, "edge {edge} is lighter than its endpoint labels")
            }
            ConstructError::ZeroLength => f.write_str("labeling has length 0"),
            ConstructError::NoArcs => f.write_str("digraph has no arcs"),
        }
    }
}

impl core::error::Error for ConstructError {}

impl From<GraphError> for ConstructError {
    fn from(e: GraphError) -> Self {
        ConstructError::Graph(e)
    }
}

impl From<DecompositionError> for ConstructError {
    fn from(e: DecompositionError) -> Self {
        ConstructError::Decomposition(e)
    }
}

impl From<LabelingError> for ConstructError {
    fn from(e: LabelingError) -> Self {
        ConstructError::Labeling(e)
    }
}

/// Source of never-reused symbols for one construction.
#[derive(Debug, Default)]
struct Fresh(Symbol);

impl Fresh {
    fn next(&mut self) -> Symbol {
        self.0 += 1;
        self.0 - 1
    }

    fn take(&mut self, n: usize) -> Label {
        (0..n).map(|_| self.next()).collect()
    }
}

/// One edge of the achieve construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AchieveStep {
    pub edge: usize,
    pub filler: Label,
    pub before_s: Label,
    pub before_p: Label,
    /// The new label of both endpoints: `before_p . filler . before_s`.
    pub after: Label,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AchieveTrace {
    pub steps: Vec<AchieveStep>,
    /// Final label length after outer padding.
    pub padded_len: usize,
}

/// A labeling of a `C4`-free graph whose decomposition is exactly `w`.
///
/// Edges are processed by non-decreasing weight, ties by edge id. Edge
/// `(u, v)` relabels both endpoints `l(v) . A . l(u)`, where `A` is a run of
/// fresh symbols making the length `w(u, v)`. Afterwards every label is padded
/// on its outer side (`s`: front, `p`: back) with fresh symbols up to the
/// maximum weight.
///
/// Requires the `P4`-rule, and either the strict `P4`-rule or an acyclic graph.
pub fn achieve_labeling(g: &BipartiteGraph, w: &Decomposition) -> Result<(Labeling, AchieveTrace), ConstructError> {
    w.fits(g.edge_count())?;
    if !g.is_c4_free() {
        return Err(ConstructError::HasC4);
    }
    let checker = RuleChecker::new(g);
    if let Verdict::Violated(p) = checker.check(Rule::P4, w)? {
        return Err(ConstructError::P4RuleViolated(p));
    }
    if !checker.check(Rule::StrictP4, w)?.holds() && !g.is_forest() {
        return Err(ConstructError::NeitherStrictNorAcyclic);
    }

    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&e| (w.weight(e), e));

    let mut fresh = Fresh::default();
    let mut labels: Vec<Label> = vec![Vec::new(); g.vertex_count()];
    let mut trace = AchieveTrace::default();
    for edge in order {
        let Edge { s, p } = g.edge(edge);
        let (u, v) = (s, g.ns() + p);
        let have = labels[u].len() + labels[v].len();
        let weight = w.weight(edge) as usize;
        if weight < have {
            return Err(ConstructError::FillerUnderflow { edge });
        }
        let filler = fresh.take(weight - have);
        let mut after = labels[v].clone();
        after.extend_from_slice(&filler);
        after.extend_from_slice(&labels[u]);
        trace.steps.push(AchieveStep {
            edge,
            filler,
            before_s: core::mem::replace(&mut labels[u], after.clone()),
            before_p: core::mem::replace(&mut labels[v], after.clone()),
            after,
        });
    }

    let len = w.max_weight() as usize;
    for (id, l) in labels.iter_mut().enumerate() {
        let pad = fresh.take(len - l.len());
        match g.vertex_at(id).side {
            Side::S => {
                let mut front = pad;
                front.append(l);
                *l = front;
            }
            Side::P => l.extend(pad),
        }
    }
    trace.padded_len = len;
    Ok((Labeling::with_alphabet(len, fresh.0, labels)?, trace))
}

/// One biclique of one layer in the BM construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BmStep {
    pub layer: u32,
    pub members: Vec<Vertex>,
    pub symbol: Symbol,
    /// The edge the BM operation was applied to; `None` for a lone vertex.
    pub edge: Option<Edge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BmTrace {
    pub steps: Vec<BmStep>,
}

impl BmTrace {
    pub fn steps_in_layer(&self, layer: u32) -> impl Iterator<Item = &BmStep> {
        self.steps.iter().filter(move |s| s.layer == layer)
    }
}

/// An overlap labeling of length `2^k - 1` from a size-`k` HUB-rule decomposition.
///
/// Layer 1 gives each of its bicliques one fresh symbol. Each later layer
/// gives every biclique `B` a fresh symbol `a`: every member receives
/// `t(v) . a . t(u)` for the least edge `(u, v)` of `B`, and a lone vertex
/// gets `a` plus fresh padding on its outer side (`x . a . t(v)` for `s`).
pub fn bm_labeling(g: &BipartiteGraph, w: &Decomposition) -> Result<(Labeling, BmTrace), ConstructError> {
    if let Verdict::Violated(v) = decomposition::check_hub_rule(g, w)? {
        return Err(ConstructError::HubRuleViolated(v));
    }
    let mut fresh = Fresh::default();
    let mut trace = BmTrace::default();
    let mut labels: Vec<Label> = vec![Vec::new(); g.vertex_count()];
    for layer in 1..=w.size() {
        let lg = w.layer(g, layer);
        let mut next = labels.clone();
        for members in lg.components() {
            let a = fresh.next();
            let edge = if members.len() == 1 {
                // A lone vertex keeps `t(v)` on its inner side, then `a`, then
                // `|t(v)|` fresh symbols, so the length still doubles plus one.
                let v = members[0];
                let id = g.vertex_id(v);
                let old = &labels[id];
                let pad = fresh.take(old.len());
                next[id] = match v.side {
                    Side::S => pad.into_iter().chain([a]).chain(old.iter().copied()).collect(),
                    Side::P => old.iter().copied().chain([a]).chain(pad).collect(),
                };
                None
            } else {
                let u = members.iter().find(|x| x.side == Side::S).expect("biclique has an s-vertex").index;
                let v = *lg.neighbors(Vertex::s(u)).first().expect("biclique member has a neighbor");
                let mut l = labels[g.ns() + v].clone();
                l.push(a);
                l.extend_from_slice(&labels[u]);
                for m in &members {
                    next[g.vertex_id(*m)] = l.clone();
                }
                Some(Edge::new(u, v))
            };
            trace.steps.push(BmStep { layer, members, symbol: a, edge });
        }
        labels = next;
    }
    let len = (1usize << w.size()) - 1;
    Ok((Labeling::with_alphabet(len, fresh.0, labels)?, trace))
}

/// Weight each tree edge by its BFS level from a center: an edge between
/// levels `i - 1` and `i` gets weight `i`. The size equals the radius.
pub fn tree_radius_decomposition(t: &BipartiteGraph) -> Result<Decomposition, ConstructError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    let rc = t.radius_center()?;
    let dist = t.distances_from(rc.center);
    let weights = t
        .edges()
        .iter()
        .map(|e| dist[t.vertex_id(Vertex::s(e.s))].max(dist[t.vertex_id(Vertex::p(e.p))]) as u32)
        .collect();
    Ok(Decomposition::with_size(weights, rc.radius as u32)?)
}

/// Arc `(i, j)` becomes edge `(i_s, j_p)`.
pub fn phi(d: &Digraph) -> BipartiteGraph {
    let n = d.vertex_count();
    BipartiteGraph::new(n, n, d.arcs().iter().copied()).expect("arcs are in range")
}

/// Inverse of [`phi`] on balanced graphs.
pub fn psi(g: &BipartiteGraph) -> Result<Digraph, GraphError> {
    if !g.is_balanced() {
        return Err(GraphError::Unbalanced { ns: g.ns(), np: g.np() });
    }
    Digraph::new(g.ns(), g.edges().iter().map(|e| (e.s, e.p)))
}

/// From a bipartite overlap labeling of `g`, an injective overlap labeling of
/// `psi(g)` of length `2 len + 1`: vertex `i` gets `l(i_p) . c_i . l(i_s)` with
/// `c_i` a symbol of its own.
pub fn lift_to_digraph(g: &BipartiteGraph, l: &Labeling) -> Result<Labeling, ConstructError> {
    let d = psi(g)?;
    if !labeling::verify_bipartite(g, l)?.holds() {
        return Err(LabelingError::NotOverlapLabeling.into());
    }
    let n = d.vertex_count();
    let base = l.alphabet_size();
    let labels = (0..n)
        .map(|i| {
            let mut x = l.label(n + i).to_vec();
            x.push(base + i as Symbol);
            x.extend_from_slice(l.label(i));
            x
        })
        .collect();
    Ok(Labeling::with_alphabet(2 * l.len() + 1, base + n as Symbol, labels)?)
}

/// From an injective overlap labeling of `d`, an overlap labeling of `phi(d)`
/// one shorter: `i_s` drops the first symbol of `l(i)`, `i_p` the last.
pub fn project_to_bipartite(d: &Digraph, l: &Labeling) -> Result<Labeling, ConstructError> {
    if l.is_empty() {
        return Err(ConstructError::ZeroLength);
    }
    if d.arc_count() == 0 {
        return Err(ConstructError::NoArcs);
    }
    if !labeling::verify_digraph(d, l)?.holds() {
        return Err(LabelingError::NotOverlapLabeling.into());
    }
    let n = d.vertex_count();
    let s = (0..n).map(|i| l.label(i)[1..].to_vec());
    let p = (0..n).map(|i| l.label(i)[..l.len() - 1].to_vec());
    Ok(Labeling::with_alphabet(l.len() - 1, l.alphabet_size(), s.chain(p).collect())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{bipartite_decomposition, verify_bipartite, verify_digraph};

    #[test]
    fn achieve_on_three_vertex_path() {
        // u1 = s1, u2 = s2, v = p1.
        let g = BipartiteGraph::new(2, 1, [(0, 0), (1, 0)]).unwrap();
        let w = Decomposition::new(vec![1, 2]).unwrap();
        let (l, trace) = achieve_labeling(&g, &w).unwrap();
        assert_eq!(l.len(), 2);
        // a = 0, b = 1, pad for u1 = 2.
        assert_eq!(l.label(0), [2, 0]);
        assert_eq!(l.label(1), [0, 1]);
        assert_eq!(l.label(2), [0, 1]);
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[1].filler, [1]);
        assert!(verify_bipartite(&g, &l).unwrap().holds());
        assert_eq!(bipartite_decomposition(&g, &l).unwrap(), w);
    }

    #[test]
    fn achieve_single_edge() {
        let g = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let (l, _) = achieve_labeling(&g, &Decomposition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(l.labels(), [vec![0], vec![0]]);
    }

    #[test]
    fn achieve_preconditions() {
        let k = BipartiteGraph::complete(2, 2);
        assert_eq!(achieve_labeling(&k, &Decomposition::new(vec![1; 4]).unwrap()), Err(ConstructError::HasC4));
        let path = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let w = Decomposition::new(vec![4, 5, 3]).unwrap();
        assert!(matches!(achieve_labeling(&path, &w), Err(ConstructError::P4RuleViolated(_))));
        // C6 weighted 1,2,1,2,1,2: P4-rule holds with equality, cyclic.
        let c6 = BipartiteGraph::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]).unwrap();
        let w = Decomposition::from_edges(
            &c6,
            [
                (Edge::new(0, 0), 1),
                (Edge::new(1, 0), 2),
                (Edge::new(1, 1), 1),
                (Edge::new(2, 1), 2),
                (Edge::new(2, 2), 1),
                (Edge::new(0, 2), 2),
            ],
        )
        .unwrap();
        assert!(decomposition::check_p4_rule(&c6, &w).unwrap().holds());
        assert_eq!(achieve_labeling(&c6, &w), Err(ConstructError::NeitherStrictNorAcyclic));
    }

    #[test]
    fn bm_on_bicliques() {
        let k = BipartiteGraph::complete(3, 3);
        let (l, trace) = bm_labeling(&k, &Decomposition::new(vec![1; 9]).unwrap()).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.labels().iter().all(|x| x == &[0]));
        assert_eq!(trace.steps.len(), 1);

        let two = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let (l, _) = bm_labeling(&two, &Decomposition::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(l.labels(), [vec![0], vec![1], vec![0], vec![1]]);
        assert!(verify_bipartite(&two, &l).unwrap().holds());
    }

    #[test]
    fn bm_on_weighted_path() {
        let path = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let w = Decomposition::from_edges(&path, [(Edge::new(0, 0), 1), (Edge::new(1, 0), 2), (Edge::new(1, 1), 1)])
            .unwrap();
        let (l, _) = bm_labeling(&path, &w).unwrap();
        assert_eq!(l.len(), 3);
        assert!(verify_bipartite(&path, &l).unwrap().holds());
        assert!(matches!(
            bm_labeling(&path, &Decomposition::new(vec![1, 1, 1]).unwrap()),
            Err(ConstructError::HubRuleViolated(_))
        ));
    }

    #[test]
    fn bm_on_edgeless() {
        let g = BipartiteGraph::new(2, 2, []).unwrap();
        let (l, _) = bm_labeling(&g, &Decomposition::new(vec![]).unwrap()).unwrap();
        assert_eq!(l.len(), 0);
        assert!(verify_bipartite(&g, &l).unwrap().holds());
    }

    #[test]
    fn radius_decomposition_of_path() {
        // b = s1, a = p1, c = p2, d = s2: a-b, b-c, c-d.
        let g = BipartiteGraph::new(2, 2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        let w = tree_radius_decomposition(&g).unwrap();
        assert_eq!(w.size(), 2);
        assert_eq!(w.weight(g.edge_id(0, 0).unwrap()), 1);
        assert_eq!(w.weight(g.edge_id(0, 1).unwrap()), 1);
        assert_eq!(w.weight(g.edge_id(1, 1).unwrap()), 2);

        let star = BipartiteGraph::complete(1, 4);
        assert!(tree_radius_decomposition(&star).unwrap().weights().iter().all(|&x| x == 1));
        assert_eq!(
            tree_radius_decomposition(&BipartiteGraph::complete(2, 2)),
            Err(ConstructError::Graph(GraphError::NotATree))
        );
    }

    #[test]
    fn phi_psi() {
        let d = Digraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(phi(&d).edges(), [Edge::new(0, 0)]);
        let d = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(phi(&d).edges(), [Edge::new(0, 1)]);
        assert_eq!(psi(&phi(&d)).unwrap(), d);
        assert!(psi(&BipartiteGraph::new(2, 2, []).unwrap()).unwrap().arcs().is_empty());
        assert_eq!(psi(&BipartiteGraph::complete(1, 2)), Err(GraphError::Unbalanced { ns: 1, np: 2 }));
    }

    #[test]
    fn lift_and_project() {
        let k = BipartiteGraph::complete(2, 2);
        let l = Labeling::new(1, vec![vec![0]; 4]).unwrap();
        let lifted = lift_to_digraph(&k, &l).unwrap();
        assert_eq!(lifted.len(), 3);
        assert_eq!(lifted.label(0), [0, 1, 0]);
        assert!(verify_digraph(&psi(&k).unwrap(), &lifted).unwrap().holds());

        let none = BipartiteGraph::new(2, 2, []).unwrap();
        let l = Labeling::new(0, vec![vec![]; 4]).unwrap();
        let lifted = lift_to_digraph(&none, &l).unwrap();
        assert_eq!(lifted.labels(), [vec![0], vec![1]]);

        let bad = Labeling::new(1, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert!(lift_to_digraph(&k, &bad).is_err());

        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        let dl = Labeling::new(2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let pl = project_to_bipartite(&arc, &dl).unwrap();
        assert_eq!(pl.labels(), [vec![1], vec![2], vec![0], vec![1]]);
        assert!(verify_bipartite(&phi(&arc), &pl).unwrap().holds());

        let lp = Digraph::new(1, [(0, 0)]).unwrap();
        let pl = project_to_bipartite(&lp, &Labeling::new(2, vec![vec![0, 0]]).unwrap()).unwrap();
        assert_eq!(pl.labels(), [vec![0], vec![0]]);

        let arcless = Digraph::new(2, []).unwrap();
        let one = Labeling::new(1, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(project_to_bipartite(&arcless, &one), Err(ConstructError::NoArcs));
        let empty = Labeling::new(0, vec![vec![]]).unwrap();
        assert_eq!(project_to_bipartite(&Digraph::new(1, []).unwrap(), &empty), Err(ConstructError::ZeroLength));
    }
}
