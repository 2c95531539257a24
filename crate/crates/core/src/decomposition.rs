//! Edge weightings and the rules an overlap labeling's weighting must obey.
//!
//! A decomposition of size `k` assigns each edge a weight in `1..=k`; the
//! weight-`i` edges form layer `G_i`. The `P4`-rule constrains weights along
//! every induced four-vertex path, the HUB-rule constrains the layers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{BipartiteGraph, Edge, InducedP4, Side, Vertex};
use crate::search::{degree_order, first_weighting, Extension};
use crate::{Budget, BudgetExceeded, Verdict};

/// Positive edge weights, indexed by the host graph's edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    weights: Vec<u32>,
    size: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionError {
    ZeroWeight {
        edge: usize,
    },
    WeightAboveSize {
        edge: usize,
        weight: u32,
        size: u32,
    },
    /// The weighting does not cover the host's edges one-to-one.
    Incomplete {
        expected: usize,
        found: usize,
    },
    NotAcyclic,
    HasC4,
    Budget(BudgetExceeded),
}

impl fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionError::ZeroWeight { edge } => write!(f, "edge {edge} has weight 0"),
            DecompositionError::WeightAboveSize { edge, weight, size } => {
                write!(f, "edge {edge} has weight {weight} above the size {size}")
            }
            DecompositionError::Incomplete { expected, found } => {
                write!(f, "weighting has {found} entries but the graph has {expected} edges")
            }
            DecompositionError::NotAcyclic => f.write_str("graph is not acyclic"),
            DecompositionError::HasC4 => f.write_str("graph contains a C4"),
            DecompositionError::Budget(b) => b.fmt(f),
        }
    }
}

impl core::error::Error for DecompositionError {}

impl From<BudgetExceeded> for DecompositionError {
    fn from(b: BudgetExceeded) -> Self {
        DecompositionError::Budget(b)
    }
}

impl Decomposition {
    /// Size is the largest weight (0 for an edgeless host).
    pub fn new(weights: Vec<u32>) -> Result<Self, DecompositionError> {
        let size = weights.iter().copied().max().unwrap_or(0);
        Self::with_size(weights, size)
    }

    pub fn with_size(weights: Vec<u32>, size: u32) -> Result<Self, DecompositionError> {
        for (edge, &weight) in weights.iter().enumerate() {
            if weight == 0 {
                return Err(DecompositionError::ZeroWeight { edge });
            }
            if weight > size {
                return Err(DecompositionError::WeightAboveSize { edge, weight, size });
            }
        }
        Ok(Decomposition { weights, size })
    }

    /// Weights given per edge; every edge of `g` must appear exactly once.
    pub fn from_edges(
        g: &BipartiteGraph,
        entries: impl IntoIterator<Item = (Edge, u32)>,
    ) -> Result<Self, DecompositionError> {
        let mut weights = vec![0u32; g.edge_count()];
        let mut found = 0;
        for (e, w) in entries {
            found += 1;
            let id = g.edge_id(e.s, e.p).ok_or(DecompositionError::Incomplete { expected: g.edge_count(), found })?;
            if weights[id] != 0 || w == 0 {
                return Err(if w == 0 {
                    DecompositionError::ZeroWeight { edge: id }
                } else {
                    DecompositionError::Incomplete { expected: g.edge_count(), found }
                });
            }
            weights[id] = w;
        }
        if found != g.edge_count() {
            return Err(DecompositionError::Incomplete { expected: g.edge_count(), found });
        }
        Decomposition::new(weights)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> u32 {
        self.weights[edge]
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `e -> 2 w(e) - 1`: turns any `P4`-rule weighting into a strict one.
    pub fn doubled_minus_one(&self) -> Decomposition {
        let weights = self.weights.iter().map(|&w| 2 * w - 1).collect();
        Decomposition { weights, size: (2 * self.size).saturating_sub(1) }
    }

    /// Check this weighting covers the `edge_count` edges of a host.
    pub fn fits(&self, edge_count: usize) -> Result<(), DecompositionError> {
        if self.weights.len() != edge_count {
            return Err(DecompositionError::Incomplete { expected: edge_count, found: self.weights.len() });
        }
        Ok(())
    }

    /// Edge ids of layer `i`.
    pub fn layer_edges(&self, i: u32) -> impl Iterator<Item = usize> + '_ {
        self.weights.iter().enumerate().filter(move |(_, &w)| w == i).map(|(e, _)| e)
    }

    pub fn layer(&self, g: &BipartiteGraph, i: u32) -> BipartiteGraph {
        g.edge_subgraph(self.layer_edges(i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    P4,
    StrictP4,
}

fn p4_ok(rule: Rule, a: u32, b: u32, c: u32) -> bool {
    if b < a || b < c {
        return true;
    }
    match rule {
        Rule::P4 => b >= a + c,
        Rule::StrictP4 => b > a + c,
    }
}

/// Precomputed induced `P4`s of one graph, reused across many weightings.
#[derive(Clone, Debug)]
pub struct RuleChecker {
    edges: usize,
    p4s: Vec<InducedP4>,
}

impl RuleChecker {
    pub fn new(g: &BipartiteGraph) -> Self {
        RuleChecker { edges: g.edge_count(), p4s: g.induced_p4s() }
    }

    pub fn induced_p4s(&self) -> &[InducedP4] {
        &self.p4s
    }

    pub fn check(&self, rule: Rule, w: &Decomposition) -> Result<Verdict<InducedP4>, DecompositionError> {
        w.fits(self.edges)?;
        let weights = w.weights();
        Ok(self
            .p4s
            .iter()
            .find(|p| !p4_ok(rule, weights[p.edges[0]], weights[p.edges[1]], weights[p.edges[2]]))
            .map_or(Verdict::Holds, |p| Verdict::Violated(*p)))
    }
}

/// On every induced `P4` `(e1, e2, e3)`: if `w(e2)` is the maximum then
/// `w(e2) >= w(e1) + w(e3)`.
pub fn check_p4_rule(g: &BipartiteGraph, w: &Decomposition) -> Result<Verdict<InducedP4>, DecompositionError> {
    RuleChecker::new(g).check(Rule::P4, w)
}

/// As [`check_p4_rule`] with strict inequality.
pub fn check_strict_p4_rule(g: &BipartiteGraph, w: &Decomposition) -> Result<Verdict<InducedP4>, DecompositionError> {
    RuleChecker::new(g).check(Rule::StrictP4, w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HubViolation {
    /// Layer `layer` contains this induced `P4` (edge ids refer to the host).
    LayerNotBicliques { layer: u32, path: InducedP4 },
    /// `u` and `v` are non-isolated twins in `layer` but not twins in `lower`.
    HierarchyBreach { layer: u32, lower: u32, u: Vertex, v: Vertex },
}

/// The hierarchical-union-of-bicliques rule: every layer is a disjoint union
/// of bicliques, and non-isolated twins of a layer are twins in every lower
/// layer.
pub fn check_hub_rule(g: &BipartiteGraph, w: &Decomposition) -> Result<Verdict<HubViolation>, DecompositionError> {
    w.fits(g.edge_count())?;
    let layers: Vec<BipartiteGraph> = (1..=w.size()).map(|i| w.layer(g, i)).collect();
    for (i, layer) in layers.iter().enumerate() {
        if let Some(mut path) = layer.find_induced_p4() {
            for e in &mut path.edges {
                let le = layer.edge(*e);
                *e = g.edge_id(le.s, le.p).expect("layer edge is a host edge");
            }
            return Ok(Verdict::Violated(HubViolation::LayerNotBicliques { layer: i as u32 + 1, path }));
        }
    }
    for (i, layer) in layers.iter().enumerate().skip(1) {
        for side in [Side::S, Side::P] {
            let n = if side == Side::S { g.ns() } else { g.np() };
            for a in 0..n {
                let u = Vertex { side, index: a };
                if layer.degree(u) == 0 {
                    continue;
                }
                for b in a + 1..n {
                    let v = Vertex { side, index: b };
                    if layer.neighbors(u) != layer.neighbors(v) {
                        continue;
                    }
                    if let Some(j) = (0..i).find(|&j| layers[j].neighbors(u) != layers[j].neighbors(v)) {
                        return Ok(Verdict::Violated(HubViolation::HierarchyBreach {
                            layer: i as u32 + 1,
                            lower: j as u32 + 1,
                            u,
                            v,
                        }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distinctness {
    pub value: usize,
    pub pair: (Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartTooSmall {
    pub side: Side,
}

impl fmt::Display for PartTooSmall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "part {:?} has fewer than two vertices", self.side)
    }
}

impl core::error::Error for PartTooSmall {}

/// `DT(u,v) = max(|N(u) \ N(v)|, |N(v) \ N(u)|)` for same-part `u`, `v`.
pub fn pair_distinctness(g: &BipartiteGraph, u: Vertex, v: Vertex) -> usize {
    g.exclusive_neighbor_count(u, v).max(g.exclusive_neighbor_count(v, u))
}

/// Minimum pair distinctness over all same-part pairs; ties go to the first
/// pair in vertex order.
pub fn distinctness(g: &BipartiteGraph) -> Result<Distinctness, PartTooSmall> {
    for (side, n) in [(Side::S, g.ns()), (Side::P, g.np())] {
        if n < 2 {
            return Err(PartTooSmall { side });
        }
    }
    let mut best: Option<Distinctness> = None;
    for (side, n) in [(Side::S, g.ns()), (Side::P, g.np())] {
        for a in 0..n {
            for b in a + 1..n {
                let (u, v) = (Vertex { side, index: a }, Vertex { side, index: b });
                let value = pair_distinctness(g, u, v);
                if best.as_ref().is_none_or(|d| value < d.value) {
                    best = Some(Distinctness { value, pair: (u, v) });
                }
            }
        }
    }
    Ok(best.expect("both parts have pairs"))
}

/// True iff every vertex has degree at most one.
pub fn is_matching(g: &BipartiteGraph) -> bool {
    g.max_degree() <= 1
}

/// For each search depth, the `P4`s whose last edge (along `order`) sits there.
fn p4_triggers(p4s: &[InducedP4], order: &[usize]) -> Vec<Vec<usize>> {
    let mut pos = vec![0usize; order.len()];
    for (i, &e) in order.iter().enumerate() {
        pos[e] = i;
    }
    let mut triggers = vec![Vec::new(); order.len()];
    for (i, p) in p4s.iter().enumerate() {
        let last = p.edges.iter().map(|&e| pos[e]).max().expect("three edges");
        triggers[last].push(i);
    }
    triggers
}

struct RuleSearch<'a> {
    rule: Rule,
    p4s: &'a [InducedP4],
    triggers: Vec<Vec<usize>>,
}

impl Extension for RuleSearch<'_> {
    fn push(&mut self, weights: &[u32], depth: usize, _edge: usize) -> bool {
        self.triggers[depth].iter().all(|&i| {
            let e = self.p4s[i].edges;
            p4_ok(self.rule, weights[e[0]], weights[e[1]], weights[e[2]])
        })
    }

    fn pop(&mut self, _: usize, _: usize) {}

    fn accept(&mut self, _: &[u32]) -> bool {
        true
    }
}

/// Smallest `k` admitting a size-`k` decomposition that satisfies `rule`,
/// with the first such weighting found.
///
/// `P4` mode requires an acyclic graph and strict mode a `C4`-free one, the
/// classes on which these minima bound readability.
pub fn min_rule_decomposition(
    g: &BipartiteGraph,
    rule: Rule,
    budget: &mut Budget,
) -> Result<(u32, Decomposition), DecompositionError> {
    match rule {
        Rule::P4 if !g.is_forest() => return Err(DecompositionError::NotAcyclic),
        Rule::StrictP4 if !g.is_c4_free() => return Err(DecompositionError::HasC4),
        _ => {}
    }
    min_rule_decomposition_unchecked(g, rule, budget)
}

/// [`min_rule_decomposition`] without the graph-class precondition.
pub fn min_rule_decomposition_unchecked(
    g: &BipartiteGraph,
    rule: Rule,
    budget: &mut Budget,
) -> Result<(u32, Decomposition), DecompositionError> {
    if g.edge_count() == 0 {
        return Ok((0, Decomposition::new(Vec::new())?));
    }
    let order = degree_order(g);
    let p4s = g.induced_p4s();
    let mut search = RuleSearch { rule, p4s: &p4s, triggers: p4_triggers(&p4s, &order) };
    // Distinct powers of two satisfy both rules, so some k succeeds.
    for k in 1.. {
        if let Some(w) = first_weighting(&order, g.edge_count(), 1, k, &mut search, budget)? {
            return Ok((k, Decomposition::with_size(w, k)?));
        }
    }
    unreachable!()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HubMode {
    Exact,
    /// `Δ(G)`, from a König edge coloring.
    UpperBound,
}

struct HubSearch<'a> {
    g: &'a BipartiteGraph,
}

impl HubSearch<'_> {
    fn weight_of(&self, weights: &[u32], s: usize, p: usize) -> Option<u32> {
        self.g.edge_id(s, p).map(|e| weights[e])
    }

    /// A three-edge path in layer `i` whose closing pair can never be a
    /// layer-`i` edge: either it is no edge at all or it already carries
    /// another weight.
    fn closes_badly(&self, weights: &[u32], i: u32, s: usize, p: usize) -> bool {
        match self.weight_of(weights, s, p) {
            None => true,
            Some(w) => w != 0 && w != i,
        }
    }
}

impl Extension for HubSearch<'_> {
    fn push(&mut self, weights: &[u32], _depth: usize, edge: usize) -> bool {
        let g = self.g;
        let Edge { s, p } = g.edge(edge);
        let i = weights[edge];
        let layer = |a: usize, b: usize| self.weight_of(weights, a, b) == Some(i);
        let ns = g.neighbors(Vertex::p(p));
        let np = g.neighbors(Vertex::s(s));
        // Edge in the middle of a layer path s' - p - s - p'.
        for &so in ns.iter().filter(|&&x| x != s && layer(x, p)) {
            for &po in np.iter().filter(|&&x| x != p && layer(s, x)) {
                if self.closes_badly(weights, i, so, po) {
                    return false;
                }
            }
        }
        // Edge at the end: s - p - s2 - p2, closing pair (s, p2).
        for &s2 in ns.iter().filter(|&&x| x != s && layer(x, p)) {
            for &p2 in g.neighbors(Vertex::s(s2)).iter().filter(|&&x| x != p && layer(s2, x)) {
                if self.closes_badly(weights, i, s, p2) {
                    return false;
                }
            }
        }
        // Edge at the end: p - s - p2 - s2, closing pair (s2, p).
        for &p2 in np.iter().filter(|&&x| x != p && layer(s, x)) {
            for &s2 in g.neighbors(Vertex::p(p2)).iter().filter(|&&x| x != s && layer(x, p2)) {
                if self.closes_badly(weights, i, s2, p) {
                    return false;
                }
            }
        }
        // Edge closing a path s - p' - s' - p that lies in another layer.
        for &po in np.iter().filter(|&&x| x != p) {
            let j = weights[g.edge_id(s, po).expect("neighbor edge")];
            if j == 0 || j == i {
                continue;
            }
            for &so in ns.iter().filter(|&&x| x != s) {
                if self.weight_of(weights, so, p) == Some(j) && self.weight_of(weights, so, po) == Some(j) {
                    return false;
                }
            }
        }
        true
    }

    fn pop(&mut self, _: usize, _: usize) {}

    fn accept(&mut self, weights: &[u32]) -> bool {
        let w = Decomposition::new(weights.to_vec()).expect("search weights are positive");
        check_hub_rule(self.g, &w).expect("weighting fits").holds()
    }
}

/// A minimum-size HUB-rule decomposition, found by exhaustive search.
pub fn min_hub_decomposition(g: &BipartiteGraph, budget: &mut Budget) -> Result<Decomposition, DecompositionError> {
    if g.edge_count() == 0 {
        return Decomposition::new(Vec::new());
    }
    let order = degree_order(g);
    let mut search = HubSearch { g };
    for k in 1..=g.max_degree() as u32 {
        if let Some(w) = first_weighting(&order, g.edge_count(), 1, k, &mut search, budget)? {
            return Decomposition::with_size(w, k);
        }
    }
    unreachable!("a König coloring is a HUB decomposition of size Δ")
}

/// Hub number: the minimum size of a HUB-rule decomposition. An edgeless
/// graph has hub number 0.
pub fn hub_number(g: &BipartiteGraph, mode: HubMode, budget: &mut Budget) -> Result<u32, DecompositionError> {
    match mode {
        HubMode::UpperBound => Ok(g.max_degree() as u32),
        HubMode::Exact => Ok(min_hub_decomposition(g, budget)?.size()),
    }
}
