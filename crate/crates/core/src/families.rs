//! Named graph families, fixed counterexample fixtures, and seeded samples.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decomposition::Decomposition;
use crate::graph::{BipartiteGraph, Edge, Vertex};
use crate::rng::Lcg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    OutOfRange { param: &'static str, value: usize, max: usize },
    UnknownFixture,
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::OutOfRange { param, value, max } => {
                write!(f, "{param} = {value} is out of range (at most {max})")
            }
            FamilyError::UnknownFixture => f.write_str("unknown fixture (expected c6_paper, fig1 or p4_453)"),
        }
    }
}

impl core::error::Error for FamilyError {}

pub const MAX_HADAMARD_K: usize = 12;
pub const MAX_RADIUS_TREE_I: usize = 6;

/// `H_k`: both parts are the nonzero `k`-bit vectors, adjacent when their
/// inner product is odd. Vertex index `i` stands for the vector with binary
/// value `i + 1`.
pub fn build_hadamard(k: usize) -> Result<BipartiteGraph, FamilyError> {
    if k == 0 || k > MAX_HADAMARD_K {
        return Err(FamilyError::OutOfRange { param: "k", value: k, max: MAX_HADAMARD_K });
    }
    let n = (1usize << k) - 1;
    let edges =
        (0..n).flat_map(|a| (0..n).filter(move |&b| ((a + 1) & (b + 1)).count_ones() % 2 == 1).map(move |b| (a, b)));
    Ok(BipartiteGraph::new(n, n, edges).expect("vector indices are in range"))
}

/// Undirected edges of `T_i` on `0..n`, rooted at 0.
fn radius_tree_edges(i: usize) -> (usize, Vec<(usize, usize)>) {
    if i == 0 {
        return (1, Vec::new());
    }
    let (m, sub) = radius_tree_edges(i - 1);
    let mut edges = Vec::with_capacity(i * (sub.len() + 1));
    for copy in 0..i {
        let offset = 1 + copy * m;
        edges.push((0, offset));
        edges.extend(sub.iter().map(|&(a, b)| (a + offset, b + offset)));
    }
    (1 + i * m, edges)
}

/// The tree `T_i` and its root `v_i`: `T_0` is one vertex, `T_i` joins a new
/// root to the roots of `i` copies of `T_{i-1}`.
///
/// Vertices at even depth form the `s`-part (the root is `s1`).
pub fn build_radius_tree(i: usize) -> Result<(BipartiteGraph, Vertex), FamilyError> {
    if i > MAX_RADIUS_TREE_I {
        return Err(FamilyError::OutOfRange { param: "i", value: i, max: MAX_RADIUS_TREE_I });
    }
    let (n, edges) = radius_tree_edges(i);
    // Edges always point away from the root, so depths fill in order.
    let mut depth = vec![0usize; n];
    for &(a, b) in &edges {
        depth[b] = depth[a] + 1;
    }
    let mut index = vec![0usize; n];
    let (mut ns, mut np) = (0, 0);
    for v in 0..n {
        if depth[v] % 2 == 0 {
            index[v] = ns;
            ns += 1;
        } else {
            index[v] = np;
            np += 1;
        }
    }
    let bip = edges.iter().map(|&(a, b)| if depth[a] % 2 == 0 { (index[a], index[b]) } else { (index[b], index[a]) });
    let g = BipartiteGraph::new(ns, np, bip).expect("tree edges join opposite parities");
    Ok((g, Vertex::s(0)))
}

/// The counterexamples shipped as fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureName {
    /// `C6` weighted 2, 4, 2, 2, 3, 1 around the cycle.
    C6Paper,
    /// The six-vertex graph with a `C4` whose weighting is strict yet unachievable.
    Fig1,
    /// `P4` weighted 4, 5, 3.
    P4_453,
}

impl FixtureName {
    pub const ALL: [FixtureName; 3] = [FixtureName::C6Paper, FixtureName::Fig1, FixtureName::P4_453];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::C6Paper => "c6_paper",
            FixtureName::Fig1 => "fig1",
            FixtureName::P4_453 => "p4_453",
        }
    }
}

impl core::str::FromStr for FixtureName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureName::ALL.into_iter().find(|f| f.as_str() == s).ok_or(FamilyError::UnknownFixture)
    }
}

/// Expected verdicts; `None` where the fixture makes no claim.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub p4_rule: Option<bool>,
    pub strict_p4_rule: Option<bool>,
    pub hub_rule: Option<bool>,
    pub achievable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: FixtureName,
    pub graph: BipartiteGraph,
    pub decomposition: Decomposition,
    pub expected: Expectations,
}

fn weighted(ns: usize, np: usize, entries: &[((usize, usize), u32)]) -> (BipartiteGraph, Decomposition) {
    let g = BipartiteGraph::new(ns, np, entries.iter().map(|&(e, _)| e)).expect("fixture edges");
    let w = Decomposition::from_edges(&g, entries.iter().map(|&((s, p), w)| (Edge::new(s, p), w)))
        .expect("fixture weights");
    (g, w)
}

pub fn load_fixture(name: FixtureName) -> Fixture {
    let (graph, decomposition, expected) = match name {
        FixtureName::C6Paper => {
            // Cycle s1 p1 s2 p2 s3 p3.
            let (g, w) =
                weighted(3, 3, &[((0, 0), 2), ((1, 0), 4), ((1, 1), 2), ((2, 1), 2), ((2, 2), 3), ((0, 2), 1)]);
            let e = Expectations { p4_rule: Some(true), achievable: Some(false), ..Default::default() };
            (g, w, e)
        }
        FixtureName::Fig1 => {
            // Drawn vertices 1, 3, 5 are s1..s3; 2, 4, 6 are p1..p3.
            let (g, w) =
                weighted(3, 3, &[((0, 0), 4), ((1, 0), 3), ((1, 1), 1), ((1, 2), 2), ((2, 1), 1), ((0, 1), 3)]);
            let e = Expectations { strict_p4_rule: Some(true), achievable: Some(false), ..Default::default() };
            (g, w, e)
        }
        FixtureName::P4_453 => {
            let (g, w) = weighted(2, 2, &[((0, 0), 4), ((1, 0), 5), ((1, 1), 3)]);
            let e = Expectations {
                hub_rule: Some(true),
                p4_rule: Some(false),
                achievable: Some(false),
                ..Default::default()
            };
            (g, w, e)
        }
    };
    Fixture { name, graph, decomposition, expected }
}

/// Each of the `ns * np` pairs, `s`-major, becomes an edge when the next
/// [`Lcg::next_f64`] draw is below `p`.
pub fn sample_bipartite(rng: &mut Lcg, ns: usize, np: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for s in 0..ns {
        for q in 0..np {
            if rng.chance(p) {
                edges.push((s, q));
            }
        }
    }
    BipartiteGraph::new(ns, np, edges).expect("sampled edges are in range")
}

/// A balanced `n x n` sample from a fresh generator seeded with `seed`.
pub fn sample_random_bipartite(n: usize, p: f64, seed: u64) -> BipartiteGraph {
    sample_bipartite(&mut Lcg::new(seed), n, n, p)
}
