//! Shared corpus and brute-force helpers for the integration tests.
#![allow(dead_code)]

use readability_core::families::{
    build_hadamard, build_radius_tree, load_fixture, sample_random_bipartite, FixtureName,
};
use readability_core::labeling::ov;
use readability_core::BipartiteGraph;

/// Every graph with parts of sizes `ns` and `np`, by edge mask (bit `s * np + p`).
pub fn all_graphs(ns: usize, np: usize) -> impl Iterator<Item = (u32, BipartiteGraph)> {
    (0u32..1 << (ns * np)).map(move |mask| {
        let edges = (0..ns * np).filter(|b| mask >> b & 1 == 1).map(|b| (b / np, b % np));
        (mask, BipartiteGraph::new(ns, np, edges).unwrap())
    })
}

/// Calls `f` on every restricted growth string of length `n`, i.e. every
/// assignment of symbols to `n` positions up to renaming.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[u32])) {
    fn go(buf: &mut Vec<u32>, n: usize, next: u32, f: &mut impl FnMut(&[u32])) {
        if buf.len() == n {
            f(buf);
            return;
        }
        for c in 0..=next {
            buf.push(c);
            go(buf, n, next.max(c + 1), f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, 0, &mut f);
}

/// Overlap relation of vertex-major labels of `len` symbols: mask of s->p
/// overlaps and the overlap lengths, `s`-labels first.
pub fn bipartite_view(flat: &[u32], ns: usize, np: usize, len: usize) -> (u32, Vec<usize>) {
    let label = |v: usize| &flat[v * len..(v + 1) * len];
    let mut mask = 0;
    let mut weights = Vec::new();
    for s in 0..ns {
        for p in 0..np {
            let o = ov(label(s), label(ns + p));
            if o > 0 {
                mask |= 1 << (s * np + p);
                weights.push(o);
            }
        }
    }
    (mask, weights)
}

/// Arc mask (bit `u * n + v`) of an injective proper-overlap labeling, or
/// `None` if two labels coincide.
pub fn digraph_view(flat: &[u32], n: usize, len: usize) -> Option<u32> {
    let label = |v: usize| &flat[v * len..(v + 1) * len];
    let mut mask = 0;
    for u in 0..n {
        for v in 0..n {
            if u < v && label(u) == label(v) {
                return None;
            }
            let o = ov(label(u), label(v));
            if o > 0 && o < len {
                mask |= 1 << (u * n + v);
            }
        }
    }
    Some(mask)
}

pub fn cycle(n: usize) -> BipartiteGraph {
    BipartiteGraph::new(n, n, (0..n).flat_map(|i| [(i, i), (i, (i + 1) % n)])).unwrap()
}

pub fn path(edges: usize) -> BipartiteGraph {
    // s0 p0 s1 p1 ...
    let es = (0..edges).map(|i| if i % 2 == 0 { (i / 2, i / 2) } else { (i / 2 + 1, i / 2) });
    BipartiteGraph::new(edges / 2 + 1, edges.div_ceil(2), es).unwrap()
}

/// Small named graphs plus seeded samples, used wherever a "corpus" is needed.
pub fn corpus() -> Vec<BipartiteGraph> {
    let mut out: Vec<BipartiteGraph> = Vec::new();
    out.extend(all_graphs(2, 2).map(|(_, g)| g));
    out.extend(all_graphs(2, 3).map(|(_, g)| g));
    out.extend([path(1), path(3), path(5), cycle(2), cycle(3), cycle(4)]);
    out.push(BipartiteGraph::complete(3, 3));
    out.push(BipartiteGraph::complete(1, 4));
    out.push(build_hadamard(2).unwrap());
    out.push(build_hadamard(3).unwrap());
    for i in 0..=3 {
        out.push(build_radius_tree(i).unwrap().0);
    }
    for name in FixtureName::ALL {
        out.push(load_fixture(name).graph);
    }
    for seed in 0..40 {
        out.push(sample_random_bipartite(3 + (seed as usize % 2), 0.45, seed));
    }
    out
}
