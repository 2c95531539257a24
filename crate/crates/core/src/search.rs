//! Depth-first enumeration of edge weightings with incremental pruning.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::BipartiteGraph;

/// Caps the number of candidate evaluations an exhaustive search may spend.
///
/// One unit is charged each time a weight is tentatively placed on an edge.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 100_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub(crate) fn charge(&mut self) -> Result<(), BudgetExceeded> {
        if self.used >= self.limit {
            return Err(BudgetExceeded { limit: self.limit });
        }
        self.used += 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub limit: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "search budget of {} candidate evaluations exceeded", self.limit)
    }
}

impl core::error::Error for BudgetExceeded {}

/// Incremental state driven by [`first_weighting`].
pub(crate) trait Extension {
    /// `weights[edge]` has just been set. Return false to prune the subtree.
    fn push(&mut self, weights: &[u32], depth: usize, edge: usize) -> bool;
    /// Undo the matching `push`, including one that returned false.
    fn pop(&mut self, depth: usize, edge: usize);
    /// All edges are weighted; accept or reject the complete weighting.
    fn accept(&mut self, weights: &[u32]) -> bool;
}

/// Edge ids by descending endpoint-degree sum, ties by id.
pub(crate) fn degree_order(g: &BipartiteGraph) -> Vec<usize> {
    let deg_s: Vec<usize> = (0..g.ns()).map(|s| g.neighbors(crate::Vertex::s(s)).len()).collect();
    let deg_p: Vec<usize> = (0..g.np()).map(|p| g.neighbors(crate::Vertex::p(p)).len()).collect();
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&i| {
        let e = g.edge(i);
        (core::cmp::Reverse(deg_s[e.s] + deg_p[e.p]), i)
    });
    order
}

/// The first weighting in lexicographic order along `order` (weights tried in
/// increasing order within `lo..=hi`) that survives every `push` and `accept`.
pub(crate) fn first_weighting<X: Extension>(
    order: &[usize],
    edge_count: usize,
    lo: u32,
    hi: u32,
    ext: &mut X,
    budget: &mut Budget,
) -> Result<Option<Vec<u32>>, BudgetExceeded> {
    let mut weights = vec![0u32; edge_count];
    if dfs(order, 0, lo, hi, &mut weights, ext, budget)? {
        Ok(Some(weights))
    } else {
        Ok(None)
    }
}

fn dfs<X: Extension>(
    order: &[usize],
    depth: usize,
    lo: u32,
    hi: u32,
    weights: &mut [u32],
    ext: &mut X,
    budget: &mut Budget,
) -> Result<bool, BudgetExceeded> {
    if depth == order.len() {
        return Ok(ext.accept(weights));
    }
    let edge = order[depth];
    for w in lo..=hi {
        budget.charge()?;
        weights[edge] = w;
        let ok = ext.push(weights, depth, edge);
        if ok && dfs(order, depth + 1, lo, hi, weights, ext, budget)? {
            return Ok(true);
        }
        ext.pop(depth, edge);
    }
    weights[edge] = 0;
    Ok(false)
}
