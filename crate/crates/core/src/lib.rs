//! Overlap labelings of balanced bipartite graphs and digraphs.
//!
//! A labeling assigns every vertex a string of one common length. In the
//! bipartite model an `s`-vertex `u` and a `p`-vertex `v` are adjacent exactly
//! when a suffix of `u`'s string equals a prefix of `v`'s string. In the
//! digraph model there is an arc `u -> v` exactly when the shortest such
//! overlap is proper, and labels must be pairwise distinct. The smallest label
//! length admitting such a labeling is the graph's *readability*.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised as:
//!
//! - [`graph`]: graph types and structural predicates (induced `P4`s,
//!   bicliques, twins, radius, König edge coloring).
//! - [`labeling`]: string overlap, labeling verifiers, binary re-encoding.
//! - [`decomposition`]: edge weightings, the `P4`, strict `P4` and HUB rules,
//!   hub number, distinctness and minimum rule-respecting decompositions.
//! - [`construct`]: labelings built from decompositions and the
//!   digraph/bipartite transformations.
//! - [`families`]: Hadamard graphs, the radius trees, fixtures and seeded
//!   random graphs.
//! - [`oracle`]: exact achievability and readability by exhaustive search
//!   over forced position equalities.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod construct;
pub mod decomposition;
pub mod families;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod rng;
mod search;
mod uf;

pub use decomposition::Decomposition;
pub use graph::{BipartiteGraph, Digraph, Edge, Side, Vertex};
pub use labeling::{Label, Labeling, Symbol};
pub use search::{Budget, BudgetExceeded};

/// Outcome of a checked property: it holds, or it fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Violated(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}
