//! Strings, overlaps, and the two labeling models.
//!
//! Characters are abstract [`Symbol`]s (`u32`), so alphabets are unbounded;
//! they become printable text only at I/O boundaries. A [`Labeling`] holds one
//! label per vertex, addressed by dense vertex id: for a bipartite graph that
//! is [`BipartiteGraph::vertex_id`] (`s`-vertices first), for a digraph the
//! vertex itself.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decomposition::Decomposition;
use crate::graph::{BipartiteGraph, Digraph, Side};
use crate::Verdict;

pub type Symbol = u32;
pub type Label = Vec<Symbol>;

/// Length of the shortest suffix of `x` that equals a prefix of `y`; 0 if none.
pub fn ov<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    let m = x.len().min(y.len());
    (1..=m).find(|&i| x[x.len() - i..] == y[..i]).unwrap_or(0)
}

pub fn prefix<T>(x: &[T], i: usize) -> &[T] {
    &x[..i]
}

pub fn suffix<T>(x: &[T], i: usize) -> &[T] {
    &x[x.len() - i..]
}

/// The affix of a label that faces the other part: the suffix of an
/// `s`-label, the prefix of a `p`-label.
pub fn inner<T>(x: &[T], side: Side, i: usize) -> &[T] {
    match side {
        Side::S => suffix(x, i),
        Side::P => prefix(x, i),
    }
}

/// The affix that faces away from the other part.
pub fn outer<T>(x: &[T], side: Side, i: usize) -> &[T] {
    match side {
        Side::S => prefix(x, i),
        Side::P => suffix(x, i),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelingError {
    NonUniformLength {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    SymbolOutsideAlphabet {
        vertex: usize,
        symbol: Symbol,
    },
    MissingAssignment {
        expected: usize,
        found: usize,
    },
    /// The labeling is not an overlap labeling of the graph.
    NotOverlapLabeling,
}

impl fmt::Display for LabelingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingError::NonUniformLength { vertex, expected, found } => {
                write!(f, "label of vertex {vertex} has length {found}, expected {expected}")
            }
            LabelingError::SymbolOutsideAlphabet { vertex, symbol } => {
                write!(f, "label of vertex {vertex} uses symbol {symbol} outside the alphabet")
            }
            LabelingError::MissingAssignment { expected, found } => {
                write!(f, "labeling assigns {found} vertices, graph has {expected}")
            }
            LabelingError::NotOverlapLabeling => f.write_str("labeling is not an overlap labeling"),
        }
    }
}

impl core::error::Error for LabelingError {}

/// Equal-length strings, one per vertex, over the alphabet `0..alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    len: usize,
    alphabet: u32,
    labels: Vec<Label>,
}

impl Labeling {
    /// The alphabet is taken to be `0..=max symbol`.
    pub fn new(len: usize, labels: Vec<Label>) -> Result<Self, LabelingError> {
        let alphabet = labels.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
        Self::with_alphabet(len, alphabet, labels)
    }

    pub fn with_alphabet(len: usize, alphabet: u32, labels: Vec<Label>) -> Result<Self, LabelingError> {
        for (vertex, l) in labels.iter().enumerate() {
            if l.len() != len {
                return Err(LabelingError::NonUniformLength { vertex, expected: len, found: l.len() });
            }
            if let Some(&symbol) = l.iter().find(|&&c| c >= alphabet) {
                return Err(LabelingError::SymbolOutsideAlphabet { vertex, symbol });
            }
        }
        Ok(Labeling { len, alphabet, labels })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> &[Symbol] {
        &self.labels[vertex]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn into_labels(self) -> Vec<Label> {
        self.labels
    }

    fn expect_vertices(&self, n: usize) -> Result<(), LabelingError> {
        if self.labels.len() != n {
            return Err(LabelingError::MissingAssignment { expected: n, found: self.labels.len() });
        }
        Ok(())
    }
}

/// Pairs of vertex ids carrying identical labels.
pub fn duplicate_labels(l: &Labeling) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..l.vertex_count() {
        for b in a + 1..l.vertex_count() {
            if l.label(a) == l.label(b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipartiteViolation {
    /// `(s, p)` is an edge but the labels do not overlap.
    MissingOverlap { s: usize, p: usize },
    /// `(s, p)` is not an edge but `s`'s label overlaps `p`'s by `overlap`.
    UnexpectedOverlap { s: usize, p: usize, overlap: usize },
}

/// Every `s`-to-`p` pair is an edge iff the `s`-label overlaps the `p`-label.
///
/// Only `s`-to-`p` overlaps matter; labels need not be distinct. All offending
/// pairs are reported.
pub fn verify_bipartite(g: &BipartiteGraph, l: &Labeling) -> Result<Verdict<Vec<BipartiteViolation>>, LabelingError> {
    l.expect_vertices(g.vertex_count())?;
    let mut violations = Vec::new();
    for s in 0..g.ns() {
        let x = l.label(s);
        for p in 0..g.np() {
            let o = ov(x, l.label(g.ns() + p));
            match (g.has_edge(s, p), o) {
                (true, 0) => violations.push(BipartiteViolation::MissingOverlap { s, p }),
                (false, o) if o > 0 => violations.push(BipartiteViolation::UnexpectedOverlap { s, p, overlap: o }),
                _ => {}
            }
        }
    }
    Ok(verdict(violations))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigraphViolation {
    DuplicateLabel {
        first: usize,
        second: usize,
    },
    /// `(from, to)` is an arc but the shortest overlap is 0 or the full length.
    MissingArc {
        from: usize,
        to: usize,
        overlap: usize,
    },
    /// `(from, to)` is not an arc but the labels properly overlap.
    UnexpectedArc {
        from: usize,
        to: usize,
        overlap: usize,
    },
}

/// Labels are pairwise distinct and every ordered pair `(u, v)`, loops
/// included, is an arc iff `0 < ov(u, v) < len`.
pub fn verify_digraph(d: &Digraph, l: &Labeling) -> Result<Verdict<Vec<DigraphViolation>>, LabelingError> {
    l.expect_vertices(d.vertex_count())?;
    let mut violations: Vec<DigraphViolation> = duplicate_labels(l)
        .into_iter()
        .map(|(first, second)| DigraphViolation::DuplicateLabel { first, second })
        .collect();
    for u in 0..d.vertex_count() {
        for v in 0..d.vertex_count() {
            let o = ov(l.label(u), l.label(v));
            let proper = o > 0 && o < l.len();
            match (d.has_arc(u, v), proper) {
                (true, false) => violations.push(DigraphViolation::MissingArc { from: u, to: v, overlap: o }),
                (false, true) => violations.push(DigraphViolation::UnexpectedArc { from: u, to: v, overlap: o }),
                _ => {}
            }
        }
    }
    Ok(verdict(violations))
}

fn verdict<T>(violations: Vec<T>) -> Verdict<Vec<T>> {
    if violations.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Violated(violations)
    }
}

/// The `l`-decomposition: each edge weighted by its overlap length.
pub fn bipartite_decomposition(g: &BipartiteGraph, l: &Labeling) -> Result<Decomposition, LabelingError> {
    if !verify_bipartite(g, l)?.holds() {
        return Err(LabelingError::NotOverlapLabeling);
    }
    let weights = g.edges().iter().map(|e| ov(l.label(e.s), l.label(g.ns() + e.p)) as u32).collect();
    Ok(Decomposition::with_size(weights, l.len() as u32).expect("overlaps are positive and at most len"))
}

/// The `l`-decomposition of a digraph labeling, indexed by arc id.
pub fn digraph_decomposition(d: &Digraph, l: &Labeling) -> Result<Decomposition, LabelingError> {
    if !verify_digraph(d, l)?.holds() {
        return Err(LabelingError::NotOverlapLabeling);
    }
    let weights = d.arcs().iter().map(|&(u, v)| ov(l.label(u), l.label(v)) as u32).collect();
    Ok(Decomposition::with_size(weights, l.len() as u32).expect("overlaps are positive and at most len"))
}

/// Bits needed to index an alphabet of `alphabet` symbols (`ceil(log2)`).
pub fn index_bits(alphabet: u32) -> usize {
    if alphabet <= 1 {
        0
    } else {
        (u32::BITS - (alphabet - 1).leading_zeros()) as usize
    }
}

/// Length of one binary block for an alphabet of `alphabet` symbols.
pub fn binary_block_len(alphabet: u32) -> usize {
    2 * index_bits(alphabet) + 3
}

/// One symbol as the block `1 1 0 b1 0 b2 0 ... bw 0`, most significant bit first.
pub fn binary_block(symbol: Symbol, alphabet: u32) -> Label {
    let w = index_bits(alphabet);
    let mut out = vec![1, 1, 0];
    for i in (0..w).rev() {
        out.push(symbol >> i & 1);
        out.push(0);
    }
    out
}

/// Rewrite a labeling over two symbols, block by block.
///
/// `11` occurs only at block starts and every block ends in `0`, so an
/// overlap of encoded labels must cover whole blocks: encoded overlaps are
/// exactly `block_len` times the original ones and both graph relations are
/// unchanged.
pub fn encode_binary(l: &Labeling) -> Labeling {
    let labels: Vec<Label> =
        l.labels().iter().map(|x| x.iter().flat_map(|&c| binary_block(c, l.alphabet_size())).collect()).collect();
    Labeling::with_alphabet(l.len() * binary_block_len(l.alphabet_size()), 2, labels)
        .expect("blocks have uniform length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;

    fn lab(len: usize, labels: &[&[u32]]) -> Labeling {
        Labeling::new(len, labels.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(ov(b"ab", b"ba"), 1);
        assert_eq!(ov(b"abc", b"xyz"), 0);
        assert_eq!(ov(b"ab", b"ab"), 2);
        assert_eq!(ov(b"aa", b"aa"), 1);
        assert_eq!(ov::<u8>(b"", b""), 0);
    }

    #[test]
    fn affixes() {
        let x = [1, 2, 3];
        assert_eq!(inner(&x, Side::S, 2), [2, 3]);
        assert_eq!(inner(&x, Side::P, 2), [1, 2]);
        assert_eq!(outer(&x, Side::S, 1), [1]);
        assert_eq!(outer(&x, Side::P, 1), [3]);
    }

    #[test]
    fn labeling_validation() {
        assert_eq!(
            Labeling::new(2, vec![vec![0, 1], vec![0]]),
            Err(LabelingError::NonUniformLength { vertex: 1, expected: 2, found: 1 })
        );
        assert_eq!(
            Labeling::with_alphabet(1, 1, vec![vec![1]]),
            Err(LabelingError::SymbolOutsideAlphabet { vertex: 0, symbol: 1 })
        );
    }

    #[test]
    fn bipartite_verifier() {
        let k = BipartiteGraph::complete(2, 3);
        assert!(verify_bipartite(&k, &lab(1, &[&[0u32][..]; 5])).unwrap().holds());

        let edge = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        assert!(verify_bipartite(&edge, &lab(2, &[&[0, 1], &[1, 0]])).unwrap().holds());

        // K_{2,2}, first p-label gets a fresh first character.
        let k = BipartiteGraph::complete(2, 2);
        let l = lab(1, &[&[0], &[0], &[1], &[0]]);
        assert_eq!(
            verify_bipartite(&k, &l).unwrap(),
            Verdict::Violated(vec![
                BipartiteViolation::MissingOverlap { s: 0, p: 0 },
                BipartiteViolation::MissingOverlap { s: 1, p: 0 },
            ])
        );
        assert_eq!(
            verify_bipartite(&k, &lab(1, &[&[0]])),
            Err(LabelingError::MissingAssignment { expected: 4, found: 1 })
        );
    }

    #[test]
    fn bipartite_ignores_p_to_s_overlaps() {
        // Edge s1-p1 only. p1's suffix matches s1's prefix, which is irrelevant.
        let g = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let l = lab(3, &[&[5, 1, 2], &[2, 3, 5]]);
        assert_eq!(ov(l.label(1), l.label(0)), 1);
        assert!(verify_bipartite(&g, &l).unwrap().holds());
    }

    #[test]
    fn empty_labeling_only_for_edgeless() {
        let none = BipartiteGraph::new(2, 2, []).unwrap();
        assert!(verify_bipartite(&none, &lab(0, &[&[][..]; 4])).unwrap().holds());
        let one = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        assert!(!verify_bipartite(&one, &lab(0, &[&[][..]; 2])).unwrap().holds());
    }

    #[test]
    fn digraph_verifier() {
        let loop1 = Digraph::new(1, [(0, 0)]).unwrap();
        assert!(verify_digraph(&loop1, &lab(2, &[&[0, 0]])).unwrap().holds());

        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(verify_digraph(&arc, &lab(2, &[&[0, 1], &[1, 2]])).unwrap().holds());

        let none = Digraph::new(2, []).unwrap();
        assert_eq!(
            verify_digraph(&none, &lab(1, &[&[0], &[0]])).unwrap(),
            Verdict::Violated(vec![DigraphViolation::DuplicateLabel { first: 0, second: 1 }])
        );
        // A full-length match is not a proper overlap.
        let l = lab(2, &[&[0, 1], &[0, 2]]);
        assert_eq!(
            verify_digraph(&arc, &l).unwrap(),
            Verdict::Violated(vec![DigraphViolation::MissingArc { from: 0, to: 1, overlap: 0 }])
        );
    }

    #[test]
    fn decompositions_from_labelings() {
        let k = BipartiteGraph::complete(2, 2);
        let w = bipartite_decomposition(&k, &lab(1, &[&[0u32][..]; 4])).unwrap();
        assert_eq!(w.weights(), [1, 1, 1, 1]);

        let edge = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let w = bipartite_decomposition(&edge, &lab(2, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(w.weights(), [1]);

        let bad = lab(1, &[&[0], &[0], &[1], &[0]]);
        assert_eq!(bipartite_decomposition(&k, &bad), Err(LabelingError::NotOverlapLabeling));

        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        let w = digraph_decomposition(&arc, &lab(2, &[&[0, 1], &[1, 2]])).unwrap();
        assert_eq!(w.weights(), [1]);
    }

    #[test]
    fn binary_blocks() {
        assert_eq!(index_bits(1), 0);
        assert_eq!(index_bits(2), 1);
        assert_eq!(index_bits(5), 3);
        assert_eq!(index_bits(8), 3);
        let l = lab(2, &[&[0, 1]]);
        assert_eq!(encode_binary(&l).label(0), [1, 1, 0, 0, 0, 1, 1, 0, 1, 0]);

        let all_a = lab(1, &[&[0u32][..]; 4]);
        let e = encode_binary(&all_a);
        assert_eq!(e.len(), 3);
        assert!(e.labels().iter().all(|x| x == &[1, 1, 0]));
        let k = BipartiteGraph::complete(2, 2);
        assert!(verify_bipartite(&k, &e).unwrap().holds());

        let empty = Labeling::new(0, vec![vec![], vec![]]).unwrap();
        let e = encode_binary(&empty);
        assert_eq!(e.len(), 0);
        assert!(e.labels().iter().all(|x| x.is_empty()));
    }
}
