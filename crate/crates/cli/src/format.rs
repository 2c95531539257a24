//! File formats: graphs, labelings, decompositions, fixture bundles, DOT.
//!
//! Vertex indices in files are 1-based. Bipartite vertices are named `s<i>`
//! and `p<i>`, digraph vertices `<i>`; edges and arcs are keyed `u-v`.
//! Reading accepts a fixture bundle or a command envelope wherever a plain
//! document is expected, so outputs can be fed straight back in.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use readability_core::families::{Expectations, Fixture};
use readability_core::graph::InducedP4;
use readability_core::{BipartiteGraph, Decomposition, Digraph, Labeling, Side, Symbol, Vertex};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphDoc {
    Bipartite(BipartiteGraph),
    Digraph(Digraph),
}

impl GraphDoc {
    pub fn kind(&self) -> &'static str {
        match self {
            GraphDoc::Bipartite(_) => "bipartite",
            GraphDoc::Digraph(_) => "digraph",
        }
    }

    pub fn bipartite(&self) -> Result<&BipartiteGraph> {
        match self {
            GraphDoc::Bipartite(g) => Ok(g),
            GraphDoc::Digraph(_) => bail!("expected a bipartite graph, got a digraph"),
        }
    }

    pub fn digraph(&self) -> Result<&Digraph> {
        match self {
            GraphDoc::Digraph(d) => Ok(d),
            GraphDoc::Bipartite(_) => bail!("expected a digraph, got a bipartite graph"),
        }
    }

    fn vertex_count(&self) -> usize {
        match self {
            GraphDoc::Bipartite(g) => g.vertex_count(),
            GraphDoc::Digraph(d) => d.vertex_count(),
        }
    }

    /// File name of dense vertex `id`.
    pub fn vertex_name(&self, id: usize) -> String {
        match self {
            GraphDoc::Bipartite(g) => g.vertex_at(id).to_string(),
            GraphDoc::Digraph(_) => (id + 1).to_string(),
        }
    }

    fn vertex_by_name(&self, name: &str) -> Result<usize> {
        match self {
            GraphDoc::Bipartite(g) => {
                let v = parse_vertex(name)?;
                ensure!(g.contains(v), "vertex {name} does not exist");
                Ok(g.vertex_id(v))
            }
            GraphDoc::Digraph(d) => {
                let i = parse_index(name)?;
                ensure!(i < d.vertex_count(), "vertex {name} does not exist");
                Ok(i)
            }
        }
    }

    /// File names of the endpoints of edge or arc `id`.
    pub fn edge_name(&self, id: usize) -> String {
        match self {
            GraphDoc::Bipartite(g) => edge_name(g, id),
            GraphDoc::Digraph(d) => {
                let (u, v) = d.arcs()[id];
                format!("{}-{}", u + 1, v + 1)
            }
        }
    }

    fn edge_by_name(&self, name: &str) -> Result<usize> {
        let (a, b) = name.split_once('-').ok_or_else(|| anyhow!("edge key {name:?} is not of the form u-v"))?;
        let id = match self {
            GraphDoc::Bipartite(g) => {
                let (u, v) = (parse_vertex(a)?, parse_vertex(b)?);
                let (s, p) = match (u.side, v.side) {
                    (Side::S, Side::P) => (u, v),
                    (Side::P, Side::S) => (v, u),
                    _ => bail!("edge key {name:?} joins vertices of one part"),
                };
                g.edge_id(s.index, p.index)
            }
            GraphDoc::Digraph(d) => d.arc_id(parse_index(a)?, parse_index(b)?),
        };
        id.ok_or_else(|| anyhow!("{name} is not an edge of the graph"))
    }

    fn edge_count(&self) -> usize {
        match self {
            GraphDoc::Bipartite(g) => g.edge_count(),
            GraphDoc::Digraph(d) => d.arc_count(),
        }
    }
}

pub fn edge_name(g: &BipartiteGraph, id: usize) -> String {
    let e = g.edge(id);
    format!("s{}-p{}", e.s + 1, e.p + 1)
}

fn parse_index(s: &str) -> Result<usize> {
    let i: usize = s.parse().with_context(|| format!("bad vertex index {s:?}"))?;
    ensure!(i >= 1, "vertex indices are 1-based, got {s:?}");
    Ok(i - 1)
}

pub fn parse_vertex(name: &str) -> Result<Vertex> {
    let side = match name.chars().next() {
        Some('s') => Side::S,
        Some('p') => Side::P,
        _ => bail!("bipartite vertex {name:?} must start with s or p"),
    };
    Ok(Vertex { side, index: parse_index(&name[1..])? })
}

/// Display character of symbol `i`: `a-z`, `A-Z`, `0-9`, then CJK ideographs.
pub fn symbol_char(i: Symbol) -> char {
    const SETS: [(u32, u32); 3] = [('a' as u32, 26), ('A' as u32, 26), ('0' as u32, 10)];
    let mut i = i;
    for (start, n) in SETS {
        if i < n {
            return char::from_u32(start + i).expect("ascii");
        }
        i -= n;
    }
    char::from_u32(0x4E00 + i).expect("symbol index within the CJK block")
}

/// Peel a command envelope or a fixture bundle down to the `field` part.
fn unwrap<'a>(v: &'a Value, field: &str) -> &'a Value {
    let mut v = v;
    if let Some(p) = v.get("payload").filter(|_| v.get("status").is_some()) {
        v = p;
    }
    v.get(field).filter(|x| x.is_object()).unwrap_or(v)
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| anyhow!("missing or non-integer field {key:?}"))
}

fn pairs(v: &Value, key: &str) -> Result<Vec<(usize, usize)>> {
    let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| anyhow!("missing array {key:?}"))?;
    arr.iter()
        .map(|e| {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| anyhow!("{key} entries must be [u, v]"))?;
            let idx = |x: &Value| -> Result<usize> {
                let i = x.as_u64().ok_or_else(|| anyhow!("{key} entries must be integers"))? as usize;
                ensure!(i >= 1, "vertex indices are 1-based");
                Ok(i - 1)
            };
            Ok((idx(&pair[0])?, idx(&pair[1])?))
        })
        .collect()
}

pub fn parse_graph(v: &Value) -> Result<GraphDoc> {
    let v = unwrap(v, "graph");
    match v.get("kind").and_then(Value::as_str) {
        Some("bipartite") => {
            let g = BipartiteGraph::new(usize_field(v, "ns")?, usize_field(v, "np")?, pairs(v, "edges")?)?;
            Ok(GraphDoc::Bipartite(g))
        }
        Some("digraph") => Ok(GraphDoc::Digraph(Digraph::new(usize_field(v, "n")?, pairs(v, "arcs")?)?)),
        Some(k) => bail!("unknown graph kind {k:?}"),
        None => bail!("graph document lacks a \"kind\" field"),
    }
}

pub fn graph_json(g: &BipartiteGraph) -> Value {
    let edges: Vec<Value> = g.edges().iter().map(|e| json!([e.s + 1, e.p + 1])).collect();
    json!({"kind": "bipartite", "ns": g.ns(), "np": g.np(), "edges": edges})
}

pub fn digraph_json(d: &Digraph) -> Value {
    let arcs: Vec<Value> = d.arcs().iter().map(|&(u, v)| json!([u + 1, v + 1])).collect();
    json!({"kind": "digraph", "n": d.vertex_count(), "arcs": arcs})
}

pub fn graph_doc_json(g: &GraphDoc) -> Value {
    match g {
        GraphDoc::Bipartite(g) => graph_json(g),
        GraphDoc::Digraph(d) => digraph_json(d),
    }
}

/// Labeling of `graph`. With an `"alphabet"` list, characters map to their
/// position in it; without, distinct characters are numbered in sorted order.
pub fn parse_labeling(v: &Value, graph: &GraphDoc) -> Result<Labeling> {
    let v = unwrap(v, "labeling");
    let map = v.get("labels").and_then(Value::as_object).ok_or_else(|| anyhow!("missing object \"labels\""))?;
    let mut index: BTreeMap<char, Symbol> = BTreeMap::new();
    let declared = v.get("alphabet").and_then(Value::as_array);
    if let Some(alpha) = declared {
        for (i, c) in alpha.iter().enumerate() {
            let s = c.as_str().ok_or_else(|| anyhow!("alphabet entries must be strings"))?;
            let mut chars = s.chars();
            let (Some(ch), None) = (chars.next(), chars.next()) else {
                bail!("alphabet entry {s:?} is not a single character");
            };
            ensure!(index.insert(ch, i as Symbol).is_none(), "alphabet repeats {ch:?}");
        }
    } else {
        let mut all: Vec<char> = map.values().filter_map(Value::as_str).flat_map(str::chars).collect();
        all.sort_unstable();
        all.dedup();
        index = all.into_iter().zip(0..).collect();
    }
    let n = graph.vertex_count();
    let mut labels: Vec<Option<Vec<Symbol>>> = vec![None; n];
    for (key, val) in map {
        let id = graph.vertex_by_name(key)?;
        let s = val.as_str().ok_or_else(|| anyhow!("label of {key} must be a string"))?;
        let label = s
            .chars()
            .map(|c| index.get(&c).copied().ok_or_else(|| anyhow!("{key} uses {c:?}, which is not in the alphabet")))
            .collect::<Result<Vec<_>>>()?;
        labels[id] = Some(label);
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(id, l)| l.ok_or_else(|| anyhow!("no label for vertex {}", graph.vertex_name(id))))
        .collect::<Result<Vec<_>>>()?;
    let len = match v.get("len") {
        Some(x) => x.as_u64().ok_or_else(|| anyhow!("\"len\" must be an integer"))? as usize,
        None => labels.first().map_or(0, Vec::len),
    };
    let alphabet = declared.map_or(index.len(), Vec::len) as Symbol;
    Ok(Labeling::with_alphabet(len, alphabet, labels)?)
}

pub fn label_string(label: &[Symbol]) -> String {
    label.iter().map(|&c| symbol_char(c)).collect()
}

pub fn labeling_json(l: &Labeling, graph: &GraphDoc) -> Value {
    let alphabet: Vec<Value> = (0..l.alphabet_size()).map(|i| Value::String(symbol_char(i).to_string())).collect();
    let labels: Map<String, Value> =
        (0..l.vertex_count()).map(|id| (graph.vertex_name(id), Value::String(label_string(l.label(id))))).collect();
    json!({"len": l.len(), "alphabet": alphabet, "labels": labels})
}

pub fn parse_decomposition(v: &Value, graph: &GraphDoc) -> Result<Decomposition> {
    let v = unwrap(v, "decomposition");
    let map = v.get("weights").and_then(Value::as_object).ok_or_else(|| anyhow!("missing object \"weights\""))?;
    let mut weights = vec![0u32; graph.edge_count()];
    for (key, w) in map {
        let id = graph.edge_by_name(key)?;
        let w = w.as_u64().filter(|&w| w >= 1 && w <= u32::MAX as u64);
        weights[id] = w.ok_or_else(|| anyhow!("weight of {key} must be a positive integer"))? as u32;
    }
    if let Some(id) = weights.iter().position(|&w| w == 0) {
        bail!("no weight for edge {}", graph.edge_name(id));
    }
    Ok(match v.get("size").and_then(Value::as_u64) {
        Some(size) => Decomposition::with_size(weights, size as u32)?,
        None => Decomposition::new(weights)?,
    })
}

pub fn decomposition_json(w: &Decomposition, graph: &GraphDoc) -> Value {
    let weights: Map<String, Value> = (0..w.len()).map(|id| (graph.edge_name(id), json!(w.weight(id)))).collect();
    json!({"size": w.size(), "weights": weights})
}

fn expectations_json(e: &Expectations) -> Value {
    let mut m = Map::new();
    for (key, val) in
        [("p4", e.p4_rule), ("strict-p4", e.strict_p4_rule), ("hub", e.hub_rule), ("achievable", e.achievable)]
    {
        if let Some(b) = val {
            m.insert(key.into(), Value::Bool(b));
        }
    }
    Value::Object(m)
}

pub fn fixture_json(f: &Fixture) -> Value {
    let doc = GraphDoc::Bipartite(f.graph.clone());
    json!({
        "name": f.name.as_str(),
        "graph": graph_json(&f.graph),
        "decomposition": decomposition_json(&f.decomposition, &doc),
        "expected": expectations_json(&f.expected),
    })
}

pub fn p4_json(g: &BipartiteGraph, p: &InducedP4, w: Option<&Decomposition>) -> Value {
    let mut out = json!({
        "vertices": p.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "edges": p.edges.iter().map(|&e| edge_name(g, e)).collect::<Vec<_>>(),
    });
    if let Some(w) = w {
        out["weights"] = json!(p.edges.iter().map(|&e| w.weight(e)).collect::<Vec<_>>());
    }
    out
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> String {
    // serde_json maps are ordered, so serialisation is already canonical.
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, canonical(v)).with_context(|| format!("writing {}", path.display()))
}

pub fn dot(graph: &GraphDoc, w: Option<&Decomposition>) -> String {
    let mut out = String::new();
    let label = |id: usize| w.map(|w| format!(" [label=\"{}\"]", w.weight(id))).unwrap_or_default();
    match graph {
        GraphDoc::Bipartite(g) => {
            out.push_str("graph G {\n  rankdir=LR;\n");
            for v in g.vertices() {
                let shape = if v.side == Side::S { "box" } else { "ellipse" };
                let _ = writeln!(out, "  {v} [shape={shape}];");
            }
            for (id, e) in g.edges().iter().enumerate() {
                let _ = writeln!(out, "  s{} -- p{}{};", e.s + 1, e.p + 1, label(id));
            }
        }
        GraphDoc::Digraph(d) => {
            out.push_str("digraph G {\n");
            for i in 0..d.vertex_count() {
                let _ = writeln!(out, "  {};", i + 1);
            }
            for (id, &(u, v)) in d.arcs().iter().enumerate() {
                let _ = writeln!(out, "  {} -> {}{};", u + 1, v + 1, label(id));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_names() {
        assert_eq!(symbol_char(0), 'a');
        assert_eq!(symbol_char(26), 'A');
        assert_eq!(symbol_char(61), '9');
        assert_eq!(symbol_char(62), '\u{4E00}');
    }

    #[test]
    fn graph_round_trip() {
        let v = json!({"kind": "bipartite", "ns": 2, "np": 1, "edges": [[2, 1], [1, 1]]});
        let g = parse_graph(&v).unwrap();
        let back = graph_doc_json(&g);
        assert_eq!(back["edges"], json!([[1, 1], [2, 1]]));
        assert_eq!(parse_graph(&back).unwrap(), g);
        assert!(parse_graph(&json!({"kind": "bipartite", "ns": 1, "np": 1, "edges": [[0, 1]]})).is_err());
        assert!(parse_graph(&json!({"kind": "tree"})).is_err());
    }

    #[test]
    fn labeling_and_decomposition_round_trip() {
        let g = parse_graph(&json!({"kind": "bipartite", "ns": 2, "np": 1, "edges": [[1, 1], [2, 1]]})).unwrap();
        let l = parse_labeling(&json!({"labels": {"s1": "ca", "s2": "ab", "p1": "ab"}}), &g).unwrap();
        assert_eq!(l.labels(), [vec![2, 0], vec![0, 1], vec![0, 1]]);
        let out = labeling_json(&l, &g);
        assert_eq!(out["labels"]["s1"], "ca");
        assert_eq!(parse_labeling(&out, &g).unwrap(), l);
        let w = parse_decomposition(&json!({"weights": {"s1-p1": 1, "p1-s2": 2}}), &g).unwrap();
        assert_eq!(w.weights(), [1, 2]);
        assert_eq!(parse_decomposition(&decomposition_json(&w, &g), &g).unwrap(), w);
        assert!(parse_decomposition(&json!({"weights": {"s1-p1": 1}}), &g).is_err());
    }

    #[test]
    fn digraph_keys() {
        let d = parse_graph(&json!({"kind": "digraph", "n": 2, "arcs": [[1, 2]]})).unwrap();
        let l = parse_labeling(&json!({"alphabet": ["a", "b", "c"], "labels": {"1": "ab", "2": "bc"}}), &d).unwrap();
        assert_eq!(l.alphabet_size(), 3);
        let w = parse_decomposition(&json!({"weights": {"1-2": 1}}), &d).unwrap();
        assert_eq!(decomposition_json(&w, &d)["weights"]["1-2"], 1);
        assert!(dot(&d, Some(&w)).contains("1 -> 2 [label=\"1\"]"));
    }
}
