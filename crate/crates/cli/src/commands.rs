//! Command implementations. Each returns a [`CommandResult`]; only `main`
//! prints and exits.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use readability_core::construct::{
    achieve_labeling, bm_labeling, lift_to_digraph, phi, project_to_bipartite, psi, tree_radius_decomposition,
    AchieveTrace, BmTrace,
};
use readability_core::decomposition::{
    check_hub_rule, distinctness, hub_number, min_rule_decomposition, HubMode, HubViolation, Rule, RuleChecker,
};
use readability_core::families::{
    build_hadamard, build_radius_tree, load_fixture, sample_bipartite, sample_random_bipartite, FixtureName,
};
use readability_core::labeling::{
    duplicate_labels, encode_binary, verify_bipartite, verify_digraph, BipartiteViolation, DigraphViolation,
};
use readability_core::oracle::{
    oracle_achieves, readability_bipartite, readability_digraph, Achievability, Refutation,
};
use readability_core::rng::Lcg;
use readability_core::{BipartiteGraph, Budget, Decomposition, Labeling, Vertex};
use serde_json::{json, Map, Value};

use crate::format::{self, GraphDoc};
use crate::{Check, Cli, Command, Experiment, Family, HubModeArg, Method, Model, Op, Query, RuleArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult { status: Status::Ok, payload, diagnostics: Vec::new() }
    }

    fn checked(holds: bool, payload: Value) -> Self {
        let status = if holds { Status::Ok } else { Status::Violation };
        CommandResult { status, payload, diagnostics: Vec::new() }
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.diagnostics.push(line.into());
        self
    }

    pub fn envelope(&self) -> Value {
        json!({"status": self.status.as_str(), "payload": self.payload, "diagnostics": self.diagnostics})
    }
}

pub fn run(cli: Cli) -> CommandResult {
    let out = output_path(&cli.command);
    match dispatch(cli.command) {
        Ok(res) => match out.map(|p| format::write_json(&p, &res.payload)).transpose() {
            Ok(_) => res,
            Err(e) => failure(e),
        },
        Err(e) => failure(e),
    }
}

fn failure(e: anyhow::Error) -> CommandResult {
    CommandResult { status: Status::Error, payload: Value::Null, diagnostics: vec![format!("{e:#}")] }
}

fn output_path(c: &Command) -> Option<PathBuf> {
    match c {
        Command::Gen { out, .. }
        | Command::Verify { out, .. }
        | Command::Analyze { out, .. }
        | Command::Construct { out, .. }
        | Command::Transform { out, .. }
        | Command::Oracle { out, .. }
        | Command::Encode { out, .. } => out.out.clone(),
        Command::Experiment { kind: Experiment::Counting { out, .. } } => out.out.clone(),
    }
}

fn dispatch(c: Command) -> Result<CommandResult> {
    match c {
        Command::Gen { family, dot, .. } => gen(family, dot.as_deref()),
        Command::Verify { graph, labeling, model, .. } => verify(&graph, &labeling, model),
        Command::Analyze { graph, decomposition, checks, rule, hub_mode, budget, .. } => {
            analyze(&graph, decomposition.as_deref(), &checks, rule, hub_mode, budget.budget)
        }
        Command::Construct { graph, decomposition, method, trace, .. } => {
            construct(&graph, decomposition.as_deref(), method, trace.as_deref())
        }
        Command::Transform { op, graph, labeling, dot, .. } => {
            transform(op, &graph, labeling.as_deref(), dot.as_deref())
        }
        Command::Oracle { query, graph, decomposition, budget, jobs, .. } => {
            oracle(query, &graph, decomposition.as_deref(), budget.budget, jobs.jobs)
        }
        Command::Encode { graph, labeling, .. } => encode(&graph, &labeling),
        Command::Experiment { kind: Experiment::Counting { n, samples, seed, p, budget, jobs, .. } } => {
            counting(n, samples, seed, p, budget.budget, jobs.jobs)
        }
    }
}

fn load_graph(path: &Path) -> Result<GraphDoc> {
    format::parse_graph(&format::read_json(path)?)
}

fn load_decomposition(graph_path: &Path, path: Option<&Path>, g: &GraphDoc) -> Result<Decomposition> {
    let v = format::read_json(path.unwrap_or(graph_path))?;
    let w = format::parse_decomposition(&v, g);
    if path.is_none() {
        return w.context("no --decomposition given and the graph file carries none");
    }
    w
}

fn load_labeling(path: &Path, g: &GraphDoc) -> Result<Labeling> {
    format::parse_labeling(&format::read_json(path)?, g)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        bail!("probability {p} is outside [0, 1]");
    }
    Ok(())
}

fn gen(family: Family, dot: Option<&Path>) -> Result<CommandResult> {
    let (payload, doc, w) = match family {
        Family::Hadamard { k } => {
            let g = build_hadamard(k)?;
            (format::graph_json(&g), GraphDoc::Bipartite(g), None)
        }
        Family::RadiusTree { i } => {
            let (g, _) = build_radius_tree(i)?;
            (format::graph_json(&g), GraphDoc::Bipartite(g), None)
        }
        Family::Random { n, p, seed } => {
            check_probability(p)?;
            let g = sample_random_bipartite(n, p, seed);
            (format::graph_json(&g), GraphDoc::Bipartite(g), None)
        }
        Family::Fixture { name } => {
            let f = load_fixture(name.parse::<FixtureName>()?);
            (format::fixture_json(&f), GraphDoc::Bipartite(f.graph.clone()), Some(f.decomposition))
        }
    };
    if let Some(path) = dot {
        std::fs::write(path, format::dot(&doc, w.as_ref())).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(CommandResult::ok(payload))
}

fn bipartite_violation_json(v: &BipartiteViolation) -> Value {
    let name = |s: usize, p: usize| (Vertex::s(s).to_string(), Vertex::p(p).to_string());
    match *v {
        BipartiteViolation::MissingOverlap { s, p } => {
            let (s, p) = name(s, p);
            json!({"kind": "missing-overlap", "s": s, "p": p})
        }
        BipartiteViolation::UnexpectedOverlap { s, p, overlap } => {
            let (s, p) = name(s, p);
            json!({"kind": "unexpected-overlap", "s": s, "p": p, "overlap": overlap})
        }
    }
}

fn digraph_violation_json(v: &DigraphViolation) -> Value {
    match *v {
        DigraphViolation::DuplicateLabel { first, second } => {
            json!({"kind": "duplicate-label", "vertices": [first + 1, second + 1]})
        }
        DigraphViolation::MissingArc { from, to, overlap } => {
            json!({"kind": "missing-arc", "arc": [from + 1, to + 1], "overlap": overlap})
        }
        DigraphViolation::UnexpectedArc { from, to, overlap } => {
            json!({"kind": "unexpected-arc", "arc": [from + 1, to + 1], "overlap": overlap})
        }
    }
}

fn verify(graph: &Path, labeling: &Path, model: Model) -> Result<CommandResult> {
    let g = load_graph(graph)?;
    let l = load_labeling(labeling, &g)?;
    match model {
        Model::Bipartite => {
            let bg = g.bipartite().context("--model bipartite")?;
            let verdict = verify_bipartite(bg, &l)?;
            let violations: Vec<Value> =
                verdict.witness().into_iter().flatten().map(bipartite_violation_json).collect();
            let mut res = CommandResult::checked(
                verdict.holds(),
                json!({"model": "bipartite", "valid": verdict.holds(), "violations": violations}),
            );
            for (a, b) in duplicate_labels(&l) {
                res = res.note(format!("{} and {} share a label", g.vertex_name(a), g.vertex_name(b)));
            }
            Ok(res)
        }
        Model::Digraph => {
            let d = g.digraph().context("--model digraph")?;
            let verdict = verify_digraph(d, &l)?;
            let violations: Vec<Value> = verdict.witness().into_iter().flatten().map(digraph_violation_json).collect();
            Ok(CommandResult::checked(
                verdict.holds(),
                json!({"model": "digraph", "valid": verdict.holds(), "violations": violations}),
            ))
        }
    }
}

fn hub_violation_json(g: &BipartiteGraph, v: &HubViolation) -> Value {
    match v {
        HubViolation::LayerNotBicliques { layer, path } => {
            json!({"kind": "layer-not-bicliques", "layer": layer, "path": format::p4_json(g, path, None)})
        }
        HubViolation::HierarchyBreach { layer, lower, u, v } => json!({
            "kind": "hierarchy-breach", "layer": layer, "lower": lower, "u": u.to_string(), "v": v.to_string(),
        }),
    }
}

fn rule_of(r: RuleArg) -> Rule {
    match r {
        RuleArg::P4 => Rule::P4,
        RuleArg::StrictP4 => Rule::StrictP4,
    }
}

fn analyze(
    graph: &Path,
    decomposition: Option<&Path>,
    checks: &[Check],
    rule: RuleArg,
    hub_mode: HubModeArg,
    budget: u64,
) -> Result<CommandResult> {
    let doc = load_graph(graph)?;
    let g = doc.bipartite()?;
    let needs_w = checks.iter().any(|c| matches!(c, Check::P4 | Check::StrictP4 | Check::Hub));
    let w = if needs_w { Some(load_decomposition(graph, decomposition, &doc)?) } else { None };
    let mut budget = Budget::new(budget);
    let mut results = Map::new();
    let mut all_hold = true;
    for &check in checks {
        let (key, value, holds) = match check {
            Check::P4 | Check::StrictP4 => {
                let w = w.as_ref().expect("loaded above");
                let (key, r) = if check == Check::P4 { ("p4", Rule::P4) } else { ("strict-p4", Rule::StrictP4) };
                let verdict = RuleChecker::new(g).check(r, w)?;
                let witness = verdict.witness().map(|p| format::p4_json(g, p, Some(w)));
                (key, json!({"holds": verdict.holds(), "witness": witness}), verdict.holds())
            }
            Check::Hub => {
                let verdict = check_hub_rule(g, w.as_ref().expect("loaded above"))?;
                let witness = verdict.witness().map(|v| hub_violation_json(g, v));
                ("hub", json!({"holds": verdict.holds(), "witness": witness}), verdict.holds())
            }
            Check::C4Free => {
                let holds = g.is_c4_free();
                ("c4-free", json!({"holds": holds}), holds)
            }
            Check::Distinctness => {
                let d = distinctness(g).map_err(|e| anyhow!("{e}"))?;
                let pair = [d.pair.0.to_string(), d.pair.1.to_string()];
                ("distinctness", json!({"value": d.value, "pair": pair}), true)
            }
            Check::HubNumber => {
                let (mode, name) = match hub_mode {
                    HubModeArg::Exact => (HubMode::Exact, "exact"),
                    HubModeArg::UpperBound => (HubMode::UpperBound, "upper-bound"),
                };
                let h = hub_number(g, mode, &mut budget)?;
                ("hub-number", json!({"value": h, "mode": name}), true)
            }
            Check::Radius => {
                let rc = g.radius_center()?;
                ("radius", json!({"value": rc.radius, "center": rc.center.to_string()}), true)
            }
            Check::MinDecomposition => {
                let (k, w) = min_rule_decomposition(g, rule_of(rule), &mut budget)?;
                let rule = if rule == RuleArg::P4 { "p4" } else { "strict-p4" };
                let value = json!({"rule": rule, "value": k, "decomposition": format::decomposition_json(&w, &doc)});
                ("min-decomposition", value, true)
            }
        };
        all_hold &= holds;
        results.insert(key.into(), value);
    }
    Ok(CommandResult::checked(all_hold, json!({"checks": results})))
}

fn achieve_trace_json(g: &GraphDoc, t: &AchieveTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "edge": g.edge_name(s.edge),
                "filler": format::label_string(&s.filler),
                "before_s": format::label_string(&s.before_s),
                "before_p": format::label_string(&s.before_p),
                "after": format::label_string(&s.after),
            })
        })
        .collect();
    json!({"method": "achieve", "steps": steps, "padded_len": t.padded_len})
}

fn bm_trace_json(t: &BmTrace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "layer": s.layer,
                "members": s.members.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "symbol": format::symbol_char(s.symbol).to_string(),
                "edge": s.edge.map(|e| format!("s{}-p{}", e.s + 1, e.p + 1)),
            })
        })
        .collect();
    json!({"method": "bm", "steps": steps})
}

fn construct(
    graph: &Path,
    decomposition: Option<&Path>,
    method: Method,
    trace: Option<&Path>,
) -> Result<CommandResult> {
    let doc = load_graph(graph)?;
    let g = doc.bipartite()?;
    let (l, t) = match method {
        Method::Achieve => {
            let w = load_decomposition(graph, decomposition, &doc)?;
            let (l, t) = achieve_labeling(g, &w)?;
            (l, achieve_trace_json(&doc, &t))
        }
        Method::Bm => {
            let w = load_decomposition(graph, decomposition, &doc)?;
            let (l, t) = bm_labeling(g, &w)?;
            (l, bm_trace_json(&t))
        }
        Method::Radius => {
            let w = tree_radius_decomposition(g)?;
            let (l, t) = achieve_labeling(g, &w)?;
            let mut t = achieve_trace_json(&doc, &t);
            t["method"] = json!("radius");
            t["decomposition"] = format::decomposition_json(&w, &doc);
            (l, t)
        }
    };
    if let Some(path) = trace {
        format::write_json(path, &t)?;
    }
    Ok(CommandResult::ok(format::labeling_json(&l, &doc)))
}

fn transform(op: Op, graph: &Path, labeling: Option<&Path>, dot: Option<&Path>) -> Result<CommandResult> {
    let doc = load_graph(graph)?;
    let need_labeling = || labeling.ok_or_else(|| anyhow!("--labeling is required for this operation"));
    let (payload, rendered) = match op {
        Op::Phi => {
            let g = GraphDoc::Bipartite(phi(doc.digraph()?));
            (format::graph_doc_json(&g), Some(g))
        }
        Op::Psi => {
            let d = GraphDoc::Digraph(psi(doc.bipartite()?)?);
            (format::graph_doc_json(&d), Some(d))
        }
        Op::Lift => {
            let g = doc.bipartite()?;
            let l = load_labeling(need_labeling()?, &doc)?;
            let target = GraphDoc::Digraph(psi(g)?);
            (format::labeling_json(&lift_to_digraph(g, &l)?, &target), None)
        }
        Op::Project => {
            let d = doc.digraph()?;
            let l = load_labeling(need_labeling()?, &doc)?;
            let target = GraphDoc::Bipartite(phi(d));
            (format::labeling_json(&project_to_bipartite(d, &l)?, &target), None)
        }
    };
    if let Some(path) = dot {
        let g = rendered.as_ref().unwrap_or(&doc);
        std::fs::write(path, format::dot(g, None)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(CommandResult::ok(payload))
}

fn refutation_json(doc: &GraphDoc, r: &Refutation) -> Value {
    match *r {
        Refutation::ShorterOverlap { edge, overlap } => {
            json!({"kind": "shorter-overlap", "edge": doc.edge_name(edge), "overlap": overlap})
        }
        Refutation::UnwantedOverlap { s, p, overlap } => json!({
            "kind": "unwanted-overlap", "s": Vertex::s(s).to_string(), "p": Vertex::p(p).to_string(), "overlap": overlap,
        }),
    }
}

fn oracle(query: Query, graph: &Path, decomposition: Option<&Path>, budget: u64, jobs: usize) -> Result<CommandResult> {
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let doc = load_graph(graph)?;
    let mut budget = Budget::new(budget);
    match query {
        Query::Readability => {
            let r = match &doc {
                GraphDoc::Bipartite(g) => readability_bipartite(g, &mut budget)?,
                GraphDoc::Digraph(d) => readability_digraph(d, &mut budget)?,
            };
            let payload = json!({
                "kind": doc.kind(),
                "value": r.value,
                "labeling": format::labeling_json(&r.labeling, &doc),
                "decomposition": format::decomposition_json(&r.decomposition, &doc),
            });
            Ok(CommandResult::ok(payload).note(format!("{} candidate evaluations", budget.used())))
        }
        Query::Achieves => {
            let g = doc.bipartite()?;
            let w = load_decomposition(graph, decomposition, &doc)?;
            Ok(match oracle_achieves(g, &w)? {
                Achievability::Achievable(l) => {
                    CommandResult::ok(json!({"achievable": true, "witness": format::labeling_json(&l, &doc)}))
                }
                Achievability::NotAchievable(r) => {
                    CommandResult::checked(false, json!({"achievable": false, "refutation": refutation_json(&doc, &r)}))
                }
            })
        }
    }
}

fn encode(graph: &Path, labeling: &Path) -> Result<CommandResult> {
    let doc = load_graph(graph)?;
    let l = load_labeling(labeling, &doc)?;
    let b = encode_binary(&l);
    // Print the binary alphabet as 0/1 rather than a/b.
    let labels: Map<String, Value> = (0..b.vertex_count())
        .map(|id| {
            let s: String = b.label(id).iter().map(|&c| if c == 0 { '0' } else { '1' }).collect();
            (doc.vertex_name(id), Value::String(s))
        })
        .collect();
    Ok(CommandResult::ok(json!({"len": b.len(), "alphabet": ["0", "1"], "labels": labels})))
}

/// One sample of the counting experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sample {
    pub readability: usize,
    pub hub: u32,
}

impl Sample {
    pub fn within_bounds(&self) -> bool {
        self.hub as usize <= self.readability && self.readability < 1usize << self.hub
    }
}

/// Exact readability and hub number of every graph, in input order.
pub fn measure(graphs: &[BipartiteGraph], budget: u64, jobs: usize) -> Result<Vec<Sample>> {
    let one = |g: &BipartiteGraph| -> Result<Sample> {
        let mut b = Budget::new(budget);
        let readability = readability_bipartite(g, &mut b)?.value;
        let hub = hub_number(g, HubMode::Exact, &mut Budget::new(budget))?;
        Ok(Sample { readability, hub })
    };
    if jobs <= 1 {
        return graphs.iter().map(one).collect();
    }
    let chunk = graphs.len().div_ceil(jobs).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            graphs.chunks(chunk).map(|c| scope.spawn(move || c.iter().map(one).collect::<Result<Vec<_>>>())).collect();
        let mut out = Vec::with_capacity(graphs.len());
        for h in handles {
            out.extend(h.join().map_err(|_| anyhow!("worker panicked"))??);
        }
        Ok(out)
    })
}

/// The `samples` graphs drawn from one generator seeded with `seed`.
pub fn counting_samples(n: usize, samples: usize, seed: u64, p: f64) -> Vec<BipartiteGraph> {
    let mut rng = Lcg::new(seed);
    (0..samples).map(|_| sample_bipartite(&mut rng, n, n, p)).collect()
}

fn counting(n: usize, samples: usize, seed: u64, p: f64, budget: u64, jobs: usize) -> Result<CommandResult> {
    check_probability(p)?;
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    if n > 4 {
        bail!("--n {n} is beyond the exact oracle's range (at most 4)");
    }
    let graphs = counting_samples(n, samples, seed, p);
    let results = measure(&graphs, budget, jobs)?;
    let mut histogram = Map::new();
    let mut hubs = Map::new();
    for s in &results {
        let bump = |m: &mut Map<String, Value>, k: String| {
            let c = m.get(&k).and_then(Value::as_u64).unwrap_or(0);
            m.insert(k, json!(c + 1));
        };
        bump(&mut histogram, s.readability.to_string());
        bump(&mut hubs, s.hub.to_string());
    }
    let violations: Vec<usize> =
        results.iter().enumerate().filter(|(_, s)| !s.within_bounds()).map(|(i, _)| i).collect();
    let payload = json!({
        "n": n,
        "p": p,
        "seed": seed,
        "samples": samples,
        "histogram": histogram,
        "hub_histogram": hubs,
        "bounds_hold": violations.is_empty(),
        "violations": violations,
    });
    Ok(CommandResult::checked(violations.is_empty(), payload))
}
