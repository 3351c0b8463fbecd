//! Instance transformations that preserve the answer, each returning a report
//! whose structural claims are re-checked on the produced graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::classes::{interval_connected_max_t, steady_lambda};
use crate::graph::{Label, StaticGraph, TemporalGraph, TimeEdge, Vertex};
use crate::oracle::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("layers {a} and {b} differ")]
    LayersNotEqual { a: Label, b: Label },
    #[error("vertex {vertex} has degree {degree} in the underlying graph")]
    DegreeTooSmall { vertex: Vertex, degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    OneEdgePerLayer,
    CompleteButOne,
    PadMonotone,
    UniversalVertex,
    Steady,
    LineGraph,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 6] = [
        ReductionKind::OneEdgePerLayer,
        ReductionKind::CompleteButOne,
        ReductionKind::PadMonotone,
        ReductionKind::UniversalVertex,
        ReductionKind::Steady,
        ReductionKind::LineGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::OneEdgePerLayer => "one-edge",
            ReductionKind::CompleteButOne => "complete-but-one",
            ReductionKind::PadMonotone => "pad-monotone",
            ReductionKind::UniversalVertex => "universal",
            ReductionKind::Steady => "steady",
            ReductionKind::LineGraph => "line-graph",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn apply(self, inst: &Instance) -> Result<(Instance, ReductionReport), ReductionError> {
        match self {
            ReductionKind::OneEdgePerLayer => Ok(one_edge_per_layer(inst)),
            ReductionKind::CompleteButOne => Ok(complete_but_one(inst)),
            ReductionKind::PadMonotone => Ok(pad_monotone(inst)),
            ReductionKind::UniversalVertex => Ok(add_universal_vertex(inst)),
            ReductionKind::Steady => Ok(steadyify(inst)),
            ReductionKind::LineGraph => line_graph_gadget(inst),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub n: usize,
    pub tau: Label,
    pub edges: usize,
    pub s: Vertex,
    pub z: Vertex,
    pub k: usize,
}

impl Summary {
    fn of(inst: &Instance) -> Self {
        Summary {
            n: inst.graph().n(),
            tau: inst.graph().tau(),
            edges: inst.graph().num_edges(),
            s: inst.s(),
            z: inst.z(),
            k: inst.k(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub kind: ReductionKind,
    pub input: Summary,
    pub output: Summary,
    pub checks: Vec<Check>,
    /// `k' - k`.
    pub budget_delta: i64,
}

impl ReductionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Line-oriented `key=value` rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sum = |out: &mut String, prefix: &str, s: &Summary| {
            writeln!(
                out,
                "{prefix}.n={}\n{prefix}.tau={}\n{prefix}.edges={}\n{prefix}.s={}\n{prefix}.z={}\n{prefix}.k={}",
                s.n, s.tau, s.edges, s.s, s.z, s.k
            )
            .unwrap();
        };
        writeln!(out, "kind={}", self.kind.name()).unwrap();
        sum(&mut out, "input", &self.input);
        sum(&mut out, "output", &self.output);
        writeln!(out, "budget_delta={}", self.budget_delta).unwrap();
        for c in &self.checks {
            writeln!(out, "check.{}={} {}", c.name, if c.passed { "pass" } else { "fail" }, c.detail).unwrap();
        }
        out
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn finish(kind: ReductionKind, input: &Instance, output: Instance, checks: Vec<Check>) -> (Instance, ReductionReport) {
    let report = ReductionReport {
        kind,
        input: Summary::of(input),
        output: Summary::of(&output),
        checks,
        budget_delta: output.k() as i64 - input.k() as i64,
    };
    (output, report)
}

fn max_layer_size(g: &TemporalGraph) -> usize {
    (1..=g.tau()).map(|t| g.layer_edges(t).len()).max().unwrap_or(0)
}

/// Every layer `i` with `m` edges becomes `m` rounds of `m` layers, each
/// holding a single edge of `E_i` in lexicographic order.
pub fn one_edge_per_layer(inst: &Instance) -> (Instance, ReductionReport) {
    let g = inst.graph();
    let mut edges = Vec::new();
    let mut next: Label = 1;
    for t in 1..=g.tau() {
        let layer = g.layer_edges(t);
        for _ in 0..layer.len() {
            for e in layer {
                edges.push(TimeEdge::new(e.u, e.v, next));
                next += 1;
            }
        }
    }
    let tau = (next - 1).max(1);
    let h = TemporalGraph::from_canonical_parts(g.n(), tau, edges);
    let n4 = (g.n() as u128).pow(4) * g.tau() as u128;
    let checks = vec![
        check("one_edge_per_layer", max_layer_size(&h) <= 1, format!("max_layer_edges={}", max_layer_size(&h))),
        check("tau_bound", (h.tau() as u128) <= n4.max(1), format!("tau'={} bound={}", h.tau(), n4)),
        check("same_underlying", h.underlying() == g.underlying(), "underlying graph unchanged"),
    ];
    let out = Instance::new(h, inst.s(), inst.z(), inst.k()).expect("terminals unchanged");
    finish(ReductionKind::OneEdgePerLayer, inst, out, checks)
}

/// Shifts labels by one, adds every missing pair avoiding `s` at label 1 and
/// every missing `s`-pair other than `{s,z}` at label `tau + 2`.
pub fn complete_but_one(inst: &Instance) -> (Instance, ReductionReport) {
    let g = inst.graph();
    let (s, z) = (inst.s(), inst.z());
    let under = g.underlying();
    let tau = g.tau() + 2;
    let mut edges: Vec<TimeEdge> = g.edges().iter().map(|e| TimeEdge::new(e.u, e.v, e.t + 1)).collect();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if under.has_edge(a, b) || (a == s.min(z) && b == s.max(z)) {
                continue;
            }
            let t = if a == s || b == s { tau } else { 1 };
            edges.push(TimeEdge::new(a, b, t));
        }
    }
    let h = TemporalGraph::from_canonical_parts(g.n(), tau, edges);
    let n = g.n();
    let all_pairs = n * n.saturating_sub(1) / 2;
    let hu = h.underlying();
    let complete = hu.num_edges() + 1 == all_pairs && !hu.has_edge(s, z);
    let checks = vec![check(
        "complete_but_one",
        complete,
        format!("underlying_edges={} expected={}", hu.num_edges(), all_pairs.saturating_sub(1)),
    )];
    let out = Instance::new(h, s, z, inst.k()).expect("no terminal edge is added");
    finish(ReductionKind::CompleteButOne, inst, out, checks)
}

/// Interleaves an empty layer between consecutive layers.
pub fn pad_monotone(inst: &Instance) -> (Instance, ReductionReport) {
    let g = inst.graph();
    let tau = 2 * g.tau() - 1;
    let edges = g.edges().iter().map(|e| TimeEdge::new(e.u, e.v, 2 * e.t - 1)).collect();
    let h = TemporalGraph::from_canonical_parts(g.n(), tau, edges);
    let even_empty = (1..=h.tau()).filter(|t| t % 2 == 0).all(|t| h.layer_edges(t).is_empty());
    let odd_copied = (1..=g.tau()).all(|t| {
        let a: Vec<_> = g.layer_edges(t).iter().map(TimeEdge::pair).collect();
        let b: Vec<_> = h.layer_edges(2 * t - 1).iter().map(TimeEdge::pair).collect();
        a == b
    });
    let checks = vec![
        check("tau", h.tau() == 2 * g.tau() - 1, format!("tau'={} tau={}", h.tau(), g.tau())),
        check("even_layers_empty", even_empty, ""),
        check("odd_layers_copied", odd_copied, ""),
    ];
    let out = Instance::new(h, inst.s(), inst.z(), inst.k()).expect("terminals unchanged");
    finish(ReductionKind::PadMonotone, inst, out, checks)
}

/// Adds vertex `n` adjacent to everything in every layer; the budget grows by one.
pub fn add_universal_vertex(inst: &Instance) -> (Instance, ReductionReport) {
    let g = inst.graph();
    let hub = g.n();
    let mut edges: Vec<TimeEdge> = g.edges().to_vec();
    for t in 1..=g.tau() {
        for v in 0..g.n() {
            edges.push(TimeEdge::new(v, hub, t));
        }
    }
    let h = TemporalGraph::from_canonical_parts(g.n() + 1, g.tau(), edges);
    let max_t = interval_connected_max_t(&h);
    let checks = vec![check(
        "interval_connected_all_t",
        max_t == h.tau(),
        format!("maxT={} tau={}", max_t, h.tau()),
    )];
    let out = Instance::new(h, inst.s(), inst.z(), inst.k() + 1).expect("terminals unchanged");
    finish(ReductionKind::UniversalVertex, inst, out, checks)
}

/// Replaces each layer by a stream that adds its edges one at a time and then
/// removes them again; consecutive streams share their empty boundary layer.
pub fn steadyify(inst: &Instance) -> (Instance, ReductionReport) {
    let g = inst.graph();
    let mut edges = Vec::new();
    // label 1 is the initial empty layer
    let mut cur: Label = 1;
    for t in 1..=g.tau() {
        let layer: Vec<(Vertex, Vertex)> = g.layer_edges(t).iter().map(TimeEdge::pair).collect();
        let m = layer.len();
        // building: sub-layer j (1..=m) holds the first j edges
        for j in 1..=m {
            for &(a, b) in &layer[..j] {
                edges.push(TimeEdge::new(a, b, cur + j as Label));
            }
        }
        // tearing down: sub-layer m + j (1..m) holds all but the first j edges
        for j in 1..m {
            for &(a, b) in &layer[j..] {
                edges.push(TimeEdge::new(a, b, cur + (m + j) as Label));
            }
        }
        if m > 0 {
            cur += 2 * m as Label;
        }
    }
    let h = TemporalGraph::from_canonical_parts(g.n(), cur, edges);
    let lambda = steady_lambda(&h);
    let expect_tau = 2 * g.num_edges() as Label + 1;
    let checks = vec![
        check("lambda_at_most_one", lambda <= 1, format!("lambda={lambda}")),
        check("tau", h.tau() == expect_tau, format!("tau'={} expected={}", h.tau(), expect_tau)),
    ];
    let out = Instance::new(h, inst.s(), inst.z(), inst.k()).expect("terminals unchanged");
    finish(ReductionKind::Steady, inst, out, checks)
}

/// Whether some vertex has three pairwise non-adjacent neighbours.
pub fn has_claw(g: &StaticGraph) -> bool {
    let adj = g.adjacency();
    adj.iter().any(|nb| {
        nb.iter().enumerate().any(|(i, &a)| {
            nb[i + 1..].iter().enumerate().any(|(j, &b)| {
                !g.has_edge(a, b) && nb[i + 1 + j + 1..].iter().any(|&c| !g.has_edge(a, c) && !g.has_edge(b, c))
            })
        })
    })
}

/// Layout of the gadget graph: original vertex `v` keeps index `v` as its
/// star vertex `v*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    /// `ports[v]`: the vertices of `W_v` other than `v*`, one per incident edge.
    pub ports: Vec<Vec<Vertex>>,
}

impl GadgetLayout {
    pub fn group_size(&self, v: Vertex) -> usize {
        self.ports[v].len() + 1
    }
}

/// Turns a strict instance whose layers are all equal into a non-strict one
/// whose underlying graph is a line graph.
///
/// Every vertex `v` becomes a clique `W_v` (the star `v*` plus one port per
/// incident edge). An edge `{v,w}` with ports `x`, `y` becomes the paths
/// `x-a-b-y` and `x-c-d-y` with stilts `{a,c}` and `{b,d}`. Stilts and the
/// cliques among ports carry label 1; star edges carry every label from 2 to
/// `3 tau + 1`. Layer `t` of the input is encoded by the labels `3t - 1`,
/// `3t`, `3t + 1` traversing `x-a-b-y` forwards and `y-d-c-x` forwards, so a
/// path can cross at most one input edge per input layer.
pub fn line_graph_gadget(inst: &Instance) -> Result<(Instance, ReductionReport), ReductionError> {
    Ok(line_graph_gadget_with_layout(inst)?.0)
}

pub fn line_graph_gadget_with_layout(
    inst: &Instance,
) -> Result<((Instance, ReductionReport), GadgetLayout), ReductionError> {
    let g = inst.graph();
    let layers = g.layer_pairs();
    if let Some(b) = (1..layers.len()).find(|&i| layers[i] != layers[0]) {
        return Err(ReductionError::LayersNotEqual { a: 1, b: b as Label + 1 });
    }
    let under = g.underlying();
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| under.degree(v) < 2) {
        return Err(ReductionError::DegreeTooSmall {
            vertex: v,
            degree: under.degree(v),
        });
    }
    let tau = g.tau();
    let mut next = n;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let mut ports: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges: Vec<TimeEdge> = Vec::new();
    for &(v, w) in under.edges() {
        let x = fresh();
        let y = fresh();
        ports[v].push(x);
        ports[w].push(y);
        let (a, b, c, d) = (fresh(), fresh(), fresh(), fresh());
        edges.push(TimeEdge::new(a, c, 1));
        edges.push(TimeEdge::new(b, d, 1));
        for t in 1..=tau {
            let (lo, mid, hi) = (3 * t - 1, 3 * t, 3 * t + 1);
            edges.push(TimeEdge::new(x, a, lo));
            edges.push(TimeEdge::new(a, b, mid));
            edges.push(TimeEdge::new(b, y, hi));
            edges.push(TimeEdge::new(y, d, lo));
            edges.push(TimeEdge::new(d, c, mid));
            edges.push(TimeEdge::new(c, x, hi));
        }
    }
    let tau_out = 3 * tau + 1;
    for (v, ps) in ports.iter().enumerate() {
        for (i, &p) in ps.iter().enumerate() {
            for &q in &ps[i + 1..] {
                edges.push(TimeEdge::new(p, q, 1));
            }
            for t in 2..=tau_out {
                edges.push(TimeEdge::new(v, p, t));
            }
        }
    }
    let h = TemporalGraph::from_canonical_parts(next, tau_out, edges);
    let layout = GadgetLayout { ports };
    let hu = h.underlying();
    let claw = has_claw(&hu);
    let sizes_ok = (0..n).all(|v| layout.group_size(v) == under.degree(v) + 1);
    let checks = vec![
        check("claw_free", !claw, if claw { "claw found" } else { "" }),
        check("group_sizes", sizes_ok, "|W_v| = deg(v) + 1"),
    ];
    let out = Instance::new(h, inst.s(), inst.z(), inst.k()).expect("star vertices are not adjacent");
    Ok((finish(ReductionKind::LineGraph, inst, out, checks), layout))
}

/// Stars of a gadget separator: maps each separator vertex of the output back
/// to an input vertex when it is a star.
pub fn stars_of(sep: &[Vertex], n: usize) -> BTreeSet<Vertex> {
    sep.iter().copied().filter(|&v| v < n).collect()
}
