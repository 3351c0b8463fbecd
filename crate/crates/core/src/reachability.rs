//! Temporal path discovery: a label-ordered sweep for earliest arrival and
//! witnesses, and the explicit static expansion searched by BFS.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Label, TemporalGraph, TimeEdge, Vertex};

/// Non-strict paths allow equal consecutive labels; strict paths require
/// strictly increasing ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    NonStrict,
    Strict,
}

impl Mode {
    fn admits(self, prev: Label, next: Label) -> bool {
        match self {
            Mode::NonStrict => prev <= next,
            Mode::Strict => prev < next,
        }
    }
}

/// One traversed time-edge, oriented in walking direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub from: Vertex,
    pub to: Vertex,
    pub t: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path has no steps")]
    Empty,
    #[error("step {index} ({from},{to},{t}) is not a time-edge")]
    MissingEdge {
        index: usize,
        from: Vertex,
        to: Vertex,
        t: Label,
    },
    #[error("step {index} does not start where the previous step ended")]
    Broken { index: usize },
    #[error("labels at step {index} violate the time order")]
    NotMonotone { index: usize },
    #[error("vertex {vertex} visited twice")]
    RepeatedVertex { vertex: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalPath {
    steps: Vec<Step>,
}

impl TemporalPath {
    pub fn from_steps(steps: Vec<Step>) -> Self {
        TemporalPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn departure(&self) -> Option<Label> {
        self.steps.first().map(|s| s.t)
    }

    pub fn arrival(&self) -> Option<Label> {
        self.steps.last().map(|s| s.t)
    }

    /// Visited vertices in walking order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        if let Some(first) = self.steps.first() {
            out.push(first.from);
        }
        out.extend(self.steps.iter().map(|s| s.to));
        out
    }

    /// Re-checks the path against `g`: every step is a time-edge, steps chain,
    /// labels respect `mode`, and no vertex repeats.
    pub fn validate(&self, g: &TemporalGraph, mode: Mode) -> Result<(), PathError> {
        if self.steps.is_empty() {
            return Err(PathError::Empty);
        }
        for (index, st) in self.steps.iter().enumerate() {
            let e = TimeEdge::new(st.from, st.to, st.t);
            if st.from == st.to || g.layer_edges(st.t).binary_search_by_key(&e.key(), TimeEdge::key).is_err() {
                return Err(PathError::MissingEdge {
                    index,
                    from: st.from,
                    to: st.to,
                    t: st.t,
                });
            }
            if index > 0 {
                let prev = self.steps[index - 1];
                if prev.to != st.from {
                    return Err(PathError::Broken { index });
                }
                if !mode.admits(prev.t, st.t) {
                    return Err(PathError::NotMonotone { index });
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for v in self.vertices() {
            if !seen.insert(v) {
                return Err(PathError::RepeatedVertex { vertex: v });
            }
        }
        Ok(())
    }
}

/// Drops cycles from a temporal walk. Keeping a subsequence of the steps
/// preserves label monotonicity in either mode.
fn shortcut(walk: Vec<Step>) -> Vec<Step> {
    let mut path: Vec<Step> = Vec::with_capacity(walk.len());
    let mut position: HashMap<Vertex, usize> = HashMap::new();
    if let Some(first) = walk.first() {
        position.insert(first.from, 0);
    }
    for st in walk {
        if let Some(&j) = position.get(&st.to) {
            for dropped in path.drain(j..) {
                position.remove(&dropped.to);
            }
        } else {
            path.push(st);
            position.insert(st.to, path.len());
        }
    }
    path
}

pub(crate) struct Sweep {
    pub arrival: Vec<Option<Label>>,
    pub pred: Vec<Option<(Vertex, Label)>>,
}

/// Label-ordered sweep over the sorted edge list. `blocked` vertices are never
/// entered; the sweep stops once `target` is reached.
pub(crate) fn sweep(
    g: &TemporalGraph,
    s: Vertex,
    mode: Mode,
    blocked: Option<&[bool]>,
    target: Option<Vertex>,
) -> Sweep {
    let n = g.n();
    let mut arrival: Vec<Option<Label>> = vec![None; n];
    let mut pred: Vec<Option<(Vertex, Label)>> = vec![None; n];
    arrival[s] = Some(0);
    let is_blocked = |v: Vertex| blocked.is_some_and(|b| b[v]);
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut queue: VecDeque<Vertex> = VecDeque::new();

    for t in 1..=g.tau() {
        let layer = g.layer_edges(t);
        if layer.is_empty() {
            continue;
        }
        match mode {
            Mode::Strict => {
                for e in layer {
                    if is_blocked(e.u) || is_blocked(e.v) {
                        continue;
                    }
                    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                        if arrival[b].is_none() && arrival[a].is_some_and(|x| x < t) {
                            arrival[b] = Some(t);
                            pred[b] = Some((a, t));
                        }
                    }
                }
            }
            Mode::NonStrict => {
                arcs.clear();
                for e in layer {
                    if is_blocked(e.u) || is_blocked(e.v) {
                        continue;
                    }
                    arcs.push((e.u, e.v));
                    arcs.push((e.v, e.u));
                }
                arcs.sort_unstable();
                queue.clear();
                let mut last = usize::MAX;
                for &(a, _) in &arcs {
                    if a != last {
                        last = a;
                        if arrival[a].is_some() {
                            queue.push_back(a);
                        }
                    }
                }
                while let Some(x) = queue.pop_front() {
                    let start = arcs.partition_point(|&(a, _)| a < x);
                    for &(a, b) in &arcs[start..] {
                        if a != x {
                            break;
                        }
                        if arrival[b].is_none() {
                            arrival[b] = Some(t);
                            pred[b] = Some((x, t));
                            queue.push_back(b);
                        }
                    }
                }
            }
        }
        if target.is_some_and(|z| arrival[z].is_some()) {
            break;
        }
    }
    Sweep { arrival, pred }
}

fn extract(sw: &Sweep, z: Vertex) -> Option<TemporalPath> {
    sw.arrival[z]?;
    let mut steps = Vec::new();
    let mut cur = z;
    while let Some((p, t)) = sw.pred[cur] {
        steps.push(Step { from: p, to: cur, t });
        cur = p;
    }
    steps.reverse();
    Some(TemporalPath { steps })
}

/// Earliest arrival from `s`: `Some(0)` for `s` itself, `None` when unreachable.
pub fn earliest_arrival(g: &TemporalGraph, s: Vertex, mode: Mode) -> Vec<Option<Label>> {
    sweep(g, s, mode, None, None).arrival
}

/// An earliest-arriving temporal `(s,z)`-path, if any.
///
/// Predecessors are fixed when a vertex is first reached: within one label the
/// search expands already-reached vertices in ascending index order.
pub fn find_temporal_path(g: &TemporalGraph, s: Vertex, z: Vertex, mode: Mode) -> Option<TemporalPath> {
    if s == z {
        return None;
    }
    extract(&sweep(g, s, mode, None, Some(z)), z)
}

/// Like [`find_temporal_path`] in `g - blocked` without materialising the
/// smaller graph. `blocked` is indexed by vertex.
pub fn find_temporal_path_avoiding(
    g: &TemporalGraph,
    s: Vertex,
    z: Vertex,
    mode: Mode,
    blocked: &[bool],
) -> Option<TemporalPath> {
    if s == z || blocked[s] || blocked[z] {
        return None;
    }
    extract(&sweep(g, s, mode, Some(blocked), Some(z)), z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    /// Single copy of `(vertex, label)`, used by the non-strict expansion.
    Both,
    /// Entered by a layer move at this label.
    In,
    /// Left by a layer move at this label; only reachable by waiting.
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionNode {
    Source,
    Sink,
    Copy { vertex: Vertex, label: Label, port: Port },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// Move along a time-edge between two non-terminals.
    Layer,
    /// Leave the source.
    Source,
    /// Enter the sink.
    Sink,
    /// Wait at a vertex until its next active label.
    Column,
    /// A time-edge joining the terminals directly.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExpansionArc {
    pub from: usize,
    pub to: usize,
    pub kind: ArcKind,
    /// The time-edge label; for column arcs the label waited until.
    pub label: Label,
}

/// The static expansion: source, sink and a copy of each non-terminal per
/// label at which it has an incident time-edge (two copies per label in
/// strict mode). Node 0 is the source, node 1 the sink.
#[derive(Debug, Clone)]
pub struct StaticExpansion {
    s: Vertex,
    z: Vertex,
    mode: Mode,
    nodes: Vec<ExpansionNode>,
    arcs: Vec<ExpansionArc>,
    index: HashMap<(Vertex, Label, Port), usize>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl StaticExpansion {
    pub fn build(g: &TemporalGraph, s: Vertex, z: Vertex, mode: Mode) -> Self {
        assert!(s != z && s < g.n() && z < g.n(), "terminals must be distinct and in range");
        let mut activity: Vec<Vec<Label>> = vec![Vec::new(); g.n()];
        for e in g.edges() {
            for x in [e.u, e.v] {
                if x != s && x != z && activity[x].last() != Some(&e.t) {
                    activity[x].push(e.t);
                }
            }
        }
        let ports: &[Port] = match mode {
            Mode::NonStrict => &[Port::Both],
            Mode::Strict => &[Port::In, Port::Out],
        };
        let mut nodes = vec![ExpansionNode::Source, ExpansionNode::Sink];
        let mut index = HashMap::new();
        for (v, labels) in activity.iter().enumerate() {
            for &t in labels {
                for &port in ports {
                    index.insert((v, t, port), nodes.len());
                    nodes.push(ExpansionNode::Copy { vertex: v, label: t, port });
                }
            }
        }
        let (entry, exit) = match mode {
            Mode::NonStrict => (Port::Both, Port::Both),
            Mode::Strict => (Port::In, Port::Out),
        };
        let mut arcs = Vec::new();
        for e in g.edges() {
            let t = e.t;
            let terminal = |x: Vertex| x == s || x == z;
            match (terminal(e.u), terminal(e.v)) {
                (true, true) => arcs.push(ExpansionArc { from: SOURCE, to: SINK, kind: ArcKind::Direct, label: t }),
                (false, false) => {
                    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                        arcs.push(ExpansionArc {
                            from: index[&(a, t, exit)],
                            to: index[&(b, t, entry)],
                            kind: ArcKind::Layer,
                            label: t,
                        });
                    }
                }
                _ => {
                    let (term, w) = if terminal(e.u) { (e.u, e.v) } else { (e.v, e.u) };
                    if term == s {
                        arcs.push(ExpansionArc { from: SOURCE, to: index[&(w, t, entry)], kind: ArcKind::Source, label: t });
                    } else {
                        arcs.push(ExpansionArc { from: index[&(w, t, exit)], to: SINK, kind: ArcKind::Sink, label: t });
                    }
                }
            }
        }
        for (v, labels) in activity.iter().enumerate() {
            for w in labels.windows(2) {
                let (t, next) = (w[0], w[1]);
                match mode {
                    Mode::NonStrict => arcs.push(ExpansionArc {
                        from: index[&(v, t, Port::Both)],
                        to: index[&(v, next, Port::Both)],
                        kind: ArcKind::Column,
                        label: next,
                    }),
                    Mode::Strict => {
                        for from_port in [Port::In, Port::Out] {
                            arcs.push(ExpansionArc {
                                from: index[&(v, t, from_port)],
                                to: index[&(v, next, Port::Out)],
                                kind: ArcKind::Column,
                                label: next,
                            });
                        }
                    }
                }
            }
        }
        StaticExpansion { s, z, mode, nodes, arcs, index }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn nodes(&self) -> &[ExpansionNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ExpansionArc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self, kind: ArcKind) -> usize {
        self.arcs.iter().filter(|a| a.kind == kind).count()
    }

    pub fn node_of(&self, vertex: Vertex, label: Label, port: Port) -> Option<usize> {
        self.index.get(&(vertex, label, port)).copied()
    }

    fn vertex_of(&self, node: usize) -> Vertex {
        match self.nodes[node] {
            ExpansionNode::Source => self.s,
            ExpansionNode::Sink => self.z,
            ExpansionNode::Copy { vertex, .. } => vertex,
        }
    }

    /// BFS from source to sink; the arc path is mapped back to time-edges and
    /// cycles in the resulting walk are cut out.
    pub fn find_path(&self) -> Option<TemporalPath> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.from].push(i);
        }
        let mut via: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[SOURCE] = true;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(x) = queue.pop_front() {
            if x == SINK {
                break;
            }
            for &ai in &out[x] {
                let y = self.arcs[ai].to;
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some(ai);
                    queue.push_back(y);
                }
            }
        }
        if !seen[SINK] {
            return None;
        }
        let mut arc_path = Vec::new();
        let mut cur = SINK;
        while let Some(ai) = via[cur] {
            arc_path.push(ai);
            cur = self.arcs[ai].from;
        }
        arc_path.reverse();
        let walk: Vec<Step> = arc_path
            .into_iter()
            .map(|ai| self.arcs[ai])
            .filter(|a| a.kind != ArcKind::Column)
            .map(|a| Step {
                from: self.vertex_of(a.from),
                to: self.vertex_of(a.to),
                t: a.label,
            })
            .collect();
        Some(TemporalPath { steps: shortcut(walk) })
    }
}

/// Convenience wrapper: existence of a temporal `(s,z)`-path via the expansion.
pub fn expansion_path(g: &TemporalGraph, s: Vertex, z: Vertex, mode: Mode) -> Option<TemporalPath> {
    StaticExpansion::build(g, s, z, mode).find_path()
}
