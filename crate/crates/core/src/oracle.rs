//! Exhaustive ground truth: separator checks, brute-force minimum separators,
//! reset counting along underlying paths and plain path enumeration.
//!
//! Everything here favours obviousness over speed and is meant for small
//! instances only.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Label, TemporalGraph, Vertex};
use crate::reachability::{Mode, StaticExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("source and sink coincide (vertex {0})")]
    SameTerminals(Vertex),
    #[error("terminal {vertex} out of range for n={n}")]
    TerminalOutOfRange { vertex: Vertex, n: usize },
    #[error("time-edge between terminals {s} and {z}")]
    TerminalEdgePresent { s: Vertex, z: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("terminal {0} in separator")]
    TerminalInSeparator(Vertex),
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("not a path of the underlying graph: {0}")]
    NotAPath(String),
}

/// A separation query `(g, s, z, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    g: TemporalGraph,
    s: Vertex,
    z: Vertex,
    k: usize,
}

impl Instance {
    pub fn new(g: TemporalGraph, s: Vertex, z: Vertex, k: usize) -> Result<Self, InstanceError> {
        for x in [s, z] {
            if x >= g.n() {
                return Err(InstanceError::TerminalOutOfRange { vertex: x, n: g.n() });
            }
        }
        if s == z {
            return Err(InstanceError::SameTerminals(s));
        }
        if g.has_time_edge(s, z) {
            return Err(InstanceError::TerminalEdgePresent { s, z });
        }
        Ok(Instance { g, s, z, k })
    }

    pub fn graph(&self) -> &TemporalGraph {
        &self.g
    }

    pub fn s(&self) -> Vertex {
        self.s
    }

    pub fn z(&self) -> Vertex {
        self.z
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_budget(&self, k: usize) -> Instance {
        Instance { k, ..self.clone() }
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        v == self.s || v == self.z
    }
}

/// A vertex set, kept sorted and duplicate free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Separator {
    vertices: Vec<Vertex>,
}

impl Separator {
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let set: BTreeSet<Vertex> = vertices.into_iter().collect();
        Separator {
            vertices: set.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

impl std::fmt::Display for Separator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ids: Vec<String> = self.vertices.iter().map(Vertex::to_string).collect();
        f.write_str(&ids.join(","))
    }
}

/// Whether deleting `sep` leaves no temporal `(s,z)`-path. Uses a BFS on the
/// static expansion of the reduced graph.
pub fn is_separator(inst: &Instance, sep: &[Vertex], mode: Mode) -> Result<bool, OracleError> {
    for &v in sep {
        if v >= inst.g.n() {
            return Err(OracleError::VertexOutOfRange { vertex: v, n: inst.g.n() });
        }
        if inst.is_terminal(v) {
            return Err(OracleError::TerminalInSeparator(v));
        }
    }
    Ok(separates(inst, sep, mode))
}

fn separates(inst: &Instance, sep: &[Vertex], mode: Mode) -> bool {
    let (h, map) = inst.g.delete_vertices(sep).expect("separator validated");
    let s = map.forward(inst.s).expect("terminal survives");
    let z = map.forward(inst.z).expect("terminal survives");
    StaticExpansion::build(&h, s, z, mode).find_path().is_none()
}

/// Calls `visit` on every `size`-subset of `items` in lexicographic order
/// until it returns true.
fn first_subset<F: FnMut(&[Vertex]) -> bool>(items: &[Vertex], size: usize, mut visit: F) -> Option<Vec<Vertex>> {
    if size > items.len() {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf: Vec<Vertex> = Vec::with_capacity(size);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        if visit(&buf) {
            return Some(buf);
        }
        // advance to the next combination
        let mut pos = size;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            if idx[pos] != pos + items.len() - size {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Minimum separator by enumeration: sizes ascending, then lexicographic.
/// `V \ {s,z}` always separates, so a result always exists.
pub fn min_separator_bruteforce(inst: &Instance, mode: Mode) -> Separator {
    min_separator_up_to(inst, mode, inst.g.n()).expect("V minus terminals always separates")
}

/// Like [`min_separator_bruteforce`] but gives up above `max_size`.
pub fn min_separator_up_to(inst: &Instance, mode: Mode, max_size: usize) -> Option<Separator> {
    let inner: Vec<Vertex> = (0..inst.g.n()).filter(|&v| !inst.is_terminal(v)).collect();
    (0..=max_size.min(inner.len()))
        .find_map(|size| first_subset(&inner, size, |cand| separates(inst, cand, mode)))
        .map(Separator::new)
}

fn labels_along(g: &TemporalGraph, path: &[Vertex]) -> Result<Vec<Vec<Label>>, OracleError> {
    if path.len() < 2 {
        return Err(OracleError::NotAPath("fewer than two vertices".into()));
    }
    let mut seen = BTreeSet::new();
    for &v in path {
        if v >= g.n() {
            return Err(OracleError::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if !seen.insert(v) {
            return Err(OracleError::NotAPath(format!("vertex {v} repeated")));
        }
    }
    let labels = g.edge_labels();
    path.windows(2)
        .map(|w| {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            labels
                .get(&key)
                .cloned()
                .ok_or_else(|| OracleError::NotAPath(format!("no edge {{{},{}}}", w[0], w[1])))
        })
        .collect()
}

/// Minimum number of breaks into non-decreasing label runs over all ways of
/// choosing one label per edge of the underlying path `path`.
///
/// Greedy: keep the smallest label not below the current one; when none is
/// left, start a new run at the smallest label of the edge.
pub fn path_min_resets(g: &TemporalGraph, path: &[Vertex]) -> Result<usize, OracleError> {
    let per_edge = labels_along(g, path)?;
    Ok(greedy_resets(&per_edge))
}

pub fn greedy_resets(per_edge: &[Vec<Label>]) -> usize {
    let mut cur: Label = 0;
    let mut resets = 0;
    for labels in per_edge {
        match labels.iter().copied().filter(|&l| l >= cur).min() {
            Some(l) => cur = l,
            None => {
                resets += 1;
                cur = labels.iter().copied().min().expect("every edge carries a label");
            }
        }
    }
    resets
}

/// Reference value for [`greedy_resets`]: tries every realization.
pub fn exhaustive_resets(per_edge: &[Vec<Label>]) -> usize {
    fn go(per_edge: &[Vec<Label>], i: usize, prev: Option<Label>, breaks: usize, best: &mut usize) {
        if breaks >= *best {
            return;
        }
        if i == per_edge.len() {
            *best = breaks;
            return;
        }
        for &l in &per_edge[i] {
            let extra = usize::from(prev.is_some_and(|p| l < p));
            go(per_edge, i + 1, Some(l), breaks + extra, best);
        }
    }
    let mut best = usize::MAX;
    go(per_edge, 0, None, 0, &mut best);
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Largest [`path_min_resets`] over simple `(s,z)`-paths of the underlying
/// graph; 0 when there is none.
pub fn distance_to_temporality(g: &TemporalGraph, s: Vertex, z: Vertex) -> usize {
    let labels = g.edge_labels();
    let adj = g.underlying().adjacency();
    let mut best = 0;
    let mut on_path = vec![false; g.n()];
    let mut stack: Vec<Vec<Label>> = Vec::new();
    fn dfs(
        v: Vertex,
        z: Vertex,
        adj: &[Vec<Vertex>],
        labels: &std::collections::HashMap<(Vertex, Vertex), Vec<Label>>,
        on_path: &mut [bool],
        stack: &mut Vec<Vec<Label>>,
        best: &mut usize,
    ) {
        if v == z {
            *best = (*best).max(greedy_resets(stack));
            return;
        }
        on_path[v] = true;
        for &w in &adj[v] {
            if !on_path[w] {
                stack.push(labels[&(v.min(w), v.max(w))].clone());
                dfs(w, z, adj, labels, on_path, stack, best);
                stack.pop();
            }
        }
        on_path[v] = false;
    }
    if s != z {
        dfs(s, z, &adj, &labels, &mut on_path, &mut stack, &mut best);
    }
    best
}

/// Existence of a temporal `(s,z)`-path by enumerating every label-monotone
/// sequence of distinct vertices.
pub fn temporal_path_exists_exhaustive(g: &TemporalGraph, s: Vertex, z: Vertex, mode: Mode) -> bool {
    fn dfs(g: &TemporalGraph, v: Vertex, z: Vertex, prev: Label, mode: Mode, used: &mut [bool]) -> bool {
        if v == z {
            return true;
        }
        used[v] = true;
        for e in g.edges() {
            let ok = match mode {
                Mode::NonStrict => e.t >= prev,
                Mode::Strict => e.t > prev,
            };
            if ok && e.touches(v) {
                let w = e.other(v);
                if !used[w] && dfs(g, w, z, e.t, mode, used) {
                    used[v] = false;
                    return true;
                }
            }
        }
        used[v] = false;
        false
    }
    s != z && dfs(g, s, z, 0, mode, &mut vec![false; g.n()])
}
