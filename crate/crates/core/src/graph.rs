//! Temporal and static graph data model.
//!
//! Vertices are dense `0..n` indices. Time labels are `1..=tau`; a layer may be
//! empty, so `tau` can exceed the largest label actually carried by an edge.

use std::collections::HashMap;

use thiserror::Error;

pub type Vertex = usize;
pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop ({u},{v},{t})")]
    SelfLoop { u: Vertex, v: Vertex, t: Label },
    #[error("label of ({u},{v},{t}) outside [1, {tau}]")]
    LabelOutOfRange {
        u: Vertex,
        v: Vertex,
        t: Label,
        tau: Label,
    },
    #[error("layer {t} outside [1, {tau}]")]
    InvalidLayer { t: Label, tau: Label },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("maximum label must be at least 1")]
    EmptyHorizon,
    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },
    #[error("exponent must be at least 1")]
    NonpositiveExponent,
}

/// A time-edge `({u,v}, t)`, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub t: Label,
}

impl TimeEdge {
    /// Canonical form of `({a,b}, t)`. Does not reject self-loops.
    pub fn new(a: Vertex, b: Vertex, t: Label) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        TimeEdge { u, v, t }
    }

    /// Sort key: label first, then endpoints.
    pub fn key(&self) -> (Label, Vertex, Vertex) {
        (self.t, self.u, self.v)
    }

    pub fn pair(&self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

/// Old-to-new index map produced by [`TemporalGraph::delete_vertices`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    old_to_new: Vec<Option<Vertex>>,
    new_to_old: Vec<Vertex>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    pub fn forward(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn back(&self, new: Vertex) -> Vertex {
        self.new_to_old[new]
    }

    pub fn survivors(&self) -> &[Vertex] {
        &self.new_to_old
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalGraph {
    n: usize,
    tau: Label,
    edges: Vec<TimeEdge>,
    // layer_start[t] .. layer_start[t + 1] is the slice of edges labelled t
    layer_start: Vec<usize>,
}

impl TemporalGraph {
    /// Builds the canonical graph: edges sorted by `(t, u, v)`, duplicates removed.
    pub fn build<I>(n: usize, tau: Label, raw_edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Label)>,
    {
        if tau == 0 {
            return Err(GraphError::EmptyHorizon);
        }
        let mut edges = Vec::new();
        for (a, b, t) in raw_edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { u: a, v: b, t });
            }
            if t == 0 || t > tau {
                return Err(GraphError::LabelOutOfRange { u: a, v: b, t, tau });
            }
            edges.push(TimeEdge::new(a, b, t));
        }
        Ok(Self::from_canonical_parts(n, tau, edges))
    }

    pub fn edgeless(n: usize, tau: Label) -> Result<Self, GraphError> {
        Self::build(n, tau, std::iter::empty())
    }

    /// Edges must already satisfy the per-edge invariants.
    pub(crate) fn from_canonical_parts(n: usize, tau: Label, mut edges: Vec<TimeEdge>) -> Self {
        edges.sort_unstable_by_key(TimeEdge::key);
        edges.dedup();
        let mut layer_start = vec![0usize; tau as usize + 2];
        for e in &edges {
            layer_start[e.t as usize + 1] += 1;
        }
        for t in 1..layer_start.len() {
            layer_start[t] += layer_start[t - 1];
        }
        TemporalGraph {
            n,
            tau,
            edges,
            layer_start,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> Label {
        self.tau
    }

    pub fn edges(&self) -> &[TimeEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Time-edges carrying label `t`, in canonical order. Empty outside `[1, tau]`.
    pub fn layer_edges(&self, t: Label) -> &[TimeEdge] {
        if t == 0 || t > self.tau {
            return &[];
        }
        let t = t as usize;
        &self.edges[self.layer_start[t]..self.layer_start[t + 1]]
    }

    pub fn layer(&self, t: Label) -> Result<StaticGraph, GraphError> {
        if t == 0 || t > self.tau {
            return Err(GraphError::InvalidLayer { t, tau: self.tau });
        }
        Ok(StaticGraph::from_sorted_unique(
            self.n,
            self.layer_edges(t).iter().map(TimeEdge::pair).collect(),
        ))
    }

    /// The layer edge sets `E_1, ..., E_tau` as sorted pair lists.
    pub fn layer_pairs(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        (1..=self.tau)
            .map(|t| self.layer_edges(t).iter().map(TimeEdge::pair).collect())
            .collect()
    }

    pub fn underlying(&self) -> StaticGraph {
        StaticGraph::new(self.n, self.edges.iter().map(TimeEdge::pair))
            .expect("time-edges are valid static edges")
    }

    /// Labels of every underlying edge, ascending.
    pub fn edge_labels(&self) -> HashMap<(Vertex, Vertex), Vec<Label>> {
        let mut map: HashMap<(Vertex, Vertex), Vec<Label>> = HashMap::new();
        for e in &self.edges {
            map.entry(e.pair()).or_default().push(e.t);
        }
        map
    }

    pub fn has_time_edge(&self, a: Vertex, b: Vertex) -> bool {
        let e = TimeEdge::new(a, b, 0);
        self.edges.iter().any(|x| x.u == e.u && x.v == e.v)
    }

    /// Removes `removed` and every incident time-edge. Survivors keep their
    /// relative order and are renumbered densely.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> Result<(TemporalGraph, VertexMap), GraphError> {
        let mut gone = vec![false; self.n];
        for &x in removed {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
            gone[x] = true;
        }
        let mut old_to_new = vec![None; self.n];
        let mut new_to_old = Vec::new();
        for (old, &g) in gone.iter().enumerate() {
            if !g {
                old_to_new[old] = Some(new_to_old.len());
                new_to_old.push(old);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| match (old_to_new[e.u], old_to_new[e.v]) {
                (Some(u), Some(v)) => Some(TimeEdge::new(u, v, e.t)),
                _ => None,
            })
            .collect();
        let g = TemporalGraph::from_canonical_parts(new_to_old.len(), self.tau, edges);
        Ok((g, VertexMap { old_to_new, new_to_old }))
    }

    /// `G[X]`: keeps exactly the listed vertices.
    pub fn induced(&self, keep: &[Vertex]) -> Result<(TemporalGraph, VertexMap), GraphError> {
        let mut keep_mask = vec![false; self.n];
        for &x in keep {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
            keep_mask[x] = true;
        }
        let removed: Vec<Vertex> = (0..self.n).filter(|&v| !keep_mask[v]).collect();
        self.delete_vertices(&removed)
    }

    /// `self ∘ other`: labels of `other` shifted by `self.tau`.
    pub fn concat(&self, other: &TemporalGraph) -> Result<TemporalGraph, GraphError> {
        if self.n != other.n {
            return Err(GraphError::VertexCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let shift = self.tau;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|e| TimeEdge { t: e.t + shift, ..*e }))
            .collect();
        Ok(TemporalGraph::from_canonical_parts(self.n, self.tau + other.tau, edges))
    }

    /// `self^x`, iterated self-concatenation.
    pub fn power(&self, x: u32) -> Result<TemporalGraph, GraphError> {
        if x == 0 {
            return Err(GraphError::NonpositiveExponent);
        }
        let mut edges = Vec::with_capacity(self.edges.len() * x as usize);
        for rep in 0..x {
            let shift = rep * self.tau;
            edges.extend(self.edges.iter().map(|e| TimeEdge { t: e.t + shift, ..*e }));
        }
        Ok(TemporalGraph::from_canonical_parts(self.n, self.tau * x, edges))
    }

    /// `g1 ∘ g2`, or `g1^x` when `g2` is absent.
    pub fn concat_power(
        g1: &TemporalGraph,
        g2: Option<&TemporalGraph>,
        x: Option<u32>,
    ) -> Result<TemporalGraph, GraphError> {
        match (g2, x) {
            (Some(g2), _) => g1.concat(g2),
            (None, Some(x)) => g1.power(x),
            (None, None) => Ok(g1.clone()),
        }
    }

    /// Builds a graph from explicit layer edge sets; layer `i` of the result
    /// (1-based) is `layers[i - 1]`.
    pub fn from_layers(n: usize, layers: &[Vec<(Vertex, Vertex)>]) -> Result<TemporalGraph, GraphError> {
        let tau = layers.len() as Label;
        TemporalGraph::build(
            n,
            tau,
            layers
                .iter()
                .enumerate()
                .flat_map(|(i, l)| l.iter().map(move |&(a, b)| (a, b, i as Label + 1))),
        )
    }

    /// Same edges with the horizon widened to `tau >= self.tau`.
    pub fn with_tau(&self, tau: Label) -> TemporalGraph {
        assert!(tau >= self.tau);
        TemporalGraph::from_canonical_parts(self.n, tau, self.edges.clone())
    }
}

/// Undirected simple graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StaticGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl StaticGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { u: a, v: b, t: 0 });
            }
            out.push(if a < b { (a, b) } else { (b, a) });
        }
        out.sort_unstable();
        out.dedup();
        Ok(StaticGraph { n, edges: out })
    }

    fn from_sorted_unique(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        StaticGraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }
}
