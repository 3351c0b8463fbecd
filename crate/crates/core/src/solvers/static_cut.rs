//! Minimum `(s,z)`-vertex cut of a static graph by unit-capacity max flow on
//! the vertex-split digraph.

use std::collections::VecDeque;

use crate::graph::{StaticGraph, Vertex};

use super::SolveError;

const INF: u32 = u32::MAX;

struct Arc {
    to: usize,
    cap: u32,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// BFS in the residual graph; returns the arc used to enter each node.
    fn residual_bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut via = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &ai in &self.out[x] {
                let a = &self.arcs[ai];
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    via[a.to] = Some(ai);
                    queue.push_back(a.to);
                }
            }
        }
        via
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let via = self.residual_bfs(source);
        let mut r: Vec<bool> = via.iter().map(Option::is_some).collect();
        r[source] = true;
        r
    }
}

fn inn(v: Vertex) -> usize {
    2 * v
}

fn out(v: Vertex) -> usize {
    2 * v + 1
}

/// Minimum vertex set avoiding `s` and `z` whose removal disconnects them.
/// Among minimum cuts, the one closest to `s` is returned.
pub fn static_min_vertex_cut(g: &StaticGraph, s: Vertex, z: Vertex) -> Result<Vec<Vertex>, SolveError> {
    min_cut_with_flow(g, s, z).map(|(cut, _)| cut)
}

/// The cut plus the flow value, i.e. the number of internally vertex-disjoint
/// `(s,z)`-paths found.
pub(crate) fn min_cut_with_flow(g: &StaticGraph, s: Vertex, z: Vertex) -> Result<(Vec<Vertex>, usize), SolveError> {
    if g.has_edge(s, z) {
        return Err(SolveError::TerminalsAdjacent { s, z });
    }
    let mut net = Network::new(2 * g.n());
    for v in 0..g.n() {
        let cap = if v == s || v == z { INF } else { 1 };
        net.add(inn(v), out(v), cap);
    }
    for &(a, b) in g.edges() {
        net.add(out(a), inn(b), INF);
        net.add(out(b), inn(a), INF);
    }
    let (source, sink) = (out(s), inn(z));
    let mut flow = 0;
    loop {
        let via = net.residual_bfs(source);
        if via[sink].is_none() {
            break;
        }
        let mut cur = sink;
        while cur != source {
            let ai = via[cur].expect("path arc");
            net.arcs[ai].cap = net.arcs[ai].cap.saturating_sub(1);
            let back = ai ^ 1;
            net.arcs[back].cap = net.arcs[back].cap.saturating_add(1);
            cur = net.arcs[back].to;
        }
        flow += 1;
    }
    let reach = net.reachable(source);
    let cut = (0..g.n())
        .filter(|&v| v != s && v != z && reach[inn(v)] && !reach[out(v)])
        .collect();
    Ok((cut, flow))
}
