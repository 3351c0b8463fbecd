//! Tree decompositions: validation, a min-fill heuristic and conversion into
//! nice form with both terminals in every bag.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{StaticGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdError {
    #[error("invalid decomposition: {property} ({location})")]
    InvalidDecomposition { property: &'static str, location: String },
}

fn invalid(property: &'static str, location: impl Into<String>) -> TdError {
    TdError::InvalidDecomposition {
        property,
        location: location.into(),
    }
}

/// An unrooted tree decomposition; bags are sorted vertex lists and tree
/// edges refer to bag positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    n: usize,
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(n: usize, bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|b| {
                let mut b = b;
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { n, bags, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest bag size minus one; `-1` is reported as 0.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Checks the tree shape and the three decomposition properties against `g`.
    pub fn validate(&self, g: &StaticGraph) -> Result<(), TdError> {
        if self.n != g.n() {
            return Err(invalid("vertex count", format!("decomposition has n={}, graph has n={}", self.n, g.n())));
        }
        let nb = self.bags.len();
        if nb == 0 {
            return if self.n == 0 { Ok(()) } else { Err(invalid("vertex coverage", "no bags")) };
        }
        for (i, bag) in self.bags.iter().enumerate() {
            if let Some(&v) = bag.iter().find(|&&v| v >= self.n) {
                return Err(invalid("vertex range", format!("bag {i} holds vertex {v}")));
            }
        }
        for &(a, b) in &self.edges {
            if a >= nb || b >= nb || a == b {
                return Err(invalid("tree shape", format!("edge ({a},{b})")));
            }
        }
        if self.edges.len() != nb - 1 {
            return Err(invalid("tree shape", format!("{} bags but {} edges", nb, self.edges.len())));
        }
        let adj = self.neighbours();
        let mut seen = vec![false; nb];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(invalid("tree shape", format!("bag {i} is not connected to bag 0")));
        }

        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holders[v].push(i);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(invalid("vertex coverage", format!("vertex {v} is in no bag")));
            }
            // bags holding v must induce a connected subtree
            let mut inside = vec![false; nb];
            for &h in hs {
                inside[h] = true;
            }
            let mut reached = vec![false; nb];
            reached[hs[0]] = true;
            let mut stack = vec![hs[0]];
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inside[y] && !reached[y] {
                        reached[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            if count != hs.len() {
                return Err(invalid("connectivity", format!("bags holding vertex {v} are not connected")));
            }
        }
        for &(a, b) in g.edges() {
            let covered = self
                .bags
                .iter()
                .any(|bag| bag.binary_search(&a).is_ok() && bag.binary_search(&b).is_ok());
            if !covered {
                return Err(invalid("edge coverage", format!("edge {{{a},{b}}} is in no bag")));
            }
        }
        Ok(())
    }

    /// Min-fill elimination, ties broken by smaller degree, then smaller index.
    pub fn min_fill(g: &StaticGraph) -> TreeDecomposition {
        let n = g.n();
        if n == 0 {
            return TreeDecomposition::new(0, vec![Vec::new()], Vec::new());
        }
        let mut adj: Vec<BTreeSet<Vertex>> = g.adjacency().into_iter().map(|l| l.into_iter().collect()).collect();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        let mut bags = Vec::with_capacity(n);
        for _ in 0..n {
            let mut best: Option<(usize, usize, Vertex)> = None;
            for v in (0..n).filter(|&v| alive[v]) {
                let nb: Vec<Vertex> = adj[v].iter().copied().collect();
                let mut fill = 0;
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        if !adj[a].contains(&b) {
                            fill += 1;
                        }
                    }
                }
                let key = (fill, nb.len(), v);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
            let (_, _, v) = best.expect("a live vertex remains");
            let nb: Vec<Vertex> = adj[v].iter().copied().collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
            for &a in &nb {
                adj[a].remove(&v);
            }
            alive[v] = false;
            let mut bag = nb;
            bag.push(v);
            order.push(v);
            bags.push(bag);
        }
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        // each bag hangs below the bag of its earliest-eliminated neighbour;
        // roots of separate components are linked to the last bag
        let mut edges = Vec::with_capacity(n - 1);
        for (i, bag) in bags.iter().enumerate() {
            let parent = bag.iter().filter(|&&w| w != order[i]).map(|&w| rank[w]).min();
            match parent {
                Some(p) => edges.push((i, p)),
                None if i + 1 < n => edges.push((i, n - 1)),
                None => {}
            }
        }
        TreeDecomposition::new(n, bags, edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<Vertex>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

/// A rooted nice decomposition. Nodes are stored children first, so index
/// order is a valid bottom-up order; the root is the last node and its bag
/// is `{s, z}`, as are all leaf bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    n: usize,
    s: Vertex,
    z: Vertex,
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terminals(&self) -> (Vertex, Vertex) {
        (self.s, self.z)
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Rewrites `td` into nice form after adding `s` and `z` to every bag.
    pub fn from_decomposition(td: &TreeDecomposition, s: Vertex, z: Vertex) -> Self {
        let terminals: Vec<Vertex> = if s < z { vec![s, z] } else { vec![z, s] };
        let mut bags: Vec<Vec<Vertex>> = td
            .bags()
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.extend_from_slice(&terminals);
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        if bags.is_empty() {
            bags.push(terminals.clone());
        }
        let adj = td.neighbours();
        let adj = if adj.is_empty() { vec![Vec::new()] } else { adj };
        let mut builder = Builder {
            nodes: Vec::new(),
            terminals: terminals.clone(),
        };
        let top = builder.subtree(0, usize::MAX, &bags, &adj);
        let root = builder.morph(top, &terminals);
        debug_assert_eq!(root, builder.nodes.len() - 1);
        NiceTreeDecomposition {
            n: td.n(),
            s,
            z,
            nodes: builder.nodes,
        }
    }

    /// Structural checks: node kinds match bag differences, terminals are in
    /// every bag, leaves and root are `{s,z}`.
    pub fn validate_shape(&self) -> Result<(), TdError> {
        let mut terminals = vec![self.s, self.z];
        terminals.sort_unstable();
        for (i, x) in self.nodes.iter().enumerate() {
            if !x.bag.contains(&self.s) || !x.bag.contains(&self.z) {
                return Err(invalid("terminals in every bag", format!("node {i}")));
            }
            if x.children.iter().any(|&c| c >= i) {
                return Err(invalid("bottom-up order", format!("node {i}")));
            }
            let child_bag = |j: usize| &self.nodes[x.children[j]].bag;
            let ok = match x.kind {
                NodeKind::Leaf => x.children.is_empty() && x.bag == terminals,
                NodeKind::Join => x.children.len() == 2 && *child_bag(0) == x.bag && *child_bag(1) == x.bag,
                NodeKind::Introduce(v) => {
                    x.children.len() == 1 && x.bag.contains(&v) && {
                        let mut b = child_bag(0).clone();
                        b.push(v);
                        b.sort_unstable();
                        b == x.bag && !child_bag(0).contains(&v)
                    }
                }
                NodeKind::Forget(v) => {
                    x.children.len() == 1 && child_bag(0).contains(&v) && {
                        let b: Vec<Vertex> = child_bag(0).iter().copied().filter(|&w| w != v).collect();
                        b == x.bag
                    }
                }
            };
            if !ok {
                return Err(invalid("nice node kind", format!("node {i} ({:?})", x.kind)));
            }
        }
        if self.nodes.last().map(|x| &x.bag) != Some(&terminals) {
            return Err(invalid("root bag", "root bag must be the terminals"));
        }
        Ok(())
    }

    /// The unrooted decomposition formed by the nice tree's bags.
    pub fn as_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition::new(self.n, bags, edges)
    }
}

struct Builder {
    nodes: Vec<NiceNode>,
    terminals: Vec<Vertex>,
}

impl Builder {
    fn push(&mut self, bag: Vec<Vertex>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { bag, kind, children });
        self.nodes.len() - 1
    }

    /// Forgets everything not in `target`, then introduces what is missing.
    fn morph(&mut self, mut node: usize, target: &[Vertex]) -> usize {
        let current = self.nodes[node].bag.clone();
        let mut bag = current.clone();
        for &v in current.iter().filter(|v| !target.contains(v)) {
            bag.retain(|&w| w != v);
            node = self.push(bag.clone(), NodeKind::Forget(v), vec![node]);
        }
        for &v in target.iter().filter(|v| !current.contains(v)) {
            bag.push(v);
            bag.sort_unstable();
            node = self.push(bag.clone(), NodeKind::Introduce(v), vec![node]);
        }
        node
    }

    fn subtree(&mut self, x: usize, parent: usize, bags: &[Vec<Vertex>], adj: &[Vec<usize>]) -> usize {
        let mut branches = Vec::new();
        for &c in &adj[x] {
            if c != parent {
                let top = self.subtree(c, x, bags, adj);
                branches.push(self.morph(top, &bags[x]));
            }
        }
        if branches.is_empty() {
            let leaf = self.push(self.terminals.clone(), NodeKind::Leaf, Vec::new());
            return self.morph(leaf, &bags[x]);
        }
        let mut acc = branches[0];
        for &b in &branches[1..] {
            acc = self.push(bags[x].clone(), NodeKind::Join, vec![acc, b]);
        }
        acc
    }
}

/// Validates `external` against `g` if given, otherwise runs the min-fill
/// heuristic; the result is made nice with `s` and `z` in every bag.
pub fn build_tree_decomposition(
    g: &StaticGraph,
    s: Vertex,
    z: Vertex,
    external: Option<&TreeDecomposition>,
) -> Result<NiceTreeDecomposition, TdError> {
    let td = match external {
        Some(td) => {
            td.validate(g)?;
            td.clone()
        }
        None => TreeDecomposition::min_fill(g),
    };
    Ok(NiceTreeDecomposition::from_decomposition(&td, s, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle4() -> StaticGraph {
        StaticGraph::new(4, [(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn min_fill_on_cycle_and_tree() {
        let td = TreeDecomposition::min_fill(&cycle4());
        td.validate(&cycle4()).unwrap();
        assert!(td.width() <= 2);
        let nice = build_tree_decomposition(&cycle4(), 0, 3, None).unwrap();
        nice.validate_shape().unwrap();
        nice.as_decomposition().validate(&cycle4()).unwrap();
        assert!(nice.nodes().iter().all(|x| x.bag.len() <= 4));

        let tree = StaticGraph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(TreeDecomposition::min_fill(&tree).width(), 1);
    }

    #[test]
    fn validator_names_the_vertex() {
        // vertex 1 sits in bags 0 and 2 but not in bag 1 between them
        let path = StaticGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let td = TreeDecomposition::new(4, vec![vec![0, 1], vec![2, 3], vec![1, 2]], vec![(0, 1), (1, 2)]);
        match td.validate(&path) {
            Err(TdError::InvalidDecomposition { property, location }) => {
                assert_eq!(property, "connectivity");
                assert!(location.contains("vertex 1"), "{location}");
            }
            other => panic!("{other:?}"),
        }
        let missing = TreeDecomposition::new(4, vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert!(matches!(
            missing.validate(&path),
            Err(TdError::InvalidDecomposition { property: "edge coverage", .. })
        ));
        assert!(build_tree_decomposition(&path, 0, 3, Some(&missing)).is_err());
    }

    #[test]
    fn edgeless_and_disconnected_graphs() {
        let g = StaticGraph::new(5, [(0, 1), (3, 4)]).unwrap();
        let td = TreeDecomposition::min_fill(&g);
        td.validate(&g).unwrap();
        let nice = NiceTreeDecomposition::from_decomposition(&td, 0, 4);
        nice.validate_shape().unwrap();
        nice.as_decomposition().validate(&g).unwrap();
    }

    proptest! {
        #[test]
        fn heuristic_output_is_valid_and_nicifies(
            n in 2usize..10,
            raw in proptest::collection::vec((0usize..10, 0usize..10), 0..25),
        ) {
            let edges: Vec<_> = raw.into_iter().filter(|&(a, b)| a < n && b < n && a != b).collect();
            let g = StaticGraph::new(n, edges).unwrap();
            let td = TreeDecomposition::min_fill(&g);
            prop_assert!(td.validate(&g).is_ok());
            let nice = NiceTreeDecomposition::from_decomposition(&td, 0, n - 1);
            prop_assert!(nice.validate_shape().is_ok());
            prop_assert!(nice.as_decomposition().validate(&g).is_ok());
            prop_assert!(nice.width() <= td.width() + 2);
        }
    }
}
