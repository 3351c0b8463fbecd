//! Bounded search tree: find a temporal path, branch on deleting one of its
//! inner vertices.

use crate::graph::Vertex;
use crate::oracle::{Instance, Separator};
use crate::reachability::{find_temporal_path_avoiding, Mode};

/// Statistics of one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub longest_path: usize,
}

fn branch(
    inst: &Instance,
    mode: Mode,
    budget: usize,
    blocked: &mut [bool],
    chosen: &mut Vec<Vertex>,
    stats: &mut SearchStats,
) -> bool {
    stats.nodes += 1;
    let Some(path) = find_temporal_path_avoiding(inst.graph(), inst.s(), inst.z(), mode, blocked) else {
        return true;
    };
    stats.longest_path = stats.longest_path.max(path.len());
    if budget == 0 {
        return false;
    }
    let verts = path.vertices();
    for &v in &verts[1..verts.len() - 1] {
        blocked[v] = true;
        chosen.push(v);
        if branch(inst, mode, budget - 1, blocked, chosen, stats) {
            return true;
        }
        chosen.pop();
        blocked[v] = false;
    }
    false
}

/// A separator of size at most `k`, found with budgets `0, 1, ..., k` in
/// turn so the result is also of minimum size.
pub fn solve_search_tree(inst: &Instance, mode: Mode) -> Option<Separator> {
    solve_search_tree_with_stats(inst, mode).0
}

pub fn solve_search_tree_with_stats(inst: &Instance, mode: Mode) -> (Option<Separator>, SearchStats) {
    let mut stats = SearchStats::default();
    let mut blocked = vec![false; inst.graph().n()];
    for budget in 0..=inst.k() {
        let mut chosen = Vec::new();
        if branch(inst, mode, budget, &mut blocked, &mut chosen, &mut stats) {
            return (Some(Separator::new(chosen)), stats);
        }
    }
    (None, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TemporalGraph;
    use crate::oracle::{is_separator, min_separator_bruteforce};
    use proptest::prelude::*;

    fn g1() -> TemporalGraph {
        TemporalGraph::build(4, 2, [(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn g1_budgets() {
        let i = Instance::new(g1(), 0, 3, 1).unwrap();
        assert_eq!(solve_search_tree(&i, Mode::NonStrict).unwrap().vertices(), &[1]);
        assert_eq!(solve_search_tree(&i.with_budget(0), Mode::NonStrict), None);
    }

    #[test]
    fn no_path_needs_nothing() {
        let g2 = TemporalGraph::build(4, 2, [(1, 3, 1), (0, 1, 2)]).unwrap();
        let i = Instance::new(g2, 0, 3, 0).unwrap();
        assert_eq!(solve_search_tree(&i, Mode::NonStrict), Some(Separator::default()));
    }

    proptest! {
        #[test]
        fn finds_a_minimum_whenever_one_fits(
            n in 3usize..7,
            raw in proptest::collection::vec((0usize..7, 0usize..7, 1u32..4), 0..16),
        ) {
            let raw: Vec<_> = raw.into_iter().filter(|&(a, b, _)| a < n && b < n && a != b).collect();
            let g = TemporalGraph::build(n, 3, raw).unwrap();
            prop_assume!(!g.has_time_edge(0, n - 1));
            for mode in [Mode::NonStrict, Mode::Strict] {
                let i = Instance::new(g.clone(), 0, n - 1, n).unwrap();
                let best = min_separator_bruteforce(&i, mode).len();
                let found = solve_search_tree(&i.with_budget(best), mode).unwrap();
                prop_assert_eq!(found.len(), best);
                prop_assert!(is_separator(&i, found.vertices(), mode).unwrap());
                if best > 0 {
                    prop_assert!(solve_search_tree(&i.with_budget(best - 1), mode).is_none());
                }
            }
        }
    }
}
