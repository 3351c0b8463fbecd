//! Backend selection by detected structure and available hints.

use crate::classes::{check_order_compatible, monotone, periodic};
use crate::graph::{Label, StaticGraph, TemporalGraph, Vertex};
use crate::oracle::{distance_to_temporality, Instance, Separator};
use crate::reachability::Mode;

use super::interval_dp::solve_interval_dp;
use super::search_tree::solve_search_tree;
use super::static_cut::static_min_vertex_cut;
use super::tree_decomposition::{build_tree_decomposition, TreeDecomposition};
use super::treewidth_dp::{solve_treewidth_dp, table_cells};
use super::SolveError;

pub const DEFAULT_WORK_CAP: u128 = 100_000_000;

/// Above this many vertices the periodic rule skips the (exponential)
/// distance-to-temporality computation and only uses `r >= n`.
const DISTANCE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    StaticCut,
    Interval,
    Treewidth,
    SearchTree,
    Brute,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::StaticCut => "static-cut",
            Backend::Interval => "interval",
            Backend::Treewidth => "treewidth",
            Backend::SearchTree => "search-tree",
            Backend::Brute => "brute",
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Hints {
    pub ordering: Option<Vec<Vertex>>,
    pub decomposition: Option<TreeDecomposition>,
    /// Treewidth DP cell budget; `None` reads `TEMPO_SEP_WORK_CAP` or uses
    /// [`DEFAULT_WORK_CAP`].
    pub work_cap: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoReport {
    pub separator: Option<Separator>,
    pub backend: Backend,
}

pub fn work_cap_from_env() -> u128 {
    std::env::var("TEMPO_SEP_WORK_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WORK_CAP)
}

fn within(inst: &Instance, sep: Vec<Vertex>) -> Option<Separator> {
    (sep.len() <= inst.k()).then(|| Separator::new(sep))
}

fn static_on(inst: &Instance, layer: &StaticGraph) -> Result<AutoReport, SolveError> {
    let cut = static_min_vertex_cut(layer, inst.s(), inst.z())?;
    Ok(AutoReport {
        separator: within(inst, cut),
        backend: Backend::StaticCut,
    })
}

/// Whether every underlying `(s,z)`-path is realised within the periods.
fn periods_suffice(g: &TemporalGraph, s: Vertex, z: Vertex, p: Label, r: Label) -> bool {
    if r as usize >= g.n() {
        return true;
    }
    if g.n() > DISTANCE_LIMIT {
        return false;
    }
    let block = TemporalGraph::build(
        g.n(),
        p,
        g.edges().iter().filter(|e| e.t <= p).map(|e| (e.u, e.v, e.t)),
    )
    .expect("block edges are valid");
    // d breaks need d + 1 monotone runs, one per period
    distance_to_temporality(&block, s, z) < r as usize
}

/// The static graph whose minimum vertex cut is the temporal optimum, when
/// the instance is single-peaked (the peak layer), 1-periodic or has enough
/// periods (the underlying graph).
pub fn static_cut_graph(inst: &Instance) -> Option<StaticGraph> {
    let g = inst.graph();
    if let Some(m) = monotone(g) {
        if m.peaks.len() == 1 {
            return Some(g.layer(m.peaks[0]).expect("peak is a layer"));
        }
    }
    let per = periodic(g);
    (per.p == 1 || periods_suffice(g, inst.s(), inst.z(), per.p, per.r)).then(|| g.underlying())
}

/// Picks the first applicable rule: single-peaked, 1-periodic, periodic with
/// enough periods, compatible ordering, decomposition under the work cap,
/// then the search tree. Strict separation always uses the search tree.
pub fn solve_auto(inst: &Instance, hints: &Hints, mode: Mode) -> Result<AutoReport, SolveError> {
    let g = inst.graph();
    if mode == Mode::Strict {
        return Ok(AutoReport {
            separator: solve_search_tree(inst, mode),
            backend: Backend::SearchTree,
        });
    }
    if let Some(layer) = static_cut_graph(inst) {
        return static_on(inst, &layer);
    }
    if let Some(ord) = &hints.ordering {
        if let Ok(None) = check_order_compatible(g, ord) {
            return Ok(AutoReport {
                separator: solve_interval_dp(inst, ord)?,
                backend: Backend::Interval,
            });
        }
    }
    if let Some(td) = &hints.decomposition {
        let nice = build_tree_decomposition(&g.underlying(), inst.s(), inst.z(), Some(td))?;
        let cap = hints.work_cap.unwrap_or_else(work_cap_from_env);
        if table_cells(&nice, g.tau()) <= cap {
            return Ok(AutoReport {
                separator: solve_treewidth_dp(inst, &nice)?,
                backend: Backend::Treewidth,
            });
        }
    }
    Ok(AutoReport {
        separator: solve_search_tree(inst, mode),
        backend: Backend::SearchTree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_separator_bruteforce;

    fn check(inst: &Instance, hints: &Hints, expect: Backend) {
        let report = solve_auto(inst, hints, Mode::NonStrict).unwrap();
        assert_eq!(report.backend, expect);
        let best = min_separator_bruteforce(inst, Mode::NonStrict).len();
        assert_eq!(report.separator.map(|s| s.len()), (best <= inst.k()).then_some(best));
    }

    #[test]
    fn single_peaked_uses_static_cut() {
        let g = TemporalGraph::from_layers(5, &[vec![(0, 1)], vec![(0, 1), (1, 4), (0, 2), (2, 4)], vec![(0, 2)]]).unwrap();
        check(&Instance::new(g, 0, 4, 2).unwrap(), &Hints::default(), Backend::StaticCut);
    }

    #[test]
    fn one_layer_uses_static_cut() {
        let g = TemporalGraph::build(4, 1, [(0, 1, 1), (1, 3, 1), (0, 2, 1)]).unwrap();
        check(&Instance::new(g, 0, 3, 1).unwrap(), &Hints::default(), Backend::StaticCut);
    }

    #[test]
    fn generic_falls_back_to_search_tree() {
        let g = TemporalGraph::build(4, 2, [(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 1)]).unwrap();
        check(&Instance::new(g, 0, 3, 1).unwrap(), &Hints::default(), Backend::SearchTree);
    }

    #[test]
    fn hints_route_to_dynamic_programs() {
        let g = TemporalGraph::build(4, 2, [(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 1)]).unwrap();
        let inst = Instance::new(g.clone(), 0, 3, 1).unwrap();
        let td = TreeDecomposition::min_fill(&g.underlying());
        let hints = Hints {
            decomposition: Some(td.clone()),
            ..Hints::default()
        };
        check(&inst, &hints, Backend::Treewidth);
        let capped = Hints {
            decomposition: Some(td),
            work_cap: Some(1),
            ..Hints::default()
        };
        check(&inst, &capped, Backend::SearchTree);

        let path = TemporalGraph::build(4, 3, [(0, 1, 2), (1, 2, 1), (1, 2, 3), (2, 3, 1)]).unwrap();
        let inst = Instance::new(path, 0, 3, 1).unwrap();
        let hints = Hints {
            ordering: Some(vec![0, 1, 2, 3]),
            ..Hints::default()
        };
        check(&inst, &hints, Backend::Interval);
        let wrong = Hints {
            ordering: Some(vec![0, 2, 1, 3]),
            ..Hints::default()
        };
        check(&inst, &wrong, Backend::SearchTree);
    }
}
