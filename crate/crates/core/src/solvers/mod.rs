//! Solver backends. Every `solve_*` function returns `Ok(None)` when no
//! separator of size at most `k` exists.

pub mod auto;
pub mod interval_dp;
pub mod search_tree;
pub mod static_cut;
pub mod tree_decomposition;
pub mod treewidth_dp;

use thiserror::Error;

use crate::classes::OrderViolation;
use crate::graph::Vertex;
use crate::solvers::tree_decomposition::TdError;

pub use auto::{solve_auto, static_cut_graph, AutoReport, Backend, Hints};
pub use interval_dp::{interval_dp_minimum, solve_interval_dp};
pub use search_tree::solve_search_tree;
pub use static_cut::static_min_vertex_cut;
pub use tree_decomposition::{build_tree_decomposition, NiceNode, NiceTreeDecomposition, NodeKind, TreeDecomposition};
pub use treewidth_dp::{solve_treewidth_dp, treewidth_dp_minimum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("ordering is not compatible with layer {}: {}", .0.t, .0)]
    IncompatibleOrdering(OrderViolation),
    #[error("ordering is not a permutation of the vertices")]
    NotAPermutation,
    #[error("terminals {s} and {z} are adjacent")]
    TerminalsAdjacent { s: Vertex, z: Vertex },
    #[error("decomposition does not fit the instance: {0}")]
    DecompositionMismatch(String),
    #[error(transparent)]
    Decomposition(#[from] TdError),
    #[error("backend `{0}` only handles non-strict separation")]
    StrictUnsupported(&'static str),
}
