//! Minimum temporal `(s,z)`-separators.
//!
//! A temporal graph carries time-labeled edges; a temporal path uses
//! non-decreasing labels (strictly increasing in [`Mode::Strict`]). A
//! separator is a vertex set avoiding `s` and `z` whose deletion destroys every
//! temporal `(s,z)`-path. This crate provides exact solvers for several
//! structural classes, brute-force oracles, class detectors, answer-preserving
//! transformations and a seeded instance generator.

pub mod classes;
pub mod cli;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reachability;
pub mod reductions;
pub mod solvers;

pub use graph::{GraphError, Label, StaticGraph, TemporalGraph, TimeEdge, Vertex};
pub use oracle::{is_separator, min_separator_bruteforce, Instance, InstanceError, Separator};
pub use reachability::{find_temporal_path, Mode, TemporalPath};
pub use solvers::{solve_auto, Backend, Hints, SolveError};
