//! Dynamic program over a vertex ordering that every layer respects as a
//! unit interval graph.
//!
//! Entry `T[t][i]` is a minimum set `S` such that in the first `t` layers
//! minus `S` nothing beyond position `i` is reachable from `s`.

use std::cmp::Ordering;

use crate::classes::{check_order_compatible, ClassError};
use crate::graph::{Label, Vertex};
use crate::oracle::{Instance, Separator};

use super::SolveError;

/// A table entry over window positions; `Top` stands for every position
/// strictly between the terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Set(Vec<usize>),
    Top,
}

impl Entry {
    fn size(&self, m: usize) -> usize {
        match self {
            Entry::Set(v) => v.len(),
            Entry::Top => m - 2,
        }
    }

    fn union(&self, other: &Entry) -> Entry {
        match (self, other) {
            (Entry::Set(a), Entry::Set(b)) => {
                let mut out = a.clone();
                out.extend_from_slice(b);
                out.sort_unstable();
                out.dedup();
                Entry::Set(out)
            }
            _ => Entry::Top,
        }
    }

    /// Smaller size first, then the lexicographically smaller set, `Top` last.
    fn cmp_rank(&self, other: &Entry, m: usize) -> Ordering {
        self.size(m).cmp(&other.size(m)).then_with(|| match (self, other) {
            (Entry::Set(a), Entry::Set(b)) => a.cmp(b),
            (Entry::Set(_), Entry::Top) => Ordering::Less,
            (Entry::Top, Entry::Set(_)) => Ordering::Greater,
            (Entry::Top, Entry::Top) => Ordering::Equal,
        })
    }
}

/// The filled table together with the window it was computed on.
#[derive(Debug, Clone)]
pub struct IntervalTable {
    /// `window[p]` is the original vertex at position `p`; `s` first, `z` last.
    window: Vec<Vertex>,
    tau: Label,
    cells: Vec<Entry>,
}

impl IntervalTable {
    fn m(&self) -> usize {
        self.window.len()
    }

    fn idx(&self, t: Label, i: usize) -> usize {
        (t as usize - 1) * (self.m() - 1) + i
    }

    /// Entry `T[t, i]` with `t` in `1..=tau` and `i` in `1..n-1` (1-based
    /// window positions), as original vertices.
    pub fn get(&self, t: Label, i: usize) -> Separator {
        self.resolve(&self.cells[self.idx(t, i - 1)])
    }

    pub fn window(&self) -> &[Vertex] {
        &self.window
    }

    fn resolve(&self, e: &Entry) -> Separator {
        match e {
            Entry::Set(ps) => Separator::new(ps.iter().map(|&p| self.window[p])),
            Entry::Top => Separator::new(self.window[1..self.m() - 1].iter().copied()),
        }
    }

    /// `argmin_i |T[tau, i]|`.
    pub fn best(&self) -> Separator {
        let m = self.m();
        let last = (0..m - 1)
            .map(|i| &self.cells[self.idx(self.tau, i)])
            .min_by(|a, b| a.cmp_rank(b, m))
            .expect("window holds both terminals");
        self.resolve(last)
    }
}

/// Fills the table for `inst` under `ordering`.
pub fn interval_dp_table(inst: &Instance, ordering: &[Vertex]) -> Result<IntervalTable, SolveError> {
    let g = inst.graph();
    match check_order_compatible(g, ordering) {
        Err(ClassError::NotAPermutation) => return Err(SolveError::NotAPermutation),
        Err(e) => unreachable!("{e}"),
        Ok(Some(v)) => return Err(SolveError::IncompatibleOrdering(v)),
        Ok(None) => {}
    }
    let mut order = ordering.to_vec();
    let ps = order.iter().position(|&v| v == inst.s()).expect("permutation");
    let pz = order.iter().position(|&v| v == inst.z()).expect("permutation");
    if ps > pz {
        order.reverse();
    }
    let lo = order.iter().position(|&v| v == inst.s()).unwrap();
    let hi = order.iter().position(|&v| v == inst.z()).unwrap();
    let window: Vec<Vertex> = order[lo..=hi].to_vec();
    let m = window.len();
    let mut position = vec![usize::MAX; g.n()];
    for (p, &v) in window.iter().enumerate() {
        position[v] = p;
    }
    let tau = g.tau();

    // larger-side neighbourhoods and z-adjacency per layer, window positions only
    let mut larger: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m]; tau as usize + 1];
    let mut near_z = vec![vec![false; m]; tau as usize + 1];
    for e in g.edges() {
        let (a, b) = (position[e.u], position[e.v]);
        if a == usize::MAX || b == usize::MAX {
            continue;
        }
        let (a, b) = (a.min(b), a.max(b));
        let t = e.t as usize;
        larger[t][a].push(b);
        if b == m - 1 {
            near_z[t][a] = true;
        }
    }
    for layer in &mut larger {
        for l in layer.iter_mut() {
            l.sort_unstable();
        }
    }

    let widest = |p: usize, from: Label, to: Label| -> Entry {
        if (from..=to).any(|t| near_z[t as usize][p]) {
            return Entry::Top;
        }
        let mut best: Option<&Vec<usize>> = None;
        for t in from..=to {
            let cand = &larger[t as usize][p];
            // strictly larger wins, so ties keep the earliest label
            if best.is_none_or(|b| cand.len() > b.len()) {
                best = Some(cand);
            }
        }
        Entry::Set(best.cloned().unwrap_or_default())
    };

    let cols = m - 1;
    let mut cells: Vec<Entry> = vec![Entry::Top; tau as usize * cols];
    let at = |t: Label, i: usize| (t as usize - 1) * cols + i;
    for t in 1..=tau {
        for i in 0..cols {
            let value = if i == 0 {
                widest(0, 1, t)
            } else {
                let mut best = cells[at(t, i - 1)].clone();
                let offer = |cand: Entry, best: &mut Entry| {
                    if cand.cmp_rank(best, m) == Ordering::Less {
                        *best = cand;
                    }
                };
                offer(widest(i, 1, t), &mut best);
                for tp in 1..t {
                    let tail = widest(i, tp + 1, t);
                    for ip in 0..i {
                        offer(cells[at(tp, ip)].union(&tail), &mut best);
                    }
                }
                best
            };
            cells[at(t, i)] = value;
        }
    }
    Ok(IntervalTable { window, tau, cells })
}

/// Minimum separator read off the last table row.
pub fn interval_dp_minimum(inst: &Instance, ordering: &[Vertex]) -> Result<Separator, SolveError> {
    Ok(interval_dp_table(inst, ordering)?.best())
}

pub fn solve_interval_dp(inst: &Instance, ordering: &[Vertex]) -> Result<Option<Separator>, SolveError> {
    let best = interval_dp_minimum(inst, ordering)?;
    Ok((best.len() <= inst.k()).then_some(best))
}
