//! Detectors for monotone, periodic, steady and interval-connected temporal
//! graphs, the peak reduction and the unit-interval ordering check.
//!
//! Monotone segments have a uniform direction: every consecutive pair inside
//! a segment is `⊆`, or every pair is `⊇`. Equal neighbours fit either way.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{Label, StaticGraph, TemporalGraph, Vertex};
use crate::oracle::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("layers {t} and {} are incomparable under inclusion", .t + 1)]
    NotMonotone { t: Label },
    #[error("ordering is not a permutation of the vertices")]
    NotAPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monotone {
    pub p: usize,
    /// Peak labels in increasing order.
    pub peaks: Vec<Label>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Periodic {
    pub p: Label,
    pub r: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    /// `None` when some consecutive layers are incomparable.
    pub monotone: Option<Monotone>,
    pub periodic: Periodic,
    pub steady_lambda: usize,
    pub interval_connected_max_t: Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Equal,
    Up,
    Down,
    Incomparable,
}

fn compare(a: &[(Vertex, Vertex)], b: &[(Vertex, Vertex)]) -> Step {
    let sa: HashSet<_> = a.iter().collect();
    let sb: HashSet<_> = b.iter().collect();
    match (sa.is_subset(&sb), sb.is_subset(&sa)) {
        (true, true) => Step::Equal,
        (true, false) => Step::Up,
        (false, true) => Step::Down,
        (false, false) => Step::Incomparable,
    }
}

/// Minimum segmentation and its peaks.
///
/// A breakpoint is a peak if the segment before it strictly grows somewhere or
/// the segment after it strictly shrinks somewhere. With all layers equal the
/// graph is single-peaked at label 1.
pub fn monotone(g: &TemporalGraph) -> Option<Monotone> {
    let layers = g.layer_pairs();
    let steps: Vec<Step> = layers.windows(2).map(|w| compare(&w[0], &w[1])).collect();
    if steps.contains(&Step::Incomparable) {
        return None;
    }
    // breakpoints as 0-based layer indices; segment k spans pairs
    // breaks[k]..breaks[k + 1]
    let mut breaks = vec![0usize];
    let mut direction = Step::Equal;
    for (j, &st) in steps.iter().enumerate() {
        if st == Step::Equal {
            continue;
        }
        if direction == Step::Equal {
            direction = st;
        } else if st != direction {
            breaks.push(j);
            direction = st;
        }
    }
    breaks.push(layers.len() - 1);
    let p = breaks.len() - 1;
    let segment_has = |k: usize, want: Step| steps[breaks[k]..breaks[k + 1]].contains(&want);
    let mut peaks: Vec<Label> = Vec::new();
    for (l, &b) in breaks.iter().enumerate() {
        let rising_in = l > 0 && segment_has(l - 1, Step::Up);
        let falling_out = l < p && segment_has(l, Step::Down);
        if (rising_in || falling_out) && peaks.last() != Some(&(b as Label + 1)) {
            peaks.push(b as Label + 1);
        }
    }
    if peaks.is_empty() {
        peaks.push(1);
    }
    Some(Monotone { p, peaks })
}

/// Smallest `p` dividing `tau` such that the graph is a `p`-block repeated.
pub fn periodic(g: &TemporalGraph) -> Periodic {
    let layers = g.layer_pairs();
    let tau = layers.len();
    for p in (1..=tau).filter(|p| tau.is_multiple_of(*p)) {
        if (p..tau).all(|j| layers[j] == layers[j - p]) {
            return Periodic {
                p: p as Label,
                r: (tau / p) as Label,
            };
        }
    }
    unreachable!("p = tau always works")
}

/// Largest symmetric difference between consecutive layers.
pub fn steady_lambda(g: &TemporalGraph) -> usize {
    g.layer_pairs()
        .windows(2)
        .map(|w| {
            let a: HashSet<_> = w[0].iter().collect();
            let b: HashSet<_> = w[1].iter().collect();
            a.symmetric_difference(&b).count()
        })
        .max()
        .unwrap_or(0)
}

/// Largest `T` such that every window of `T` consecutive layers has a
/// connected (spanning) edge intersection; 0 if a single layer fails.
pub fn interval_connected_max_t(g: &TemporalGraph) -> Label {
    let layers = g.layer_pairs();
    let tau = layers.len();
    let mut best = 0;
    for width in 1..=tau {
        let ok = (0..=tau - width).all(|start| {
            let mut common: Vec<(Vertex, Vertex)> = layers[start].clone();
            for l in &layers[start + 1..start + width] {
                common.retain(|e| l.binary_search(e).is_ok());
            }
            StaticGraph::new(g.n(), common).expect("layer edges").is_connected()
        });
        if !ok {
            break;
        }
        best = width as Label;
    }
    best
}

pub fn classify(g: &TemporalGraph) -> ClassProfile {
    ClassProfile {
        monotone: monotone(g),
        periodic: periodic(g),
        steady_lambda: steady_lambda(g),
        interval_connected_max_t: interval_connected_max_t(g),
    }
}

/// The instance restricted to its peak layers, in time order.
pub fn reduce_to_peaks(inst: &Instance) -> Result<Instance, ClassError> {
    let g = inst.graph();
    let Some(m) = monotone(g) else {
        let layers = g.layer_pairs();
        let t = layers
            .windows(2)
            .position(|w| compare(&w[0], &w[1]) == Step::Incomparable)
            .expect("some pair is incomparable") as Label
            + 1;
        return Err(ClassError::NotMonotone { t });
    };
    let layers: Vec<Vec<(Vertex, Vertex)>> = m.peaks.iter().map(|&t| g.layer_pairs()[t as usize - 1].clone()).collect();
    let h = TemporalGraph::from_layers(g.n(), &layers).expect("peak layers are valid");
    Ok(Instance::new(h, inst.s(), inst.z(), inst.k()).expect("terminal conditions are inherited"))
}

/// First witness that a layer is not a unit interval graph under the
/// ordering: positions `i < j < k` (1-based) with `{v_i, v_k}` present but
/// `{v_i, v_j}` or `{v_j, v_k}` absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderViolation {
    pub t: Label,
    pub positions: (usize, usize, usize),
    pub vertices: (Vertex, Vertex, Vertex),
}

impl std::fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (i, j, k) = self.positions;
        let (a, b, c) = self.vertices;
        write!(f, "positions ({i},{j},{k}) = vertices ({a},{b},{c})")
    }
}

/// `Ok(None)` when every layer satisfies the umbrella property under
/// `ordering`, otherwise the first violation found (smallest label first).
///
/// Per layer, with `r(i)` the furthest right neighbour of position `i`, the
/// property holds iff the right neighbours of each `i` are exactly
/// `i+1..=r(i)` and `r` never decreases.
pub fn check_order_compatible(g: &TemporalGraph, ordering: &[Vertex]) -> Result<Option<OrderViolation>, ClassError> {
    let n = g.n();
    if ordering.len() != n {
        return Err(ClassError::NotAPermutation);
    }
    let mut pos = vec![usize::MAX; n];
    for (p, &v) in ordering.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(ClassError::NotAPermutation);
        }
        pos[v] = p;
    }
    let violation = |t: Label, i: usize, j: usize, k: usize| OrderViolation {
        t,
        positions: (i + 1, j + 1, k + 1),
        vertices: (ordering[i], ordering[j], ordering[k]),
    };
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in 1..=g.tau() {
        let touched: Vec<usize> = {
            let mut v = Vec::new();
            for e in g.layer_edges(t) {
                let (a, b) = (pos[e.u].min(pos[e.v]), pos[e.u].max(pos[e.v]));
                right[a].push(b);
                v.push(a);
            }
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut found = None;
        let mut reach = vec![0usize; n];
        for i in 0..n {
            right[i].sort_unstable();
            reach[i] = right[i].last().copied().unwrap_or(i).max(i);
        }
        for &i in &touched {
            let r = reach[i];
            if right[i].len() != r - i {
                let j = (i + 1..r).find(|j| right[i].binary_search(j).is_err()).expect("a gap exists");
                found = Some(violation(t, i, j, r));
                break;
            }
        }
        if found.is_none() {
            found = (0..n.saturating_sub(1))
                .find(|&i| reach[i + 1] < reach[i])
                .map(|i| violation(t, i, i + 1, reach[i]));
        }
        for &i in &touched {
            right[i].clear();
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}
