//! Dynamic program over a nice tree decomposition of the underlying graph.
//!
//! A coloring puts each bag vertex into one of `A_1..A_tau` (reached from `s`,
//! first at that label), `S` (deleted) or `Z` (never reached). `s` is implicitly
//! in `A_1` and `z` in `Z`, so codes only cover the other bag vertices: digit
//! `c < tau` means `A_{c+1}`, `tau` means `S` and `tau + 1` means `Z`.

use std::collections::{BTreeSet, HashMap};

use crate::graph::{Label, Vertex};
use crate::oracle::{Instance, Separator};

use super::tree_decomposition::{NiceTreeDecomposition, NodeKind};
use super::SolveError;

const INF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Color {
    A(Label),
    S,
    Z,
}

struct Ctx<'a> {
    s: Vertex,
    z: Vertex,
    tau: Label,
    radix: usize,
    labels: &'a HashMap<(Vertex, Vertex), Vec<Label>>,
}

impl Ctx<'_> {
    fn color(&self, digit: usize) -> Color {
        let tau = self.tau as usize;
        match digit {
            d if d < tau => Color::A(d as Label + 1),
            d if d == tau => Color::S,
            _ => Color::Z,
        }
    }

    fn labels(&self, a: Vertex, b: Vertex) -> &[Label] {
        self.labels.get(&(a.min(b), a.max(b))).map_or(&[], Vec::as_slice)
    }

    /// Whether all time-edges between `v` (colored `cv`) and `w` (colored
    /// `cw`) are consistent with the coloring.
    fn compatible(&self, v: Vertex, cv: Color, w: Vertex, cw: Color) -> bool {
        let labels = self.labels(v, w);
        if labels.is_empty() {
            return true;
        }
        let ok = |i: Label, other: Color, t: Label| match other {
            Color::S => true,
            Color::Z => t < i,
            // an edge at t joins A_i and A_j only if t is below both or i = j
            Color::A(j) => !((i <= t && t < j) || (j <= t && t < i)),
        };
        match (cv, cw) {
            (Color::S, _) | (_, Color::S) | (Color::Z, Color::Z) => true,
            (Color::A(i), other) => labels.iter().all(|&t| ok(i, other, t)),
            (Color::Z, Color::A(j)) => labels.iter().all(|&t| t < j),
        }
    }

    fn color_of(&self, v: Vertex, free: &[Vertex], code: usize) -> Color {
        if v == self.s {
            return Color::A(1);
        }
        if v == self.z {
            return Color::Z;
        }
        let p = free.binary_search(&v).expect("bag vertex");
        self.color(digit(code, p, self.radix))
    }
}

fn digit(code: usize, p: usize, radix: usize) -> usize {
    code / radix.pow(p as u32) % radix
}

/// Inserts digit `d` at position `p` into `code` over `len` digits.
fn insert_digit(code: usize, p: usize, d: usize, radix: usize) -> usize {
    let low = radix.pow(p as u32);
    let (hi, lo) = (code / low, code % low);
    (hi * radix + d) * low + lo
}

fn remove_digit(code: usize, p: usize, radix: usize) -> usize {
    let low = radix.pow(p as u32);
    let (hi, lo) = (code / low / radix, code % low);
    hi * low + lo
}

struct Tables {
    free: Vec<Vec<Vertex>>,
    values: Vec<Vec<u32>>,
}

fn check_fit(inst: &Instance, td: &NiceTreeDecomposition) -> Result<(), SolveError> {
    if td.n() != inst.graph().n() {
        return Err(SolveError::DecompositionMismatch(format!(
            "decomposition has n={}, instance has n={}",
            td.n(),
            inst.graph().n()
        )));
    }
    if td.terminals() != (inst.s(), inst.z()) {
        return Err(SolveError::DecompositionMismatch(format!(
            "decomposition built for terminals {:?}, instance uses ({}, {})",
            td.terminals(),
            inst.s(),
            inst.z()
        )));
    }
    td.validate_shape()?;
    td.as_decomposition()
        .validate(&inst.graph().underlying())
        .map_err(|e| SolveError::DecompositionMismatch(e.to_string()))
}

fn fill(ctx: &Ctx, td: &NiceTreeDecomposition) -> Tables {
    let nodes = td.nodes();
    let mut free: Vec<Vec<Vertex>> = Vec::with_capacity(nodes.len());
    let mut values: Vec<Vec<u32>> = Vec::with_capacity(nodes.len());
    let r = ctx.radix;
    for x in nodes {
        let f: Vec<Vertex> = x.bag.iter().copied().filter(|&v| v != ctx.s && v != ctx.z).collect();
        let size = r.pow(f.len() as u32);
        let table = match x.kind {
            NodeKind::Leaf => vec![0],
            NodeKind::Introduce(v) => {
                let child = &values[x.children[0]];
                let p = f.binary_search(&v).expect("introduced vertex is free");
                let mut t = vec![INF; size];
                for (code, slot) in t.iter_mut().enumerate() {
                    let d = digit(code, p, r);
                    let base = child[remove_digit(code, p, r)];
                    if base == INF {
                        continue;
                    }
                    let cv = ctx.color(d);
                    let fits = x
                        .bag
                        .iter()
                        .filter(|&&w| w != v)
                        .all(|&w| ctx.compatible(v, cv, w, ctx.color_of(w, &f, code)));
                    if fits {
                        *slot = base + u32::from(cv == Color::S);
                    }
                }
                t
            }
            NodeKind::Forget(v) => {
                let cf = &free[x.children[0]];
                let child = &values[x.children[0]];
                let p = cf.binary_search(&v).expect("forgotten vertex is free");
                (0..size)
                    .map(|code| (0..r).map(|d| child[insert_digit(code, p, d, r)]).min().unwrap_or(INF))
                    .collect()
            }
            NodeKind::Join => {
                let (a, b) = (&values[x.children[0]], &values[x.children[1]]);
                (0..size)
                    .map(|code| {
                        if a[code] == INF || b[code] == INF {
                            return INF;
                        }
                        let deleted = (0..f.len()).filter(|&p| ctx.color(digit(code, p, r)) == Color::S).count();
                        a[code] + b[code] - deleted as u32
                    })
                    .collect()
            }
        };
        free.push(f);
        values.push(table);
    }
    Tables { free, values }
}

/// Walks down from the root, fixing at each forget node the smallest color
/// that realises the optimum, and collects the vertices colored `S`.
fn reconstruct(ctx: &Ctx, td: &NiceTreeDecomposition, tables: &Tables) -> BTreeSet<Vertex> {
    let nodes = td.nodes();
    let r = ctx.radix;
    let mut out = BTreeSet::new();
    let mut stack = vec![(td.root(), 0usize)];
    while let Some((x, code)) = stack.pop() {
        let node = &nodes[x];
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::Introduce(v) => {
                let p = tables.free[x].binary_search(&v).unwrap();
                if ctx.color(digit(code, p, r)) == Color::S {
                    out.insert(v);
                }
                stack.push((node.children[0], remove_digit(code, p, r)));
            }
            NodeKind::Forget(v) => {
                let c = node.children[0];
                let p = tables.free[c].binary_search(&v).unwrap();
                let target = tables.values[x][code];
                let d = (0..r)
                    .find(|&d| tables.values[c][insert_digit(code, p, d, r)] == target)
                    .expect("optimum is realised by some color");
                stack.push((c, insert_digit(code, p, d, r)));
            }
            NodeKind::Join => {
                for &c in &node.children {
                    stack.push((c, code));
                }
            }
        }
    }
    out
}

/// Minimum separator via the decomposition `td` of the underlying graph.
pub fn treewidth_dp_minimum(inst: &Instance, td: &NiceTreeDecomposition) -> Result<Separator, SolveError> {
    check_fit(inst, td)?;
    let labels = inst.graph().edge_labels();
    let ctx = Ctx {
        s: inst.s(),
        z: inst.z(),
        tau: inst.graph().tau(),
        radix: inst.graph().tau() as usize + 2,
        labels: &labels,
    };
    let tables = fill(&ctx, td);
    // the root bag is {s,z}: its single entry is the optimum
    debug_assert_eq!(tables.values[td.root()].len(), 1);
    debug_assert_ne!(tables.values[td.root()][0], INF);
    let sep = reconstruct(&ctx, td, &tables);
    debug_assert_eq!(sep.len() as u32, tables.values[td.root()][0]);
    Ok(Separator::new(sep))
}

pub fn solve_treewidth_dp(inst: &Instance, td: &NiceTreeDecomposition) -> Result<Option<Separator>, SolveError> {
    let best = treewidth_dp_minimum(inst, td)?;
    Ok((best.len() <= inst.k()).then_some(best))
}

/// Number of table cells the DP fills on `td` for labels up to `tau`.
pub fn table_cells(td: &NiceTreeDecomposition, tau: Label) -> u128 {
    let (s, z) = td.terminals();
    let r = tau as u128 + 2;
    td.nodes()
        .iter()
        .map(|x| r.pow(x.bag.iter().filter(|&&v| v != s && v != z).count() as u32))
        .sum()
}
