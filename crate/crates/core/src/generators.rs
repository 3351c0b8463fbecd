//! Seeded random instances, optionally constrained to a structural class.
//!
//! The generator is xorshift64* (shifts 12, 25, 27; multiplier
//! `0x2545F4914F6CDD1D`). Seeds pass through one splitmix64 round first so
//! nearby seeds give unrelated streams; a mixed state of zero is replaced by
//! `0x9E3779B97F4A7C15`. Floats take the top 53 bits.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::classes::periodic;
use crate::graph::{Label, TemporalGraph, TimeEdge, Vertex};
use crate::oracle::Instance;

const PERIODIC_RETRIES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator spec: {0}")]
pub struct InvalidSpec(pub String);

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Rng {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // rejection keeps the result unbiased
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassConstraint {
    None,
    OrderPreservingUnitInterval,
    Periodic { p: Label, r: Label },
    Steady { lambda: usize },
    Monotone { p: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub tau: Label,
    /// Per-layer edge probability. For unit-interval layers it sets the
    /// density instead: positions spread over `[0, 2 / prob]`.
    pub prob: f64,
    pub class: ClassConstraint,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, tau: Label, prob: f64, seed: u64) -> Self {
        GenSpec {
            n,
            tau,
            prob,
            class: ClassConstraint::None,
            seed,
        }
    }

    pub fn with_class(mut self, class: ClassConstraint) -> Self {
        self.class = class;
        self
    }

    pub fn validate(&self) -> Result<(), InvalidSpec> {
        if self.n < 2 {
            return Err(InvalidSpec(format!("n={} is below 2", self.n)));
        }
        if self.tau < 1 {
            return Err(InvalidSpec("tau must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.prob) {
            return Err(InvalidSpec(format!("probability {} outside [0, 1]", self.prob)));
        }
        match self.class {
            ClassConstraint::Periodic { p, r } => {
                if p == 0 || r == 0 || p * r != self.tau {
                    return Err(InvalidSpec(format!("periodic p={p} r={r} does not tile tau={}", self.tau)));
                }
            }
            ClassConstraint::Monotone { p: 0 } => {
                return Err(InvalidSpec("monotone p must be positive".into()));
            }
            _ => {}
        }
        Ok(())
    }
}

/// Candidate pairs: every pair except the terminal pair `{0, n-1}`.
fn pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !(a == 0 && b == n - 1) {
                out.push((a, b));
            }
        }
    }
    out
}

fn bernoulli_layer(rng: &mut Rng, all: &[(Vertex, Vertex)], prob: f64) -> Vec<(Vertex, Vertex)> {
    all.iter().copied().filter(|_| rng.chance(prob)).collect()
}

fn unit_interval_layer(rng: &mut Rng, n: usize, prob: f64) -> Vec<(Vertex, Vertex)> {
    if prob <= 0.0 {
        return Vec::new();
    }
    // thousandths of a unit
    let span = (2000.0 / prob).round() as u64;
    let mut pos: Vec<u64> = (0..n).map(|_| rng.below(span + 1)).collect();
    pos.sort_unstable();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if pos[b] - pos[a] > 1000 {
                break;
            }
            if !(a == 0 && b == n - 1) {
                out.push((a, b));
            }
        }
    }
    out
}

fn assemble(n: usize, layers: &[Vec<(Vertex, Vertex)>]) -> TemporalGraph {
    let edges = layers
        .iter()
        .enumerate()
        .flat_map(|(i, l)| l.iter().map(move |&(a, b)| TimeEdge::new(a, b, i as Label + 1)))
        .collect();
    TemporalGraph::from_canonical_parts(n, layers.len() as Label, edges)
}

fn steady_layers(rng: &mut Rng, spec: &GenSpec, lambda: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    let all = pairs(spec.n);
    let mut cur: BTreeSet<(Vertex, Vertex)> = bernoulli_layer(rng, &all, spec.prob).into_iter().collect();
    let mut layers = vec![cur.iter().copied().collect::<Vec<_>>()];
    for _ in 1..spec.tau {
        let flips = rng.below(lambda as u64 + 1) as usize;
        let mut chosen = BTreeSet::new();
        while chosen.len() < flips.min(all.len()) {
            chosen.insert(rng.below(all.len() as u64) as usize);
        }
        for i in chosen {
            let e = all[i];
            if !cur.remove(&e) {
                cur.insert(e);
            }
        }
        layers.push(cur.iter().copied().collect());
    }
    layers
}

fn monotone_layers(rng: &mut Rng, spec: &GenSpec, p: usize) -> Vec<Vec<(Vertex, Vertex)>> {
    let all = pairs(spec.n);
    let steps = spec.tau as usize - 1;
    let mut cur: BTreeSet<(Vertex, Vertex)> = bernoulli_layer(rng, &all, spec.prob).into_iter().collect();
    let mut layers = vec![cur.iter().copied().collect::<Vec<_>>()];
    for step in 0..steps {
        // steps are split evenly into p runs, alternating growth and shrinkage
        let run = step * p / steps.max(1);
        if run.is_multiple_of(2) {
            for &e in &all {
                if !cur.contains(&e) && rng.chance(spec.prob) {
                    cur.insert(e);
                }
            }
        } else {
            let present: Vec<_> = cur.iter().copied().collect();
            for e in present {
                if rng.chance(spec.prob) {
                    cur.remove(&e);
                }
            }
        }
        layers.push(cur.iter().copied().collect());
    }
    layers
}

/// Draws an instance with `s = 0` and `z = n - 1` and budget `k = n - 2`.
pub fn generate(spec: &GenSpec) -> Result<Instance, InvalidSpec> {
    spec.validate()?;
    let mut rng = Rng::new(spec.seed);
    let n = spec.n;
    let g = match spec.class {
        ClassConstraint::None => {
            let all = pairs(n);
            let layers: Vec<_> = (0..spec.tau).map(|_| bernoulli_layer(&mut rng, &all, spec.prob)).collect();
            assemble(n, &layers)
        }
        ClassConstraint::OrderPreservingUnitInterval => {
            let layers: Vec<_> = (0..spec.tau).map(|_| unit_interval_layer(&mut rng, n, spec.prob)).collect();
            assemble(n, &layers)
        }
        ClassConstraint::Periodic { p, r } => {
            let all = pairs(n);
            let mut found = None;
            for _ in 0..PERIODIC_RETRIES {
                let block: Vec<_> = (0..p).map(|_| bernoulli_layer(&mut rng, &all, spec.prob)).collect();
                let layers: Vec<_> = (0..r).flat_map(|_| block.iter().cloned()).collect();
                let g = assemble(n, &layers);
                if periodic(&g).p == p {
                    found = Some(g);
                    break;
                }
            }
            found.ok_or_else(|| {
                InvalidSpec(format!(
                    "no block with minimal period {p} found in {PERIODIC_RETRIES} draws at probability {}",
                    spec.prob
                ))
            })?
        }
        ClassConstraint::Steady { lambda } => assemble(n, &steady_layers(&mut rng, spec, lambda)),
        ClassConstraint::Monotone { p } => assemble(n, &monotone_layers(&mut rng, spec, p)),
    };
    Ok(Instance::new(g, 0, n - 1, n - 2).expect("terminal pair is never generated"))
}

/// A random partial 2-tree: the 2-tree grows by attaching each new vertex to
/// both ends of a random existing edge, then every tree edge appears in each
/// layer with probability `prob`. The terminal pair `{0, n-1}` is dropped.
pub fn partial_two_tree(n: usize, tau: Label, prob: f64, seed: u64) -> Result<Instance, InvalidSpec> {
    GenSpec::new(n, tau, prob, seed).validate()?;
    let mut rng = Rng::new(seed);
    let mut tree = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = tree[rng.below(tree.len() as u64) as usize];
        tree.push((a, v));
        tree.push((b, v));
    }
    tree.retain(|&(a, b)| !(a == 0 && b == n - 1));
    let layers: Vec<_> = (0..tau).map(|_| bernoulli_layer(&mut rng, &tree, prob)).collect();
    let g = assemble(n, &layers);
    Ok(Instance::new(g, 0, n - 1, n - 2).expect("terminal pair is dropped"))
}
