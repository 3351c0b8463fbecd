//! Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::time::{Duration, Instant};

use tempo_sep::classes::{monotone, periodic};
use tempo_sep::generators::{generate, partial_two_tree, ClassConstraint, GenSpec, Rng};
use tempo_sep::oracle::{
    exhaustive_resets, greedy_resets, is_separator, min_separator_bruteforce, min_separator_up_to, path_min_resets,
    temporal_path_exists_exhaustive,
};
use tempo_sep::reachability::{earliest_arrival, find_temporal_path};
use tempo_sep::reductions::{line_graph_gadget_with_layout, ReductionKind};
use tempo_sep::solvers::search_tree::solve_search_tree_with_stats;
use tempo_sep::solvers::{
    build_tree_decomposition, interval_dp_minimum, solve_auto, solve_search_tree, treewidth_dp_minimum, Backend, Hints,
    TreeDecomposition,
};
use tempo_sep::{Instance, Label, Mode, TemporalGraph, Vertex};

type Outcome = Result<String, String>;

fn oracle(inst: &Instance, mode: Mode) -> usize {
    min_separator_bruteforce(inst, mode).len()
}

/// The seeded family shared by the first two criteria.
fn random_family(count: usize, salt: u64) -> Vec<Instance> {
    let mut rng = Rng::new(salt);
    (0..count)
        .map(|i| {
            let n = 3 + rng.below(5) as usize;
            let tau = 1 + rng.below(4) as Label;
            let prob = if i % 2 == 0 { 0.2 } else { 0.4 };
            generate(&GenSpec::new(n, tau, prob, rng.next_u64())).unwrap()
        })
        .collect()
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let family = random_family(500, 1);
    let mut agree = 0;
    for inst in &family {
        let best = oracle(inst, Mode::NonStrict);
        let yes = solve_search_tree(&inst.with_budget(best), Mode::NonStrict);
        let yes_ok = yes.is_some_and(|s| s.len() <= best && is_separator(inst, s.vertices(), Mode::NonStrict).unwrap());
        let no_ok = best == 0 || solve_search_tree(&inst.with_budget(best - 1), Mode::NonStrict).is_none();
        agree += usize::from(yes_ok && no_ok);
    }
    let elapsed = start.elapsed();
    let detail = format!("{agree}/{} agree, {:.2}s (limit 60s)", family.len(), elapsed.as_secs_f64());
    if agree == family.len() && elapsed < Duration::from_secs(60) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac2() -> Outcome {
    let family = random_family(200, 2);
    let mut agree = 0;
    let mut max_width = 0;
    let mut slowest = Duration::ZERO;
    for inst in &family {
        let td = TreeDecomposition::min_fill(&inst.graph().underlying());
        max_width = max_width.max(td.width());
        let start = Instant::now();
        let nice = build_tree_decomposition(&inst.graph().underlying(), inst.s(), inst.z(), Some(&td)).unwrap();
        let found = treewidth_dp_minimum(inst, &nice).unwrap();
        slowest = slowest.max(start.elapsed());
        let ok = found.len() == oracle(inst, Mode::NonStrict) && is_separator(inst, found.vertices(), Mode::NonStrict).unwrap();
        agree += usize::from(ok);
    }
    let detail = format!(
        "{agree}/{} exact, max heuristic width {max_width}, slowest {:.1}ms (limit 1s)",
        family.len(),
        slowest.as_secs_f64() * 1e3
    );
    if agree == family.len() && max_width <= 5 && slowest < Duration::from_secs(1) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn unit_interval_family(count: usize, salt: u64) -> Vec<Instance> {
    let mut rng = Rng::new(salt);
    (0..count)
        .map(|_| {
            let n = 3 + rng.below(6) as usize;
            let tau = 1 + rng.below(4) as Label;
            let density = 0.3 + 0.5 * rng.next_f64();
            let spec = GenSpec::new(n, tau, density, rng.next_u64()).with_class(ClassConstraint::OrderPreservingUnitInterval);
            generate(&spec).unwrap()
        })
        .collect()
}

fn ac3() -> Outcome {
    let family = unit_interval_family(200, 3);
    let mut agree = 0;
    for inst in &family {
        let identity: Vec<Vertex> = (0..inst.graph().n()).collect();
        let found = interval_dp_minimum(inst, &identity).unwrap();
        let ok = found.len() == oracle(inst, Mode::NonStrict) && is_separator(inst, found.vertices(), Mode::NonStrict).unwrap();
        agree += usize::from(ok);
    }
    let detail = format!("{agree}/{} exact", family.len());
    if agree == family.len() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Static graphs with minimum degree two, repeated in every layer.
fn gadget_family(count: usize, salt: u64) -> Vec<Instance> {
    let mut rng = Rng::new(salt);
    let mut out = Vec::new();
    while out.len() < count {
        let n = 4 + rng.below(2) as usize;
        let tau = 1 + rng.below(2) as Label;
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !(a == 0 && b == n - 1) && rng.chance(0.55) {
                    pairs.push((a, b));
                }
            }
        }
        let layers = vec![pairs; tau as usize];
        let g = TemporalGraph::from_layers(n, &layers).unwrap();
        if (0..n).all(|v| g.underlying().degree(v) >= 2) {
            out.push(Instance::new(g, 0, n - 1, n - 2).unwrap());
        }
    }
    out
}

struct ReductionTally {
    equivalent: usize,
    checks: usize,
    total: usize,
}

fn ac4_and_5() -> (Outcome, Outcome) {
    let mut lines = Vec::new();
    let mut all_ok = true;
    let mut size_ok = true;
    let mut size_notes = Vec::new();
    let mut rng = Rng::new(4);
    for kind in ReductionKind::ALL {
        let mut tally = ReductionTally {
            equivalent: 0,
            checks: 0,
            total: 0,
        };
        if kind == ReductionKind::LineGraph {
            let mut groups_ok = 0;
            for inst in gadget_family(100, 5) {
                let ((out, report), layout) = line_graph_gadget_with_layout(&inst).unwrap();
                let strict = min_separator_bruteforce(&inst, Mode::Strict);
                // the output optimum is exactly |strict| iff nothing smaller
                // separates and the strict optimum (stars keep their ids) does
                let lifted = is_separator(&out, strict.vertices(), Mode::NonStrict).unwrap();
                let smaller = !strict.is_empty() && min_separator_up_to(&out, Mode::NonStrict, strict.len() - 1).is_some();
                tally.total += 1;
                tally.equivalent += usize::from(lifted && !smaller);
                tally.checks += usize::from(report.all_passed());
                let under = inst.graph().underlying();
                groups_ok += usize::from((0..inst.graph().n()).all(|v| layout.group_size(v) == under.degree(v) + 1));
            }
            size_ok &= groups_ok == tally.total;
            size_notes.push(format!("|W_v|=deg+1 {groups_ok}/{}", tally.total));
        } else {
            let mut bound_ok = 0;
            for _ in 0..100 {
                let n = 3 + rng.below(4) as usize;
                let tau = 1 + rng.below(3) as Label;
                let inst = generate(&GenSpec::new(n, tau, 0.15 + 0.35 * rng.next_f64(), rng.next_u64())).unwrap();
                let (out, report) = kind.apply(&inst).unwrap();
                let delta = report.budget_delta as usize;
                tally.total += 1;
                tally.equivalent += usize::from(oracle(&out, Mode::NonStrict) == oracle(&inst, Mode::NonStrict) + delta);
                tally.checks += usize::from(report.all_passed());
                if kind == ReductionKind::OneEdgePerLayer {
                    let bound = inst.graph().tau() as u128 * (n as u128).pow(4);
                    bound_ok += usize::from(out.graph().tau() as u128 <= bound);
                }
            }
            if kind == ReductionKind::OneEdgePerLayer {
                size_ok &= bound_ok == tally.total;
                size_notes.push(format!("tau'<=tau*n^4 {bound_ok}/{}", tally.total));
            }
        }
        all_ok &= tally.equivalent == tally.total && tally.checks == tally.total;
        lines.push(format!(
            "{} {}/{} eq {}/{} checks",
            kind.name(),
            tally.equivalent,
            tally.total,
            tally.checks,
            tally.total
        ));
    }
    let ac4 = if all_ok { Ok(lines.join("; ")) } else { Err(lines.join("; ")) };
    let ac5 = if size_ok {
        Ok(size_notes.join("; "))
    } else {
        Err(size_notes.join("; "))
    };
    (ac4, ac5)
}

fn ac6() -> Outcome {
    let mut rng = Rng::new(6);
    let mut agree = 0;
    let mut checked = 0;
    for _ in 0..300 {
        let n = 2 + rng.below(5) as usize;
        let tau = 1 + rng.below(3) as Label;
        let prob = 0.1 + 0.4 * rng.next_f64();
        let mut raw = Vec::new();
        for t in 1..=tau {
            for a in 0..n {
                for b in a + 1..n {
                    if rng.chance(prob) {
                        raw.push((a, b, t));
                    }
                }
            }
        }
        let g = TemporalGraph::build(n, tau, raw).unwrap();
        for mode in [Mode::NonStrict, Mode::Strict] {
            for s in 0..n {
                for z in 0..n {
                    if s == z {
                        continue;
                    }
                    checked += 1;
                    let found = find_temporal_path(&g, s, z, mode);
                    let witness_ok = found.as_ref().is_none_or(|p| p.validate(&g, mode).is_ok());
                    let same = found.is_some() == temporal_path_exists_exhaustive(&g, s, z, mode);
                    agree += usize::from(same && witness_ok);
                }
            }
        }
    }
    let detail = format!("{agree}/{checked} (graph, s, z, mode) triples agree over 300 graphs");
    if agree == checked {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac7() -> Outcome {
    let mut rng = Rng::new(7);
    let mut agree = 0;
    for _ in 0..1000 {
        let edges = 1 + rng.below(6) as usize;
        let per_edge: Vec<Vec<Label>> = (0..edges)
            .map(|_| {
                let mut ls: Vec<Label> = (0..1 + rng.below(3)).map(|_| 1 + rng.below(6) as Label).collect();
                ls.sort_unstable();
                ls.dedup();
                ls
            })
            .collect();
        let raw: Vec<_> = per_edge
            .iter()
            .enumerate()
            .flat_map(|(i, ls)| ls.iter().map(move |&t| (i, i + 1, t)))
            .collect();
        let g = TemporalGraph::build(edges + 1, 6, raw).unwrap();
        let path: Vec<Vertex> = (0..=edges).collect();
        let exact = exhaustive_resets(&per_edge);
        agree += usize::from(greedy_resets(&per_edge) == exact && path_min_resets(&g, &path).unwrap() == exact);
    }
    let detail = format!("{agree}/1000 paths optimal");
    if agree == 1000 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac8() -> Outcome {
    let mut rng = Rng::new(8);
    let mut counts = [0usize; 3];
    let mut agree = 0;
    let mut total = 0;
    let mut attempts = 0;
    while counts.iter().any(|&c| c < 100) && attempts < 10_000 {
        attempts += 1;
        let n = 3 + rng.below(4) as usize;
        let bucket = attempts % 3;
        if counts[bucket] >= 100 {
            continue;
        }
        let class = match bucket {
            0 => ClassConstraint::Monotone { p: 2 },
            1 => ClassConstraint::Periodic { p: 1, r: 1 + rng.below(4) as Label },
            _ => ClassConstraint::Periodic { p: 2, r: n as Label },
        };
        let tau = match class {
            ClassConstraint::Periodic { p, r } => p * r,
            _ => 2 + rng.below(5) as Label,
        };
        let Ok(inst) = generate(&GenSpec::new(n, tau, 0.2 + 0.4 * rng.next_f64(), rng.next_u64()).with_class(class)) else {
            continue;
        };
        let applicable = match bucket {
            0 => monotone(inst.graph()).is_some_and(|m| m.peaks.len() == 1),
            1 => periodic(inst.graph()).p == 1,
            _ => periodic(inst.graph()).r as usize >= n,
        };
        if !applicable {
            continue;
        }
        counts[bucket] += 1;
        total += 1;
        let best = oracle(&inst, Mode::NonStrict);
        let mut ok = true;
        for k in [best.saturating_sub(1), best] {
            let r = solve_auto(&inst.with_budget(k), &Hints::default(), Mode::NonStrict).unwrap();
            let size = r.separator.as_ref().map(|s| s.len());
            let valid = r
                .separator
                .as_ref()
                .is_none_or(|s| is_separator(&inst, s.vertices(), Mode::NonStrict).unwrap());
            ok &= r.backend == Backend::StaticCut && size == (best <= k).then_some(best) && valid;
        }
        agree += usize::from(ok);
    }
    let detail = format!(
        "{agree}/{total} static-cut and exact (single-peaked {}, 1-periodic {}, r>=n {})",
        counts[0], counts[1], counts[2]
    );
    if agree == total && counts.iter().all(|&c| c == 100) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Whether some temporal path from `i` to `j` only moves to larger indices.
fn order_monotone_reach(g: &TemporalGraph, i: Vertex, j: Vertex) -> bool {
    let mut reached = vec![false; g.n()];
    reached[i] = true;
    // edges come sorted by (t, u, v): a forward pass per label closes it
    for e in g.edges() {
        if e.u >= i && e.v <= j && reached[e.u] {
            reached[e.v] = true;
        }
    }
    reached[j]
}

fn ac9() -> Outcome {
    let family = unit_interval_family(200, 9);
    let mut rng = Rng::new(90);
    let (mut ii, mut iii, mut v) = ([0usize; 2], [0usize; 2], [0usize; 2]);
    for inst in &family {
        let g = inst.graph();
        let n = g.n();
        for i in 0..n {
            for j in i + 1..n {
                let any = find_temporal_path(g, i, j, Mode::NonStrict).is_some();
                if any {
                    ii[0] += 1;
                    ii[1] += usize::from(!order_monotone_reach(g, i, j));
                }
                if g.has_time_edge(i, j) {
                    continue;
                }
                let pair = Instance::new(g.clone(), i, j, n).unwrap();
                for _ in 0..8 {
                    let sep: Vec<Vertex> = (0..n).filter(|&w| w != i && w != j && rng.chance(0.5)).collect();
                    if is_separator(&pair, &sep, Mode::NonStrict).unwrap() {
                        let trimmed: Vec<Vertex> = sep.iter().copied().filter(|&w| i < w && w < j).collect();
                        iii[0] += 1;
                        iii[1] += usize::from(!is_separator(&pair, &trimmed, Mode::NonStrict).unwrap());
                    }
                }
            }
        }
        // a set S leaving v_i as the rightmost vertex reached by label t
        // must contain N^>(v_i) in every layer from v_i's arrival to t
        for _ in 0..8 {
            let deleted: Vec<bool> = (0..n).map(|w| w != 0 && rng.chance(0.4)).collect();
            for t in 1..=g.tau() {
                let kept = g
                    .edges()
                    .iter()
                    .filter(|e| e.t <= t && !deleted[e.u] && !deleted[e.v])
                    .map(|e| (e.u, e.v, e.t));
                let h = TemporalGraph::build(n, t, kept).unwrap();
                let arrival = earliest_arrival(&h, 0, Mode::NonStrict);
                let far = (0..n).rev().find(|&w| arrival[w].is_some()).unwrap();
                let from = arrival[far].unwrap().max(1);
                for tp in from..=t {
                    v[0] += 1;
                    let leak = g.layer_edges(tp).iter().any(|e| e.u == far && !deleted[e.v]);
                    v[1] += usize::from(leak);
                }
            }
        }
    }
    let detail = format!(
        "violations: (ii) {}/{} (iii) {}/{} (v) {}/{}",
        ii[1], ii[0], iii[1], iii[0], v[1], v[0]
    );
    if ii[1] + iii[1] + v[1] == 0 && ii[0] > 0 && iii[0] > 0 && v[0] > 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac10() -> Outcome {
    let tw_inst = partial_two_tree(50, 6, 0.6, 10).unwrap();
    let start = Instant::now();
    let td = TreeDecomposition::min_fill(&tw_inst.graph().underlying());
    let nice = build_tree_decomposition(&tw_inst.graph().underlying(), tw_inst.s(), tw_inst.z(), Some(&td)).unwrap();
    let tw_sep = treewidth_dp_minimum(&tw_inst, &nice).unwrap();
    let tw_time = start.elapsed();
    let tw_valid = is_separator(&tw_inst, tw_sep.vertices(), Mode::NonStrict).unwrap();

    let st_inst = generate(&GenSpec::new(30, 10, 0.08, 16)).unwrap().with_budget(3);
    let start = Instant::now();
    let (st_sep, stats) = solve_search_tree_with_stats(&st_inst, Mode::NonStrict);
    let st_time = start.elapsed();
    let st_valid = st_sep
        .as_ref()
        .is_none_or(|s| is_separator(&st_inst, s.vertices(), Mode::NonStrict).unwrap());

    let detail = format!(
        "treewidth n=50 tau=6 width {} in {:.3}s (|S|={}); search tree n=30 tau=10 k=3 longest path {} in {:.3}s ({} nodes, {})",
        td.width(),
        tw_time.as_secs_f64(),
        tw_sep.len(),
        stats.longest_path,
        st_time.as_secs_f64(),
        stats.nodes,
        if st_sep.is_some() { "yes" } else { "no" }
    );
    let limit = Duration::from_secs(10);
    if td.width() <= 2 && tw_valid && tw_time < limit && stats.longest_path <= 8 && st_valid && st_time < limit {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let (ac4, ac5) = ac4_and_5();
    let results: Vec<(&str, &str, Outcome)> = vec![
        ("AC1", "search tree vs oracle", ac1()),
        ("AC2", "treewidth DP vs oracle", ac2()),
        ("AC3", "interval DP vs oracle", ac3()),
        ("AC4", "reduction equivalence and checklists", ac4),
        ("AC5", "reduction size bounds", ac5),
        ("AC6", "path search vs exhaustive enumeration", ac6()),
        ("AC7", "greedy resets optimality", ac7()),
        ("AC8", "dispatcher static-cut soundness", ac8()),
        ("AC9", "order-preserving property battery", ac9()),
        ("AC10", "performance smoke", ac10()),
    ];
    let mut failed = 0;
    for (id, what, outcome) in &results {
        match outcome {
            Ok(detail) => println!("{id} PASS {what}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {what}: {detail}");
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
