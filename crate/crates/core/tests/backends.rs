use proptest::prelude::*;

use tempo_sep::classes::{check_order_compatible, reduce_to_peaks};
use tempo_sep::generators::{generate, ClassConstraint, GenSpec};
use tempo_sep::oracle::{is_separator, min_separator_bruteforce};
use tempo_sep::reductions::ReductionKind;
use tempo_sep::solvers::{
    build_tree_decomposition, interval_dp_minimum, solve_auto, solve_search_tree, treewidth_dp_minimum, Hints,
    TreeDecomposition,
};
use tempo_sep::{Instance, Mode};

fn oracle(inst: &Instance, mode: Mode) -> usize {
    min_separator_bruteforce(inst, mode).len()
}

fn class() -> impl Strategy<Value = ClassConstraint> {
    prop_oneof![
        Just(ClassConstraint::None),
        Just(ClassConstraint::OrderPreservingUnitInterval),
        (0usize..3).prop_map(|lambda| ClassConstraint::Steady { lambda }),
        (1usize..4).prop_map(|p| ClassConstraint::Monotone { p }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn backends_agree(n in 3usize..8, tau in 1u32..5, prob in 0.1f64..0.6, class in class(), seed in any::<u64>()) {
        let inst = generate(&GenSpec::new(n, tau, prob, seed).with_class(class)).unwrap();
        let best = oracle(&inst, Mode::NonStrict);

        let st = solve_search_tree(&inst, Mode::NonStrict).unwrap();
        prop_assert_eq!(st.len(), best);
        prop_assert!(is_separator(&inst, st.vertices(), Mode::NonStrict).unwrap());

        let nice = build_tree_decomposition(&inst.graph().underlying(), inst.s(), inst.z(), None).unwrap();
        let tw = treewidth_dp_minimum(&inst, &nice).unwrap();
        prop_assert_eq!(tw.len(), best);
        prop_assert!(is_separator(&inst, tw.vertices(), Mode::NonStrict).unwrap());

        let identity: Vec<_> = (0..n).collect();
        if check_order_compatible(inst.graph(), &identity).unwrap().is_none() {
            let iv = interval_dp_minimum(&inst, &identity).unwrap();
            prop_assert_eq!(iv.len(), best);
            prop_assert!(is_separator(&inst, iv.vertices(), Mode::NonStrict).unwrap());
        }

        let hints = Hints {
            ordering: Some(identity),
            decomposition: Some(TreeDecomposition::min_fill(&inst.graph().underlying())),
            work_cap: None,
        };
        for k in [best.saturating_sub(1), best] {
            let r = solve_auto(&inst.with_budget(k), &hints, Mode::NonStrict).unwrap();
            prop_assert_eq!(r.separator.as_ref().map(|s| s.len()), (best <= k).then_some(best), "backend {}", r.backend);
        }

        let strict = oracle(&inst, Mode::Strict);
        prop_assert!(strict <= best);
        prop_assert_eq!(solve_search_tree(&inst, Mode::Strict).unwrap().len(), strict);
    }

    #[test]
    fn peak_reduction_preserves_the_optimum(n in 3usize..8, tau in 1u32..7, p in 1usize..4, seed in any::<u64>()) {
        let inst = generate(&GenSpec::new(n, tau, 0.35, seed).with_class(ClassConstraint::Monotone { p })).unwrap();
        let reduced = reduce_to_peaks(&inst).unwrap();
        prop_assert_eq!(oracle(&reduced, Mode::NonStrict), oracle(&inst, Mode::NonStrict));
    }

    #[test]
    fn reductions_preserve_the_optimum(n in 3usize..6, tau in 1u32..4, prob in 0.1f64..0.5, seed in any::<u64>()) {
        let inst = generate(&GenSpec::new(n, tau, prob, seed)).unwrap();
        let best = oracle(&inst, Mode::NonStrict);
        for kind in ReductionKind::ALL {
            if kind == ReductionKind::LineGraph {
                continue;
            }
            let (out, report) = kind.apply(&inst).unwrap();
            prop_assert!(report.all_passed(), "{}", report.to_text());
            let delta = report.budget_delta as usize;
            prop_assert_eq!(oracle(&out, Mode::NonStrict), best + delta, "{}", kind.name());
        }
    }
}
