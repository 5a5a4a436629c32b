mod common;

use common::*;
use proptest::prelude::*;
use triex_core::{
    canonical_base, closed_sets, concepts, conditional_holds, family_exploration, kc_lattice,
    label_nodes, lectic_cmp, next_closure, triadic_exploration, AttrSet, ConditionalImplication,
    ContextFamily, FormalContext, Implication, ImplicationSet, OracleExpert, Panel, SessionOptions,
    TriadicContext, Variant,
};

fn subsets(n: usize) -> impl Iterator<Item = AttrSet> {
    (0..=full(n)).map(unmask)
}

fn implication_strategy(n: usize) -> impl Strategy<Value = Implication> {
    (
        prop::collection::btree_set(0..n, 0..=n),
        prop::collection::btree_set(0..n, 0..=n),
    )
        .prop_map(|(p, c)| Implication::new(p, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn galois_connection(ctx in dyadic_strategy(5, 5)) {
        let g = ctx.objects().len();
        let m = ctx.attributes().len();
        for x in subsets(m) {
            for y in (0..=full(g)).map(unmask) {
                let lhs = x.is_subset(&ctx.derive_attributes(&y).unwrap());
                let rhs = y.is_subset(&ctx.derive_objects(&x).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn context_closure_is_a_closure_operator(ctx in dyadic_strategy(6, 5)) {
        let m = ctx.attributes().len();
        let rows = rows_of(&ctx);
        for x in subsets(m) {
            let c = ctx.closure(&x).unwrap();
            prop_assert!(x.is_subset(&c));
            prop_assert_eq!(ctx.closure(&c).unwrap(), c.clone());
            prop_assert_eq!(mask(&c), closure(&rows, mask(&x), m));
            for y in subsets(m).filter(|y| x.is_subset(y)) {
                prop_assert!(c.is_subset(&ctx.closure(&y).unwrap()));
            }
        }
    }

    #[test]
    fn l_closure_is_a_closure_operator(
        (n, l) in (1usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(implication_strategy(n), 0..6)))
    ) {
        let set: ImplicationSet = l.into_iter().collect();
        let masks = masks_of(&set);
        for x in subsets(n) {
            let c = set.closure(&x);
            prop_assert!(x.is_subset(&c));
            prop_assert_eq!(set.closure(&c), c.clone());
            prop_assert_eq!(mask(&c), horn_closure(&masks, mask(&x)));
            for imp in &set {
                prop_assert!(imp.is_respected_by(&c));
            }
            for y in subsets(n).filter(|y| x.is_subset(y)) {
                prop_assert!(c.is_subset(&set.closure(&y)));
            }
        }
    }

    #[test]
    fn restack_reproduces_incidence(t in triadic_strategy(5, 4, 3)) {
        let back = TriadicContext::from_slices(t.conditions().to_vec(), &t.slices()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn subposition_holds_iff_every_member(t in triadic_strategy(4, 4, 3), imp in implication_strategy(4)) {
        let m = t.attributes().len();
        let imp = Implication::new(
            imp.premise.into_iter().filter(|&i| i < m).collect(),
            imp.conclusion.into_iter().filter(|&i| i < m).collect(),
        );
        let slices = t.slices();
        let refs: Vec<&FormalContext> = slices.iter().collect();
        let sub = FormalContext::subposition(&refs).unwrap();
        prop_assert_eq!(imp.holds_in(&sub), slices.iter().all(|s| imp.holds_in(s)));
        let all = (0..t.conditions().len()).collect();
        prop_assert_eq!(imp.holds_in(&sub), conditional_holds(&t, &ConditionalImplication::new(imp, all)));
    }

    #[test]
    fn next_closure_enumerates_closed_sets_in_lectic_order(ctx in dyadic_strategy(6, 5)) {
        let m = ctx.attributes().len();
        let rows = rows_of(&ctx);
        let listed: Vec<AttrSet> = closed_sets(m, &ctx).collect();
        let mut brute: Vec<AttrSet> = (0..=full(m))
            .filter(|&x| closure(&rows, x, m) == x)
            .map(unmask)
            .collect();
        brute.sort_by(lectic_cmp);
        prop_assert_eq!(&listed, &brute);
        for w in listed.windows(2) {
            prop_assert!(lectic_cmp(&w[0], &w[1]).is_lt());
        }
        prop_assert_eq!(next_closure(listed.last().unwrap(), m, &ctx), None);
        prop_assert_eq!(concepts(&ctx).len(), brute.len());
    }

    #[test]
    fn canonical_base_is_sound_complete_irredundant(ctx in dyadic_strategy(6, 5)) {
        let m = ctx.attributes().len();
        let rows = rows_of(&ctx);
        let base = canonical_base(&ctx, &ImplicationSet::new()).unwrap();
        for imp in &base {
            prop_assert!(imp.holds_in(&ctx));
        }
        let masks = masks_of(&base);
        prop_assert!(same_theory(&masks, &rows, m));
        for i in 0..masks.len() {
            let mut fewer = masks.clone();
            fewer.remove(i);
            prop_assert!(!same_theory(&fewer, &rows, m));
        }
    }

    #[test]
    fn relative_base_completes_background(ctx in dyadic_strategy(6, 5), pick in 0usize..4) {
        let m = ctx.attributes().len();
        let full_base = canonical_base(&ctx, &ImplicationSet::new()).unwrap();
        let l0: ImplicationSet = full_base.iter().take(pick).cloned().collect();
        let rel = canonical_base(&ctx, &l0).unwrap();
        let mut both = masks_of(&rel);
        both.extend(masks_of(&l0));
        prop_assert!(same_theory(&both, &rows_of(&ctx), m));
        for imp in &rel {
            prop_assert!(!l0.entails(imp));
        }
    }

    #[test]
    fn conditional_validity_is_monotone(t in triadic_strategy(5, 4, 3), imp in implication_strategy(4)) {
        let m = t.attributes().len();
        let imp = Implication::new(
            imp.premise.into_iter().filter(|&i| i < m).collect(),
            imp.conclusion.into_iter().filter(|&i| i < m).collect(),
        );
        let nb = t.conditions().len();
        for c in 0..=full(nb) {
            let holds = conditional_holds(&t, &ConditionalImplication::new(imp.clone(), unmask(c)));
            let brute = triadic_rows(&t, c)
                .iter()
                .all(|&r| r & mask(&imp.premise) != mask(&imp.premise) || r & mask(&imp.conclusion) == mask(&imp.conclusion));
            prop_assert_eq!(holds, brute);
            if holds {
                for d in (0..=c).filter(|d| d & c == *d) {
                    prop_assert!(conditional_holds(&t, &ConditionalImplication::new(imp.clone(), unmask(d))));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_exploration_is_sound_and_complete(t in triadic_strategy(6, 5, 3)) {
        let (n, nb) = (t.attributes().len(), t.conditions().len());
        let out = triadic_exploration(empty_like(&t), None, &mut OracleExpert::triadic(t.clone()), SessionOptions::default()).unwrap();
        for e in out.kc.entries() {
            for &b in &e.holds_for {
                prop_assert!(conditional_holds(&t, &ConditionalImplication::new(e.implication.clone(), [b].into())));
            }
            // not marked: a real counterexample exists in the domain
            for b in (0..nb).filter(|b| !e.holds_for.contains(b)) {
                prop_assert!(!conditional_holds(&t, &ConditionalImplication::new(e.implication.clone(), [b].into())));
            }
        }
        for d in 1..=full(nb) {
            let l = masks_of(&out.kc.implications_for(&unmask(d)));
            prop_assert!(same_theory(&l, &triadic_rows(&t, d), n));
        }
        // examples are faithful copies of domain rows
        let ex = out.examples.as_triadic().unwrap();
        for g in 0..ex.objects().len() {
            let src = t.object_index(&ex.objects()[g]).unwrap();
            prop_assert_eq!(ex.object_row(g).table, t.object_row(src).table);
        }
    }

    #[test]
    fn partial_holds_never_asks_more(t in triadic_strategy(6, 5, 3)) {
        let count = |v| triadic_exploration(
            empty_like(&t), None, &mut OracleExpert::triadic(t.clone()), SessionOptions::default().variant(v),
        ).unwrap().question_count();
        prop_assert!(count(Variant::RecordPartialHolds) <= count(Variant::OnlyFullHolds));
    }

    #[test]
    fn only_full_holds_is_also_complete(t in triadic_strategy(5, 4, 3)) {
        let (n, nb) = (t.attributes().len(), t.conditions().len());
        let out = triadic_exploration(
            empty_like(&t), None, &mut OracleExpert::triadic(t.clone()),
            SessionOptions::default().variant(Variant::OnlyFullHolds),
        ).unwrap();
        for e in out.kc.entries() {
            prop_assert!(!e.holds_for.is_empty());
        }
        for d in 1..=full(nb) {
            let l = masks_of(&out.kc.implications_for(&unmask(d)));
            prop_assert!(same_theory(&l, &triadic_rows(&t, d), n));
        }
    }

    #[test]
    fn exploration_is_deterministic(t in triadic_strategy(6, 5, 3)) {
        let run = || triadic_exploration(empty_like(&t), None, &mut OracleExpert::triadic(t.clone()), SessionOptions::default()).unwrap();
        prop_assert_eq!(run(), run());
    }

    #[test]
    fn every_kc_concept_has_a_complete_extent(t in triadic_strategy(5, 4, 3)) {
        let n = t.attributes().len();
        let out = triadic_exploration(empty_like(&t), None, &mut OracleExpert::triadic(t.clone()), SessionOptions::default()).unwrap();
        let lattice = kc_lattice(&out.kc);
        let labeled = label_nodes(&out.kc, &lattice);
        for (i, node) in labeled.nodes.iter().enumerate() {
            if node.intent.is_empty() {
                continue;
            }
            let extent: ImplicationSet = node.extent.iter().cloned().collect();
            prop_assert!(same_theory(&masks_of(&extent), &triadic_rows(&t, mask(&node.intent)), n));
            // labels of this node and everything below regenerate the extent
            let mut labels: ImplicationSet = node.label.iter().cloned().collect();
            for j in lattice.strictly_below(i) {
                labels.extend(labeled.nodes[j].label.iter().cloned());
            }
            for imp in &extent {
                prop_assert!(labels.entails(imp));
            }
            for imp in &labels {
                prop_assert!(extent.entails(imp));
            }
            // larger condition sets sit lower with smaller extents
            for j in lattice.strictly_below(i) {
                prop_assert!(node.intent.is_subset(&labeled.nodes[j].intent));
                prop_assert!(labeled.nodes[j].extent.len() <= node.extent.len());
            }
        }
    }

    #[test]
    fn identical_experts_agree_everywhere(ctx in dyadic_strategy(5, 4)) {
        let fam = ContextFamily::new(
            ctx.attributes().to_vec(),
            vec![("e1".into(), ctx.clone()), ("e2".into(), ctx.clone())],
        ).unwrap();
        let empty = ContextFamily::empty(fam.attributes().to_vec(), fam.member_ids()).unwrap();
        let out = family_exploration(empty, None, &mut Panel::oracles(&fam), SessionOptions::default()).unwrap();
        for e in out.kc.entries() {
            prop_assert!(e.holds_for.is_empty() || e.holds_for.len() == 2, "{:?}", e);
        }
    }

    #[test]
    fn family_mode_generates_the_same_theories(t in triadic_strategy(5, 4, 3)) {
        let (n, nb) = (t.attributes().len(), t.conditions().len());
        let fam = ContextFamily::from_triadic(&t);
        let empty = ContextFamily::empty(fam.attributes().to_vec(), fam.member_ids()).unwrap();
        let out = family_exploration(empty, None, &mut OracleExpert::family(fam.clone()), SessionOptions::default()).unwrap();
        for d in 1..=full(nb) {
            let l = masks_of(&out.kc.implications_for(&unmask(d)));
            prop_assert!(same_theory(&l, &triadic_rows(&t, d), n));
        }
        // counterexamples only extend the cited expert's context, faithfully
        let ex = out.examples.as_family().unwrap();
        for (e, (_, ctx)) in ex.members().enumerate() {
            for (g, name) in ctx.objects().iter().enumerate() {
                let src = t.object_index(name).unwrap();
                prop_assert_eq!(ctx.row(g), t.row(src, e));
            }
        }
    }
}
