use proptest::prelude::*;

use poset_lab::generate::{self, rng};
use poset_lab::immunity::{
    build_b, combined_essential_check, dependent_witness_search, dominates, essential_check, kenum_to_subset,
    lift_array_to_b, normalize_class_enum, principal_function, traces, union_hyp_transform, ArrayOfSets, CoCeApprox,
    Essentiality, KenumBranch, StringBlockEnum, UnionSplit, DEFAULT_THRESHOLD,
};
use poset_lab::oracle;
use poset_lab::priority::{ElementEvent, PairEvent, Script};
use poset_lab::{Pairing, SetPrefix};

fn pair_script(budget: usize) -> impl Strategy<Value = Script<PairEvent>> {
    prop::collection::vec((0..=budget, 0usize..20, 1usize..3, 0usize..4, 1usize..3), 0..30).prop_map(move |raw| {
        let mut events: Vec<PairEvent> = raw
            .into_iter()
            .map(|(stage, a, lr, gap, ls)| PairEvent {
                stage,
                r: (a..a + lr).collect(),
                s: (a + lr + gap..a + lr + gap + ls).collect(),
            })
            .collect();
        events.sort_by_key(|ev| ev.stage);
        Script::new(budget, events).unwrap()
    })
}

fn element_script(budget: usize) -> impl Strategy<Value = Script<ElementEvent>> {
    prop::collection::vec((0..=budget, 0usize..25, 1usize..25), 0..30).prop_map(move |raw| {
        let mut events: Vec<ElementEvent> =
            raw.into_iter().map(|(stage, u, d)| ElementEvent { stage, u, v: (u + d) % 25 }).collect();
        events.sort_by_key(|ev| ev.stage);
        Script::new(budget, events).unwrap()
    })
}

fn set_prefix(domain: usize) -> impl Strategy<Value = SetPrefix> {
    prop::collection::vec(any::<bool>(), domain).prop_map(move |bits| SetPrefix::from_fn(domain, |x| bits[x]))
}

proptest! {
    #[test]
    fn essentiality_matches_nested_loops(script in pair_script(50), xb in 0usize..25, yb in 0usize..25) {
        let fast = essential_check(&script, xb, yb);
        match oracle::essential_failure(&script, xb, yb) {
            Some(x) => prop_assert_eq!(fast, Essentiality::FailsAt { x }),
            None => prop_assert!(fast.is_essential()),
        }
    }

    #[test]
    fn combined_essentiality_matches_nested_loops(script in element_script(50), xb in 0usize..25) {
        let fast = combined_essential_check(&script, xb);
        match oracle::combined_essential_failure(&script, xb) {
            Some(x) => prop_assert_eq!(fast, Essentiality::FailsAt { x }),
            None => prop_assert!(fast.is_essential()),
        }
    }

    #[test]
    fn dependent_search_matches_scan(script in pair_script(50), c0 in set_prefix(30), c1 in set_prefix(30)) {
        let fast = dependent_witness_search(&script, &c0, &c1).map(|d| d.event);
        prop_assert_eq!(fast, oracle::dependent_witness(&script, &c0, &c1));
    }

    #[test]
    fn traces_matches_oracle(a in set_prefix(40), seed in any::<u64>()) {
        let mut r = rng(seed);
        let full = SetPrefix::full(40);
        let arr = generate::tracing_array(&mut r, &full, 8, 3);
        prop_assert_eq!(traces(&arr, &a).unwrap().holds(), oracle::traces(arr.blocks(), &a));
    }

    #[test]
    fn b_matches_formula(seed in any::<u64>(), members in 1usize..5, domain in 10usize..200) {
        let pairing = Pairing::Cantor;
        let mut r = rng(seed);
        let family: Vec<CoCeApprox> =
            (0..members).map(|_| generate::random_coce(&mut r, domain, 5, 0.5, 0.3)).collect();
        let codes = (0..).take_while(|&z| { let (x, y) = pairing.unpair(z); x + y < domain }).count();
        let finals: Vec<SetPrefix> = family.iter().map(|a| a.final_snapshot().clone()).collect();
        let b = build_b(&family, pairing, codes).unwrap();
        for z in 0..codes {
            prop_assert_eq!(b.contains(z), oracle::b_membership(&finals, pairing, z));
        }
    }

    #[test]
    fn union_split_traces_its_target(seed in any::<u64>(), d0 in 0.1f64..0.95) {
        let mut r = rng(seed);
        let a0 = generate::random_coce(&mut r, 200, 20, d0, 0.2);
        let a1 = generate::random_coce(&mut r, 200, 20, 0.4, 0.2);
        let (f0, f1) = (a0.final_snapshot(), a1.final_snapshot());
        let union = SetPrefix::from_fn(200, |x| f0.contains(x) || f1.contains(x));
        let arr = generate::tracing_array(&mut r, &union, 25, 3);
        match union_hyp_transform(&arr, &a0, 19, DEFAULT_THRESHOLD) {
            Ok(UnionSplit::First { certified, array }) => {
                prop_assert!(certified.len() >= DEFAULT_THRESHOLD);
                prop_assert!(traces(&array, f1).unwrap().holds());
            }
            Ok(UnionSplit::Second { array, .. }) => prop_assert!(traces(&array, f0).unwrap().holds()),
            Err(e) => prop_assert!(matches!(e, poset_lab::Error::Horizon(_))),
        }
    }

    #[test]
    fn lifted_arrays_trace_b(seed in any::<u64>(), n in 0usize..3) {
        let pairing = Pairing::Cantor;
        let mut r = rng(seed);
        let family: Vec<CoCeApprox> = (0..=n).map(|_| generate::random_coce(&mut r, 50, 5, 0.5, 0.2)).collect();
        let a0 = family[0].final_snapshot().clone();
        let x = a0.members().find(|&x| x >= n && x < 25);
        prop_assume!(x.is_some());
        let arr = generate::tracing_array(&mut r, &family[n].final_snapshot().resized(25), 6, 3);
        let lifted = lift_array_to_b(&arr, n, x.unwrap(), &a0, pairing).unwrap();
        let codes = (0..).take_while(|&z| { let (x, y) = pairing.unpair(z); x + y < 50 }).count();
        let b = build_b(&family, pairing, codes).unwrap();
        prop_assert!(traces(&lifted, &b).unwrap().holds());
    }

    #[test]
    fn kenum_subsets_lie_in_a(seed in any::<u64>(), k in 1usize..5) {
        let mut r = rng(seed);
        let a = generate::random_coce(&mut r, 600, 30, 0.5, 0.3);
        let kenum = generate::tracing_kenum(&mut r, a.final_snapshot(), 60, k);
        match kenum_to_subset(&kenum, &a, 29, DEFAULT_THRESHOLD) {
            Ok(out) => {
                prop_assert!(out.elements.iter().all(|&x| a.final_snapshot().contains(x)));
                prop_assert!(out.elements.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(out.branches.last(), Some(&KenumBranch::Minima));
                prop_assert!(out.branches.len() <= k);
            }
            Err(e) => prop_assert!(matches!(e, poset_lab::Error::Horizon(_))),
        }
    }

    #[test]
    fn normalization_keeps_bounds_and_coverage(
        raw in prop::collection::vec(prop::collection::vec("[01]{0,12}", 1..4), 1..20),
        wanted in 0usize..8,
    ) {
        let input = StringBlockEnum::new(raw).unwrap();
        match normalize_class_enum(&input, wanted) {
            Ok(out) => {
                prop_assert_eq!(out.enumeration.blocks.len(), wanted);
                prop_assert!(out.sources.windows(2).all(|w| w[0] < w[1]));
                for (i, (block, &src)) in out.enumeration.blocks.iter().zip(&out.sources).enumerate() {
                    prop_assert!(block.iter().all(|s| s.len() == i));
                    prop_assert!(block.len() <= input.blocks[src].len());
                    prop_assert!(poset_lab::immunity::covers(block, &input.blocks[src]));
                }
                prop_assert!(out.enumeration.width() <= input.width());
            }
            Err(e) => prop_assert!(matches!(e, poset_lab::Error::Horizon(_))),
        }
    }

    #[test]
    fn principal_function_is_sorted_members(a in set_prefix(60)) {
        prop_assume!(!a.is_empty());
        let p = principal_function(&a).unwrap();
        let mut sorted: Vec<usize> = (0..60).filter(|&x| a.contains(x)).collect();
        sorted.sort_unstable();
        prop_assert_eq!(&p, &sorted);
        let identity: Vec<usize> = (0..p.len()).collect();
        prop_assert!(dominates(&p, &identity).holds());
    }
}

#[test]
fn array_json_shape() {
    let arr: ArrayOfSets = serde_json::from_str(r#"{"kind":"kenum","k":2,"blocks":[[0,1],[3]]}"#).unwrap();
    assert_eq!(arr.width(), 2);
    assert!(serde_json::from_str::<ArrayOfSets>(r#"{"kind":"kenum","k":1,"blocks":[[0,1]]}"#).is_err());
    assert!(serde_json::from_str::<ArrayOfSets>(r#"{"kind":"array","blocks":[[0,2],[2]]}"#).is_err());
    assert!(serde_json::from_str::<ArrayOfSets>(r#"{"kind":"array","blocks":[[3,5],[1]]}"#).is_ok());
}
