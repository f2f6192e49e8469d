use proptest::prelude::*;

use poset_lab::generate::{self, rng};
use poset_lab::oracle;
use poset_lab::priority::{
    build_ce_w, build_stable_semitransitive, build_weakly_stable_order, check_column_budget, check_injury_bound,
    check_markers, check_partitions, classification_matches_sides, stagewise_partial_order, stagewise_semi_transitive,
    verify_requirements, ConstructionTranscript, OpponentScript, OpponentSuite, Script, SetEvent,
};
use poset_lab::Pairing;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coloring_construction_invariants(seed in any::<u64>(), opponents in 0usize..5, gap in 1usize..6) {
        const MAX: usize = 120;
        let mut r = rng(seed);
        let pair: Vec<_> = (0..opponents).map(|_| generate::essential_pair_script(&mut r, MAX, gap)).collect();
        let run = build_stable_semitransitive(&pair, MAX).unwrap();
        let t = &run.transcript;
        prop_assert!(stagewise_semi_transitive(&run.coloring).holds());
        prop_assert!(oracle::semi_transitive_violation(&run.coloring).is_none());
        prop_assert!(check_partitions(t).holds());
        prop_assert!(check_markers(t).holds());
        prop_assert!(check_injury_bound(t).holds());
        // the column added at stage y + 1 is the side snapshot after stage y
        for y in 1..MAX {
            let sides = t.stages[y - 1].membership.as_bytes();
            for x in 0..y {
                prop_assert_eq!(run.coloring.get(x, y), sides[x] - b'0');
            }
        }
        let suite = OpponentSuite { pair, ..Default::default() };
        prop_assert!(!verify_requirements(t, &suite).unwrap().any_failed());
    }

    #[test]
    fn order_construction_invariants(seed in any::<u64>(), counts in (0usize..3, 0usize..3, 0usize..3), gap in 1usize..6) {
        const MAX: usize = 120;
        let mut r = rng(seed);
        let rs: Vec<_> = (0..counts.0).map(|_| generate::set_script(&mut r, MAX, gap)).collect();
        let ss: Vec<_> = (0..counts.1).map(|_| generate::set_script(&mut r, MAX, gap)).collect();
        let ts: Vec<_> = (0..counts.2).map(|_| generate::element_script(&mut r, MAX, gap)).collect();
        let run = build_weakly_stable_order(&rs, &ss, &ts, MAX, 20).unwrap();
        let t = &run.transcript;
        prop_assert!(stagewise_partial_order(run.order.relation()).holds());
        prop_assert!(oracle::is_partial_order(run.order.relation()));
        prop_assert!(check_partitions(t).holds());
        prop_assert!(check_markers(t).holds());
        prop_assert!(check_injury_bound(t).holds());
        prop_assert!(classification_matches_sides(&run.classification, run.final_sides()).holds());
        for y in 1..MAX {
            let sides = t.stages[y - 1].membership.as_bytes();
            for x in 0..y {
                prop_assert_eq!(run.order.leq(x, y), sides[x] == b'S');
                prop_assert_eq!(run.order.leq(y, x), sides[x] == b'L');
            }
        }
        let suite = OpponentSuite { r: rs, s: ss, t: ts, ..Default::default() };
        prop_assert!(!verify_requirements(t, &suite).unwrap().any_failed());
    }

    #[test]
    fn ce_construction_invariants(seed in any::<u64>(), count in 0usize..10) {
        const MAX: usize = 200;
        let pairing = Pairing::Cantor;
        let functionals = generate::functional_suite(&mut rng(seed), pairing, count, MAX, 0.6);
        let run = build_ce_w(&functionals, pairing, MAX).unwrap();
        prop_assert!(check_column_budget(&run.transcript, pairing, MAX).holds());
        prop_assert!(run.transcript.action_counts().iter().all(|&c| c <= 1));
        prop_assert!(run.column_counts(MAX).iter().enumerate().all(|(i, &c)| c <= i));
        let suite = OpponentSuite { functionals: functionals.clone(), ..Default::default() };
        prop_assert!(!verify_requirements(&run.transcript, &suite).unwrap().any_failed());
        prop_assert_eq!(build_ce_w(&functionals, pairing, MAX).unwrap(), run);
    }

    #[test]
    fn transcripts_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pair = vec![generate::essential_pair_script(&mut r, 40, 2)];
        let run = build_stable_semitransitive(&pair, 40).unwrap();
        let json = serde_json::to_string(&run.transcript).unwrap();
        prop_assert_eq!(serde_json::from_str::<ConstructionTranscript>(&json).unwrap(), run.transcript);
    }
}

#[test]
fn runs_are_deterministic() {
    let make = || {
        let mut r = rng(11);
        let pair: Vec<_> = (0..3).map(|_| generate::essential_pair_script(&mut r, 200, 1)).collect();
        serde_json::to_vec(&build_stable_semitransitive(&pair, 200).unwrap().transcript).unwrap()
    };
    assert_eq!(make(), make());
}

#[test]
fn scripts_validate_on_load() {
    let ok = r#"{"kind":"set-formula","budget":10,"events":[{"stage":2,"r":[0,1]}]}"#;
    let script: OpponentScript = serde_json::from_str(ok).unwrap();
    assert_eq!(script, OpponentScript::SetFormula(Script::new(10, vec![SetEvent { stage: 2, r: vec![0, 1] }]).unwrap()));
    let late = r#"{"kind":"set-formula","budget":1,"events":[{"stage":2,"r":[0]}]}"#;
    assert!(serde_json::from_str::<OpponentScript>(late).is_err());
    let blocks = r#"{"kind":"functional","budget":9,"events":[
        {"stage":1,"x":0,"value":[5]},{"stage":2,"x":1,"value":[3]}]}"#;
    assert!(serde_json::from_str::<OpponentScript>(blocks).is_err());
    let suite: OpponentSuite = serde_json::from_str(r#"{"r":[{"budget":3,"events":[]}]}"#).unwrap();
    assert_eq!(suite.r.len(), 1);
}
