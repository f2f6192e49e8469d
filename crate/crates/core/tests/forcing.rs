mod common;

use proptest::prelude::*;

use common::coloring;
use poset_lab::forcing::{
    cac_extension_search, extend_both, psrt_extension_search, split_pair_search, x_of, ExtensionMode, HomogCondition,
    Homogeneity, OrderCondition, SplitPair,
};
use poset_lab::generate::{self, rng};
use poset_lab::oracle;
use poset_lab::structures::{classify_elements, ColoringPrefix};
use poset_lab::{Error, SetPrefix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn split_pairs_match_brute_force(seed in any::<u64>(), horizon in 4usize..20, bound in 0usize..3, steps in 0usize..3) {
        let mut r = rng(seed);
        let (p, _) = generate::sided_order(&mut r, 30, [2, 1, 2]);
        let cls = classify_elements(&p, 6).unwrap();
        let mut c = OrderCondition::default();
        for _ in 0..steps {
            c = extend_both(&c, &p, &cls, horizon).unwrap_or(c);
        }
        let fast = split_pair_search(&c, &p, &cls, horizon, bound).unwrap();
        prop_assert_eq!(&fast, &oracle::split_pairs(&c, &p, horizon, bound));

        // closed under sub-pairs that keep the comparability constraint
        for sp in &fast {
            for m0 in 0u32..1 << sp.e0.len() {
                for m1 in 0u32..1 << sp.e1.len() {
                    let e0: Vec<usize> = sp.e0.iter().enumerate().filter(|(i, _)| m0 >> i & 1 == 1).map(|(_, &x)| x).collect();
                    let e1: Vec<usize> = sp.e1.iter().enumerate().filter(|(i, _)| m1 >> i & 1 == 1).map(|(_, &x)| x).collect();
                    if e0.last().is_none_or(|&m| e1.iter().all(|&y| p.leq(m, y))) {
                        let sub = SplitPair { e0, e1 };
                        prop_assert!(fast.contains(&sub));
                    }
                }
            }
        }
    }

    #[test]
    fn extension_shrinks_x(seed in any::<u64>(), steps in 0usize..4) {
        let mut r = rng(seed);
        let (p, _) = generate::sided_order(&mut r, 60, [2, 1, 2]);
        let cls = classify_elements(&p, 10).unwrap();
        let mut c = OrderCondition::default();
        for _ in 0..steps {
            let Ok(d) = extend_both(&c, &p, &cls, 60) else { break };
            prop_assert!(d.validate(&p, &cls).is_ok());
            let (xc, xd) = (x_of(&c, &p, &cls, 60).unwrap(), x_of(&d, &p, &cls, 60).unwrap());
            prop_assert!(xd.set.is_subset(&xc.set));
            prop_assert!(xd.excluded >= xc.excluded);
            c = d;
        }
    }

    #[test]
    fn homogeneity_extensions_revalidate(f in coloring(2, 14), color in 0u8..2, full in any::<bool>()) {
        prop_assume!(f.size() >= 4);
        let h = if full { Homogeneity::Full } else { Homogeneity::Pseudo };
        let c = HomogCondition::initial(2, SetPrefix::full(f.size()), h);
        let mode = ExtensionMode::Threshold { threshold: 2 };
        let out = if full { cac_extension_search(&c, &f, color, mode) } else { psrt_extension_search(&c, &f, color, mode) };
        match out {
            Ok(ext) => {
                prop_assert!(ext.approximate);
                prop_assert!(ext.condition.validate(&f).is_ok());
                prop_assert_eq!(ext.condition.parts[color as usize].last(), Some(&ext.chosen));
                // chain a second step from the new condition
                if let Ok(next) = psrt_or_cac(&ext.condition, &f, 1 - color, mode) {
                    prop_assert!(next.condition.validate(&f).is_ok());
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::Stall(_))),
        }
    }

    #[test]
    fn limit_mode_on_stable_colorings_is_exact(seed in any::<u64>()) {
        let f = generate::random_semi_transitive(&mut rng(seed), 30, 0.15);
        let c = HomogCondition::initial(2, SetPrefix::full(20), Homogeneity::Full);
        for color in 0..2 {
            if let Ok(ext) = cac_extension_search(&c, &f, color, ExtensionMode::Limit { tail_window: 10 }) {
                prop_assert!(!ext.approximate);
                prop_assert!(ext.condition.validate(&f).is_ok());
            }
        }
    }
}

fn psrt_or_cac(
    c: &HomogCondition,
    f: &ColoringPrefix,
    color: u8,
    mode: ExtensionMode,
) -> poset_lab::Result<poset_lab::forcing::Extension> {
    match c.homogeneity {
        Homogeneity::Full => cac_extension_search(c, f, color, mode),
        Homogeneity::Pseudo => psrt_extension_search(c, f, color, mode),
    }
}

#[test]
fn constant_coloring_extends_only_its_color() {
    let f = ColoringPrefix::constant(3, 20, 1).unwrap();
    let c = HomogCondition::initial(3, SetPrefix::full(20), Homogeneity::Pseudo);
    let mode = ExtensionMode::default_threshold(20);
    let ext = psrt_extension_search(&c, &f, 1, mode).unwrap();
    assert_eq!(ext.chosen, 0);
    assert_eq!(ext.condition.reservoir.to_vec(), (1..20).collect::<Vec<_>>());
    assert!(matches!(psrt_extension_search(&c, &f, 0, mode), Err(Error::Stall(_))));
    assert!(matches!(psrt_extension_search(&c, &f, 2, mode), Err(Error::Stall(_))));
}

#[test]
fn condition_json_uses_part_keys() {
    let c = HomogCondition::initial(2, SetPrefix::full(4), Homogeneity::Full);
    let v = serde_json::to_value(&c).unwrap();
    assert!(v.get("F0").is_some() && v.get("F1").is_some());
    assert_eq!(serde_json::from_value::<HomogCondition>(v).unwrap(), c);
    let o: OrderCondition = serde_json::from_str(r#"{"F0":[1],"F1":[]}"#).unwrap();
    assert_eq!(o, OrderCondition::new(&[1], &[]));
}
