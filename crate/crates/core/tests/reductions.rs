mod common;

use proptest::prelude::*;

use common::coloring;
use poset_lab::oracle;
use poset_lab::reductions::{
    close_semitransitive, induced_linear_order, linearize, pullback_g_to_f, pullback_h_to_g, semitransitive_to_order,
    solve_stable_linear, witness_path, Direction,
};
use poset_lab::structures::{check_semi_transitive, is_pseudo_homogeneous, Class, ElementClassification};
use poset_lab::Error;

proptest! {
    #[test]
    fn closure_matches_path_oracle(f in coloring(2, 8)) {
        let g = close_semitransitive(&f).unwrap();
        prop_assert_eq!(&g, &oracle::closure(&f));
        prop_assert!(check_semi_transitive(&g).unwrap().holds());
        prop_assert_eq!(close_semitransitive(&g).unwrap(), g);
    }

    #[test]
    fn closure_only_adds_ones(f in coloring(2, 8)) {
        let g = close_semitransitive(&f).unwrap();
        for x in 0..f.size() {
            for y in x + 1..f.size() {
                prop_assert!(g.get(x, y) >= f.get(x, y));
            }
        }
    }

    #[test]
    fn linearization_matches_oracle(f in coloring(2, 8)) {
        let g = close_semitransitive(&f).unwrap();
        let h = linearize(&g).unwrap();
        prop_assert_eq!(&h, &oracle::linearization(&g));
        let l = induced_linear_order(&h).unwrap();
        prop_assert!(oracle::is_linear_order(l.as_partial().relation()));
    }

    #[test]
    fn linearize_rejects_non_semi_transitive(f in coloring(2, 7)) {
        match oracle::semi_transitive_violation(&f) {
            Some((x, y, z)) => prop_assert_eq!(linearize(&f).unwrap_err(), Error::NotSemiTransitive(x, y, z)),
            None => prop_assert!(linearize(&f).is_ok()),
        }
    }

    #[test]
    fn witness_paths_are_valid(f in coloring(2, 9), color in 0u8..2) {
        for x in 0..f.size() {
            for y in x + 1..f.size() {
                let path = witness_path(&f, x, y, color).unwrap();
                prop_assert_eq!(path.is_some(), oracle::has_path(&f, x, y, color));
                if let Some(p) = path {
                    prop_assert_eq!((p.start(), p.end()), (x, y));
                    prop_assert!(oracle::path_is_valid(&f, p.points(), color));
                }
            }
        }
    }

    #[test]
    fn pullbacks_preserve_pseudo_homogeneity(f in coloring(2, 9)) {
        let g = close_semitransitive(&f).unwrap();
        let h = linearize(&g).unwrap();
        for size in 1..=4 {
            for set in oracle::pseudo_homogeneous_sets(&h, size) {
                let on_g = pullback_h_to_g(&set, &g, &h).unwrap();
                prop_assert!(is_pseudo_homogeneous(&g, &on_g, None));
                prop_assert!(set.iter().all(|x| on_g.contains(x)));
                let on_f = pullback_g_to_f(&on_g, &f, &g).unwrap();
                prop_assert!(oracle::is_pseudo_homogeneous(&f, &on_f));
                prop_assert!(on_g.iter().all(|x| on_f.contains(x)));
            }
        }
    }

    #[test]
    fn semitransitive_orders_are_partial_orders(f in coloring(2, 8)) {
        let g = close_semitransitive(&f).unwrap();
        let p = semitransitive_to_order(&g).unwrap();
        prop_assert!(oracle::is_partial_order(p.relation()));
    }

    #[test]
    fn stable_linear_solver_is_optimal(f in coloring(2, 10), sides in prop::collection::vec(0u8..3, 10)) {
        let g = close_semitransitive(&f).unwrap();
        let h = induced_linear_order(&linearize(&g).unwrap()).unwrap();
        prop_assume!(h.size() > 0);
        let classes: Vec<Class> = sides[..h.size()]
            .iter()
            .map(|&s| [Class::Small, Class::Large, Class::Isolated][s as usize])
            .collect();
        let cls = ElementClassification::from_classes(&classes);
        let small: Vec<usize> = cls.elements_of(Class::Small).collect();
        let large: Vec<usize> = cls.elements_of(Class::Large).collect();
        let out = solve_stable_linear(&h, &cls).unwrap();
        prop_assert_eq!(out.elements.len(), oracle::longest_stable_monotone(&h, &small, &large));
        let (pool, ok): (&[usize], fn(&poset_lab::structures::LinearOrderPrefix, usize, usize) -> bool) =
            match out.direction {
                Direction::Ascending => (&small, |h, a, b| h.lt(a, b)),
                Direction::Descending => (&large, |h, a, b| h.lt(b, a)),
            };
        prop_assert!(out.elements.iter().all(|x| pool.contains(x)));
        prop_assert!(out.elements.windows(2).all(|w| w[0] < w[1] && ok(&h, w[0], w[1])));
    }
}

#[test]
fn solver_rejects_unstable_elements() {
    let f = poset_lab::structures::ColoringPrefix::constant(2, 4, 1).unwrap();
    let h = induced_linear_order(&linearize(&f).unwrap()).unwrap();
    let cls = ElementClassification::from_classes(&[Class::Small, Class::Unstable, Class::Small, Class::Small]);
    assert!(solve_stable_linear(&h, &cls).is_err());
    assert!(solve_stable_linear(&h, &ElementClassification::from_classes(&[])).is_err());
}
