#![allow(dead_code)]

use proptest::prelude::*;

use poset_lab::structures::{ColoringPrefix, Relation};

pub fn coloring(colors: u8, max_size: usize) -> impl Strategy<Value = ColoringPrefix> {
    (0..=max_size).prop_flat_map(move |n| {
        prop::collection::vec(0..colors, n * n.saturating_sub(1) / 2)
            .prop_map(move |upper| ColoringPrefix::from_upper(colors, n, upper).unwrap())
    })
}

pub fn relation(max_size: usize) -> impl Strategy<Value = Relation> {
    (0..=max_size).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| Relation::from_fn(n, |x, y| bits[x * n + y]))
    })
}

/// A random relation closed under reflexivity and transitivity with the
/// symmetric part removed, so it is a partial order.
pub fn partial_order_relation(max_size: usize) -> impl Strategy<Value = Relation> {
    (0..=max_size).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            // orient every edge upward, then close transitively
            let mut r = Relation::from_fn(n, |x, y| x == y || (x < y && bits[x * n + y]));
            for k in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        if r.get(x, k) && r.get(k, y) {
                            r.set(x, y, true);
                        }
                    }
                }
            }
            r
        })
    })
}
