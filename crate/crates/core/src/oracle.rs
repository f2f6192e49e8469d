//! Brute-force reference implementations. Each one recomputes a quantity from
//! its definition by plain enumeration, sharing no code with the main
//! implementations beyond the data structures themselves.

use crate::forcing::{OrderCondition, SplitPair};
use crate::priority::{ElementEvent, PairEvent, Script};
use crate::structures::{Color, ColoringPrefix, LinearOrderPrefix, PartialOrderPrefix, Relation};
use crate::{Pairing, SetPrefix};

/// Largest prefix the path-enumeration oracles accept.
pub const MAX_PATH_ORACLE_SIZE: usize = 16;

/// Every 2-coloring of pairs over `[0, n)`, in increasing order of the
/// bit pattern of `upper`.
pub fn all_colorings(n: usize) -> impl Iterator<Item = ColoringPrefix> {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 32, "too many colorings to enumerate");
    (0u64..1 << pairs).map(move |bits| {
        let upper = (0..pairs).map(|i| ((bits >> i) & 1) as u8).collect();
        ColoringPrefix::from_upper(2, n, upper).expect("valid pattern")
    })
}

/// The least `(x, y, z)` with `f(x,y) = f(y,z) = 1` and `f(x,z) = 0`.
pub fn semi_transitive_violation(f: &ColoringPrefix) -> Option<(usize, usize, usize)> {
    let n = f.size();
    (0..n)
        .flat_map(|x| (x + 1..n).flat_map(move |y| (y + 1..n).map(move |z| (x, y, z))))
        .find(|&(x, y, z)| f.get(x, y) == 1 && f.get(y, z) == 1 && f.get(x, z) == 0)
}

/// Whether some increasing sequence from `x` to `y` has every step colored
/// `color`, found by trying every subset of the interior.
pub fn has_path(f: &ColoringPrefix, x: usize, y: usize, color: Color) -> bool {
    let interior: Vec<usize> = (x + 1..y).collect();
    assert!(interior.len() < MAX_PATH_ORACLE_SIZE, "interval too long for subset enumeration");
    (0u32..1 << interior.len()).any(|mask| {
        let mut prev = x;
        for (i, &z) in interior.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if f.get(prev, z) != color {
                    return false;
                }
                prev = z;
            }
        }
        f.get(prev, y) == color
    })
}

/// `g(x,y) = 1` iff a color-1 path joins `x` to `y`.
pub fn closure(f: &ColoringPrefix) -> ColoringPrefix {
    ColoringPrefix::from_fn(2, f.size(), |x, y| u8::from(has_path(f, x, y, 1))).expect("two colors")
}

/// `h(x,y) = 0` iff a color-0 path joins `x` to `y`.
pub fn linearization(g: &ColoringPrefix) -> ColoringPrefix {
    ColoringPrefix::from_fn(2, g.size(), |x, y| u8::from(!has_path(g, x, y, 0))).expect("two colors")
}

/// Whether `f` is a restriction-closed witness-free path: the points are
/// strictly increasing and every step has `color`.
pub fn path_is_valid(f: &ColoringPrefix, points: &[usize], color: Color) -> bool {
    points.len() >= 2 && points.windows(2).all(|w| w[0] < w[1] && w[1] < f.size() && f.get(w[0], w[1]) == color)
}

/// Reflexivity, antisymmetry and transitivity by direct enumeration.
pub fn is_partial_order(rel: &Relation) -> bool {
    let n = rel.size();
    (0..n).all(|x| rel.get(x, x))
        && (0..n).all(|x| (0..n).all(|y| x == y || !(rel.get(x, y) && rel.get(y, x))))
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(rel.get(x, y) && rel.get(y, z)) || rel.get(x, z))))
}

pub fn is_linear_order(rel: &Relation) -> bool {
    let n = rel.size();
    is_partial_order(rel) && (0..n).all(|x| (0..n).all(|y| rel.get(x, y) || rel.get(y, x)))
}

/// Whether consecutive pairs of the sorted set all share one color.
pub fn is_pseudo_homogeneous(f: &ColoringPrefix, set: &[usize]) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let colors: Vec<Color> = s.windows(2).map(|w| f.get(w[0], w[1])).collect();
    colors.windows(2).all(|w| w[0] == w[1])
}

/// Every pseudo-homogeneous subset of `[0, f.size())` of exactly `size`
/// elements, in lexicographic order.
pub fn pseudo_homogeneous_sets(f: &ColoringPrefix, size: usize) -> Vec<Vec<usize>> {
    fn go(f: &ColoringPrefix, size: usize, cur: &mut Vec<usize>, color: Option<Color>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().map_or(0, |&m| m + 1);
        for z in start..f.size() {
            let c = cur.last().map(|&m| f.get(m, z));
            if color.is_some() && c != color {
                continue;
            }
            cur.push(z);
            go(f, size, cur, color.or(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size > 0 {
        go(f, size, &mut Vec::new(), None, &mut out);
    }
    out
}

/// Length of the longest subsequence of `seq` that is increasing under `less`,
/// by quadratic dynamic programming.
pub fn longest_monotone(seq: &[usize], less: impl Fn(usize, usize) -> bool) -> usize {
    let mut best = vec![1usize; seq.len()];
    for j in 0..seq.len() {
        for i in 0..j {
            if less(seq[i], seq[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Longest `<_L`-ascending subsequence of `small` or `<_L`-descending one of `large`.
pub fn longest_stable_monotone(h: &LinearOrderPrefix, small: &[usize], large: &[usize]) -> usize {
    longest_monotone(small, |a, b| h.lt(a, b)).max(longest_monotone(large, |a, b| h.lt(b, a)))
}

/// Literal nested loops: every `x < x_bound` has an `R > x` such that every
/// `y < y_bound` has a witnessed `(R, S)` with `S > y`. Returns the first
/// failing `x`.
pub fn essential_failure(script: &Script<PairEvent>, x_bound: usize, y_bound: usize) -> Option<usize> {
    let events = script.events();
    (0..x_bound).find(|&x| {
        !events.iter().any(|cand| {
            cand.r.iter().all(|&a| a > x)
                && (0..y_bound).all(|y| events.iter().any(|ev| ev.r == cand.r && ev.s.iter().all(|&b| b > y)))
        })
    })
}

pub fn combined_essential_failure(script: &Script<ElementEvent>, x_bound: usize) -> Option<usize> {
    (0..x_bound).find(|&x| !script.events().iter().any(|ev| ev.u > x && ev.v > x && ev.u != ev.v))
}

/// Index of the first event with `R ⊆ comp0` and `S ⊆ comp1`.
pub fn dependent_witness(script: &Script<PairEvent>, comp0: &SetPrefix, comp1: &SetPrefix) -> Option<usize> {
    script
        .events()
        .iter()
        .position(|ev| ev.r.iter().all(|&x| comp0.contains(x)) && ev.s.iter().all(|&x| comp1.contains(x)))
}

/// `B` evaluated code by code from its defining formula.
pub fn b_membership(family: &[SetPrefix], pairing: Pairing, z: usize) -> bool {
    let (x, y) = pairing.unpair(z);
    family[0].contains(x) && (0..=x).any(|j| family.get(j).is_some_and(|a| a.contains(y)))
}

/// Whether every block has an element of `a`.
pub fn traces(blocks: &[Vec<usize>], a: &SetPrefix) -> bool {
    blocks.iter().all(|b| b.iter().any(|&x| a.contains(x)))
}

/// Every split pair with both parts of size at most `bound` inside
/// `[0, horizon)`, by enumerating all pairs of subsets.
pub fn split_pairs(c: &OrderCondition, p: &PartialOrderPrefix, horizon: usize, bound: usize) -> Vec<SplitPair> {
    let in_x = |z: usize| {
        c.f0.iter().all(|&x| x < z && p.leq(x, z) && x != z) && c.f1.iter().all(|&y| y < z && !p.leq(y, z) && !p.leq(z, y))
    };
    let subsets: Vec<Vec<usize>> = small_subsets(horizon, bound);
    let mut out = Vec::new();
    for e0 in &subsets {
        if !e0.iter().all(|&z| in_x(z)) {
            continue;
        }
        let mut seq: Vec<usize> = c.f0.iter().chain(e0).copied().collect();
        seq.sort_unstable();
        let ascending = (0..seq.len()).all(|i| (i + 1..seq.len()).all(|j| p.leq(seq[i], seq[j]) && seq[i] != seq[j]));
        if !ascending {
            continue;
        }
        for e1 in &subsets {
            if !e1.iter().all(|&z| in_x(z)) {
                continue;
            }
            let anti: Vec<usize> = c.f1.iter().chain(e1).copied().collect();
            let antichain = (0..anti.len())
                .all(|i| (0..anti.len()).all(|j| i == j || (anti[i] != anti[j] && !p.leq(anti[i], anti[j]))));
            let cross = e0.iter().max().is_none_or(|&m| e1.iter().all(|&x| p.leq(m, x)));
            if antichain && cross {
                out.push(SplitPair { e0: e0.clone(), e1: e1.clone() });
            }
        }
    }
    out.sort();
    out
}

/// Subsets of `[0, n)` with at most `bound` elements, each sorted.
fn small_subsets(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for s in &layer {
            for z in s.last().map_or(0, |&m| m + 1)..n {
                let mut t: Vec<usize> = s.clone();
                t.push(z);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The smallest coloring (by size, then bit pattern) on which `candidate`
/// disagrees with the path-enumeration closure, over all sizes `≤ max_n`.
pub fn closure_counterexample(
    candidate: impl Fn(&ColoringPrefix) -> ColoringPrefix,
    max_n: usize,
) -> Option<ColoringPrefix> {
    (0..=max_n).flat_map(all_colorings).find(|f| candidate(f) != closure(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_colorings() {
        assert_eq!(all_colorings(4).count(), 64);
        assert_eq!(all_colorings(0).count(), 1);
    }

    #[test]
    fn pseudo_homogeneous_sets_are_pseudo_homogeneous() {
        let f = ColoringPrefix::from_fn(2, 8, |x, y| ((x * 3 + y) % 2) as u8).unwrap();
        let sets = pseudo_homogeneous_sets(&f, 4);
        assert!(!sets.is_empty());
        assert!(sets.iter().all(|s| is_pseudo_homogeneous(&f, s)));
        let brute = small_subsets(8, 4).into_iter().filter(|s| s.len() == 4 && is_pseudo_homogeneous(&f, s)).count();
        assert_eq!(sets.len(), brute);
    }

    #[test]
    fn buggy_closure_is_caught() {
        let buggy = |f: &ColoringPrefix| f.clone();
        let cex = closure_counterexample(buggy, 4).unwrap();
        assert_eq!(cex.size(), 3);
        assert_eq!(cex.upper(), &[1, 0, 1]);
    }
}
