//! The reduction chain from an arbitrary 2-coloring `f` to a semi-transitive
//! coloring `g` and then to a linear order `h`, with the maps pulling
//! pseudo-homogeneous sets for `h` back to `g` and for `g` back to `f`.
//!
//! Witness sequences are strictly increasing, so every intermediate point of a
//! path from `x` to `y` lies in the open interval `(x, y)`. Reachability is a
//! dynamic program over interval endpoints, `O(N³)` per coloring.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::set::normalized;
use crate::structures::{
    check_semi_transitive, pseudo_color, validate_linear_order, validate_partial_order, Class, Color,
    ColoringPrefix, ElementClassification, LinearOrderPrefix, PartialOrderPrefix, Relation,
};
use crate::Verdict;

/// A strictly increasing sequence `x₀ < … < x_l`, `l ≥ 1`, whose consecutive
/// pairs all carry one color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WitnessPath(Vec<usize>);

impl WitnessPath {
    /// Validates the path edge by edge against `f`.
    pub fn new(points: Vec<usize>, f: &ColoringPrefix, color: Color) -> Result<Self> {
        if points.len() < 2 {
            return Err(invalid("a witness path needs at least two points"));
        }
        for w in points.windows(2) {
            if w[0] >= w[1] || w[1] >= f.size() {
                return Err(invalid(format!("path {points:?} is not increasing inside the prefix")));
            }
            if f.get(w[0], w[1]) != color {
                return Err(invalid(format!("edge ({}, {}) does not carry color {color}", w[0], w[1])));
            }
        }
        Ok(WitnessPath(points))
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// Joins a path ending at `y` with a path starting at `y`.
    pub fn concat(&self, next: &WitnessPath) -> Option<WitnessPath> {
        (self.end() == next.start()).then(|| {
            let mut points = self.0.clone();
            points.extend_from_slice(&next.0[1..]);
            WitnessPath(points)
        })
    }
}

/// Whether each increasing pair is joined by an increasing `color`-path,
/// in the dense upper-triangle layout of [`ColoringPrefix`].
fn path_reachability(f: &ColoringPrefix, color: Color) -> Vec<bool> {
    let n = f.size();
    let mut reach = vec![false; f.upper().len()];
    let idx = |x: usize, y: usize| y * (y - 1) / 2 + x;
    for y in 1..n {
        for x in 0..y {
            // a path to y ends with an edge (z, y), z ∈ [x, y)
            reach[idx(x, y)] = f.get(x, y) == color || (x + 1..y).any(|z| reach[idx(x, z)] && f.get(z, y) == color);
        }
    }
    reach
}

fn require_two_colors(f: &ColoringPrefix) -> Result<()> {
    if f.colors() != 2 {
        return Err(invalid(format!("expected a 2-coloring, got {} colors", f.colors())));
    }
    Ok(())
}

/// `g(x, y) = 1` iff an increasing sequence of `f`-color-1 edges joins `x` to `y`.
pub fn close_semitransitive(f: &ColoringPrefix) -> Result<ColoringPrefix> {
    require_two_colors(f)?;
    let reach = path_reachability(f, 1);
    ColoringPrefix::from_upper(2, f.size(), reach.into_iter().map(u8::from).collect())
}

/// `h(x, y) = 0` iff an increasing sequence of `g`-color-0 edges joins `x` to `y`.
/// Rejects `g` that is not semi-transitive.
pub fn linearize(g: &ColoringPrefix) -> Result<ColoringPrefix> {
    require_two_colors(g)?;
    if let Verdict::Fails((x, y, z)) = check_semi_transitive(g)? {
        return Err(Error::NotSemiTransitive(x, y, z));
    }
    let reach = path_reachability(g, 0);
    ColoringPrefix::from_upper(2, g.size(), reach.into_iter().map(|r| u8::from(!r)).collect())
}

/// The linear order coded by `h`: `x <_L y` iff `x < y ∧ h(x, y) = 1` or
/// `y < x ∧ h(y, x) = 0`.
pub fn induced_linear_order(h: &ColoringPrefix) -> Result<LinearOrderPrefix> {
    require_two_colors(h)?;
    let rel = Relation::from_fn(h.size(), |x, y| match x.cmp(&y) {
        std::cmp::Ordering::Equal => true,
        std::cmp::Ordering::Less => h.get(x, y) == 1,
        std::cmp::Ordering::Greater => h.get(y, x) == 0,
    });
    Ok(validate_linear_order(rel)?)
}

/// An increasing `color`-path from `x` to `y`, or `None` if none exists. Among
/// paths, each point's predecessor is the least reachable one.
pub fn witness_path(f: &ColoringPrefix, x: usize, y: usize, color: Color) -> Result<Option<WitnessPath>> {
    if !(x < y && y < f.size()) {
        return Err(invalid(format!("need {x} < {y} < {}", f.size())));
    }
    let mut prev: Vec<Option<usize>> = vec![None; y - x + 1];
    for z in x + 1..=y {
        prev[z - x] = (x..z).find(|&w| (w == x || prev[w - x].is_some()) && f.get(w, z) == color);
    }
    if prev[y - x].is_none() {
        return Ok(None);
    }
    let mut points = vec![y];
    let mut cur = y;
    while cur != x {
        cur = prev[cur - x].expect("predecessor chain reaches x");
        points.push(cur);
    }
    points.reverse();
    Ok(Some(WitnessPath(points)))
}

/// Replaces each consecutive pair of `sorted` by a `color`-path joining it.
fn insert_witnesses(sorted: &[usize], f: &ColoringPrefix, color: Color) -> Result<Vec<usize>> {
    let mut out = sorted.to_vec();
    for w in sorted.windows(2) {
        let path = witness_path(f, w[0], w[1], color)?
            .ok_or_else(|| invalid(format!("no {color}-path joins {} and {}", w[0], w[1])))?;
        out.extend_from_slice(path.points());
    }
    Ok(normalized(&out))
}

fn require_pseudo(set: &[usize], c: &ColoringPrefix) -> Result<(Vec<usize>, Option<Color>)> {
    let s = normalized(set);
    if let Some(&x) = s.iter().find(|&&x| x >= c.size()) {
        return Err(invalid(format!("element {x} outside prefix of size {}", c.size())));
    }
    if s.len() < 2 {
        return Ok((s, None));
    }
    match pseudo_color(c, &s) {
        Some(color) => Ok((s, Some(color))),
        None => Err(Error::NotPseudoHomogeneous(s)),
    }
}

/// Pulls a set pseudo-homogeneous for `h` back to one pseudo-homogeneous for `g`.
///
/// Color 1 is kept as is: a consecutive pair with `g = 0` would itself be a
/// `g`-0 path, forcing `h = 0`. Color 0 gets the `g`-0 witness paths inserted.
pub fn pullback_h_to_g(set: &[usize], g: &ColoringPrefix, h: &ColoringPrefix) -> Result<Vec<usize>> {
    let (s, color) = require_pseudo(set, h)?;
    match color {
        Some(0) => insert_witnesses(&s, g, 0),
        _ => Ok(s),
    }
}

/// Pulls a set pseudo-homogeneous for `g` back to one pseudo-homogeneous for `f`.
///
/// Color 0 is kept as is; color 1 gets the `f`-1 witness paths inserted.
pub fn pullback_g_to_f(set: &[usize], f: &ColoringPrefix, g: &ColoringPrefix) -> Result<Vec<usize>> {
    let (s, color) = require_pseudo(set, g)?;
    match color {
        Some(1) => insert_witnesses(&s, f, 1),
        _ => Ok(s),
    }
}

/// `x ≤_Q y` iff `x = y` or `x < y ∧ f(x, y) = 1`.
pub fn semitransitive_to_order(f: &ColoringPrefix) -> Result<PartialOrderPrefix> {
    require_two_colors(f)?;
    if let Verdict::Fails((x, y, z)) = check_semi_transitive(f)? {
        return Err(Error::NotSemiTransitive(x, y, z));
    }
    let rel = Relation::from_fn(f.size(), |x, y| x == y || (x < y && f.get(x, y) == 1));
    Ok(validate_partial_order(rel)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Ascending,
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneCandidate {
    pub direction: Direction,
    pub elements: Vec<usize>,
}

/// Longest subsequence of `seq` increasing under `less` (patience sorting).
fn longest_increasing(seq: &[usize], less: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = Vec::with_capacity(seq.len());
    for (i, &a) in seq.iter().enumerate() {
        let pos = tails.partition_point(|&t| less(seq[t], a));
        prev.push(pos.checked_sub(1).map(|p| tails[p]));
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(i) = cur {
        out.push(seq[i]);
        cur = prev[i];
    }
    out.reverse();
    out
}

/// An ascending sequence drawn from the small elements or a descending one drawn
/// from the large elements, whichever is longer (ties go to ascending).
///
/// Small elements of a prefix need not be ascending among themselves, so the
/// longest `<_L`-increasing subsequence of the small elements (in numeric order)
/// is taken, and dually for the large ones.
pub fn solve_stable_linear(h: &LinearOrderPrefix, cls: &ElementClassification) -> Result<MonotoneCandidate> {
    if cls.entries.is_empty() {
        return Err(invalid("empty classification"));
    }
    if let Some(e) = cls.entries.iter().find(|e| e.element >= h.size()) {
        return Err(invalid(format!("classified element {} outside the order", e.element)));
    }
    let unstable = cls.unstable();
    if !unstable.is_empty() {
        return Err(Error::Horizon(format!("elements unstable at horizon: {unstable:?}")));
    }
    let small: Vec<usize> = cls.elements_of(Class::Small).collect();
    let large: Vec<usize> = cls.elements_of(Class::Large).collect();
    let ascending = longest_increasing(&small, |a, b| h.lt(a, b));
    let descending = longest_increasing(&large, |a, b| h.lt(b, a));
    Ok(if descending.len() > ascending.len() {
        MonotoneCandidate { direction: Direction::Descending, elements: descending }
    } else {
        MonotoneCandidate { direction: Direction::Ascending, elements: ascending }
    })
}
