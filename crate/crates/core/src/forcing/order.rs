//! Conditions `(F₀, F₁)` pairing an ascending sequence of small elements with
//! an antichain of isolated elements, and the cofinite set `X(c)` of their
//! admissible extensions.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::set::normalized;
use crate::structures::{Class, ElementClassification, PartialOrderPrefix};
use crate::SetPrefix;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCondition {
    #[serde(rename = "F0")]
    pub f0: Vec<usize>,
    #[serde(rename = "F1")]
    pub f1: Vec<usize>,
}

fn is_ascending(p: &PartialOrderPrefix, sorted: &[usize]) -> bool {
    sorted.iter().enumerate().all(|(i, &x)| sorted[i + 1..].iter().all(|&y| p.lt(x, y)))
}

fn is_antichain(p: &PartialOrderPrefix, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &x)| set[i + 1..].iter().all(|&y| p.incomparable(x, y)))
}

impl OrderCondition {
    pub fn new(f0: &[usize], f1: &[usize]) -> Self {
        OrderCondition { f0: normalized(f0), f1: normalized(f1) }
    }

    /// `F₀` is an ascending sequence of small elements and `F₁` an antichain
    /// of isolated elements.
    pub fn validate(&self, p: &PartialOrderPrefix, cls: &ElementClassification) -> Result<()> {
        if let Some(&x) = self.f0.iter().chain(&self.f1).find(|&&x| x >= p.size()) {
            return Err(invalid(format!("{x} lies outside the order")));
        }
        if self.f0 != normalized(&self.f0) || self.f1 != normalized(&self.f1) {
            return Err(invalid("condition parts must be sorted and duplicate-free"));
        }
        if !is_ascending(p, &self.f0) {
            return Err(invalid(format!("F0 = {:?} is not ascending", self.f0)));
        }
        if !is_antichain(p, &self.f1) {
            return Err(invalid(format!("F1 = {:?} is not an antichain", self.f1)));
        }
        if let Some(&x) = self.f0.iter().find(|&&x| !cls.is(x, Class::Small)) {
            return Err(invalid(format!("F0 holds {x}, which is not small")));
        }
        if let Some(&x) = self.f1.iter().find(|&&x| !cls.is(x, Class::Isolated)) {
            return Err(invalid(format!("F1 holds {x}, which is not isolated")));
        }
        Ok(())
    }

    /// Whether `z` belongs to `X(c)`.
    pub fn admits(&self, p: &PartialOrderPrefix, z: usize) -> bool {
        self.f0.iter().all(|&x| x < z && p.lt(x, z)) && self.f1.iter().all(|&y| y < z && p.incomparable(y, z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XReport {
    pub set: SetPrefix,
    /// `|[0, horizon) \ X(c)|`.
    pub excluded: usize,
}

/// `X(c) ∩ [0, horizon)`.
pub fn x_of(c: &OrderCondition, p: &PartialOrderPrefix, cls: &ElementClassification, horizon: usize) -> Result<XReport> {
    if horizon > p.size() {
        return Err(Error::Horizon(format!("horizon {horizon} exceeds the order size {}", p.size())));
    }
    c.validate(p, cls)?;
    let set = SetPrefix::from_fn(horizon, |z| c.admits(p, z));
    let excluded = horizon - set.len();
    Ok(XReport { set, excluded })
}

/// Adds the least small `x ∈ X(c)` to `F₀` and the least isolated `y ∈ X(c)`
/// to `F₁`.
pub fn extend_both(
    c: &OrderCondition,
    p: &PartialOrderPrefix,
    cls: &ElementClassification,
    horizon: usize,
) -> Result<OrderCondition> {
    let x_c = x_of(c, p, cls, horizon)?.set;
    let pick = |class: Class, name: &str| {
        x_c.members().find(|&z| cls.is(z, class)).ok_or_else(|| {
            Error::Stall(format!("no {name} element of X(c) below {horizon}: a computable chain or antichain remains"))
        })
    };
    let x = pick(Class::Small, "small")?;
    let y = pick(Class::Isolated, "isolated")?;
    let mut f0 = c.f0.clone();
    f0.push(x);
    let mut f1 = c.f1.clone();
    f1.push(y);
    Ok(OrderCondition::new(&f0, &f1))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitPair {
    #[serde(rename = "E0")]
    pub e0: Vec<usize>,
    #[serde(rename = "E1")]
    pub e1: Vec<usize>,
}

/// Sorted subsets of `pool` of size at most `bound` such that `ok(set, next)`
/// holds each time `next` is appended.
fn grow(pool: &[usize], bound: usize, ok: &dyn Fn(&[usize], usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..bound {
        let mut next_frontier = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(0, |&m| pool.partition_point(|&z| z <= m));
            for &z in &pool[start..] {
                if ok(set, z) {
                    let mut s = set.clone();
                    s.push(z);
                    next_frontier.push(s);
                }
            }
        }
        out.extend(next_frontier.iter().cloned());
        frontier = next_frontier;
    }
    out
}

/// Every split pair `(E₀, E₁)` with `|E₀|, |E₁| ≤ size_bound`, inside
/// `X(c) ∩ [0, horizon)`, in lexicographic order.
pub fn split_pair_search(
    c: &OrderCondition,
    p: &PartialOrderPrefix,
    cls: &ElementClassification,
    horizon: usize,
    size_bound: usize,
) -> Result<Vec<SplitPair>> {
    let pool = x_of(c, p, cls, horizon)?.set.to_vec();
    // X(c) already makes each element compatible with F₀ and F₁
    let e0s = grow(&pool, size_bound, &|set, z| set.iter().all(|&x| p.lt(x, z)));
    let e1s = grow(&pool, size_bound, &|set, z| set.iter().all(|&x| p.incomparable(x, z)));
    let mut out = Vec::new();
    for e0 in &e0s {
        for e1 in &e1s {
            if e0.last().is_none_or(|&m| e1.iter().all(|&x| p.leq(m, x))) {
                out.push(SplitPair { e0: e0.clone(), e1: e1.clone() });
            }
        }
    }
    out.sort();
    Ok(out)
}
