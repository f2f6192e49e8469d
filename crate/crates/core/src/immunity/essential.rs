//! Essential formulas and the co-c.e. dependent-hyperimmunity transformation.

use serde::{Deserialize, Serialize};

use super::approx::CoCeApprox;
use super::array::ArrayOfSets;
use crate::error::{Error, Result};
use crate::priority::{ElementEvent, PairEvent, Script};
use crate::SetPrefix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Essentiality<W> {
    /// One witness per `x` below the bound.
    Essential { witnesses: Vec<W> },
    FailsAt { x: usize },
}

impl<W> Essentiality<W> {
    pub fn is_essential(&self) -> bool {
        matches!(self, Essentiality::Essential { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetWitness {
    pub x: usize,
    pub r: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementWitness {
    pub x: usize,
    pub u: usize,
    pub v: usize,
}

/// For each `x < x_bound`, the first `R > x` (in event order) such that every
/// `y < y_bound` has some witnessed `(R, S)` with `S > y`.
pub fn essential_check(script: &Script<PairEvent>, x_bound: usize, y_bound: usize) -> Essentiality<SetWitness> {
    // for each distinct R, the largest min S it is paired with
    let mut reach: Vec<(&[usize], usize)> = Vec::new();
    for ev in script.events() {
        match reach.iter_mut().find(|(r, _)| *r == ev.r.as_slice()) {
            Some((_, best)) => *best = (*best).max(ev.s[0]),
            None => reach.push((&ev.r, ev.s[0])),
        }
    }
    let mut witnesses = Vec::with_capacity(x_bound);
    for x in 0..x_bound {
        // every y < y_bound is beaten iff some S has min S ≥ y_bound
        match reach.iter().find(|(r, best)| r[0] > x && *best >= y_bound) {
            Some((r, _)) => witnesses.push(SetWitness { x, r: r.to_vec() }),
            None => return Essentiality::FailsAt { x },
        }
    }
    Essentiality::Essential { witnesses }
}

/// For each `x < x_bound`, the first witnessed `(u, v)` with `u, v > x`.
pub fn combined_essential_check(script: &Script<ElementEvent>, x_bound: usize) -> Essentiality<ElementWitness> {
    let mut witnesses = Vec::with_capacity(x_bound);
    for x in 0..x_bound {
        match script.events().iter().find(|ev| ev.u > x && ev.v > x) {
            Some(ev) => witnesses.push(ElementWitness { x, u: ev.u, v: ev.v }),
            None => return Essentiality::FailsAt { x },
        }
    }
    Essentiality::Essential { witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependentPair {
    pub event: usize,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

/// The first witnessed `(R, S)` with `R ⊆ comp0` and `S ⊆ comp1`.
pub fn dependent_witness_search(script: &Script<PairEvent>, comp0: &SetPrefix, comp1: &SetPrefix) -> Option<DependentPair> {
    script
        .events()
        .iter()
        .enumerate()
        .find(|(_, ev)| ev.r.iter().all(|&x| comp0.contains(x)) && ev.s.iter().all(|&x| comp1.contains(x)))
        .map(|(event, ev)| DependentPair { event, r: ev.r.clone(), s: ev.s.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependentArray {
    /// `F₀ < F₁ < …`, the `S`-components of the chosen events.
    pub blocks: ArrayOfSets,
    /// The `R`-component behind each block, certified outside `A₀`.
    pub companions: ArrayOfSets,
    pub events: Vec<usize>,
}

/// Walks the witnessed pairs in event order and keeps `(R, S)` whenever `R` is
/// certified outside `A₀` by stage `horizon` and lies above the previous block,
/// so that `R₀ < F₀ < R₁ < F₁ < …`.
pub fn coce_dependent_array(
    script: &Script<PairEvent>,
    approx0: &CoCeApprox,
    horizon: usize,
    x_bound: usize,
    y_bound: usize,
) -> Result<DependentArray> {
    if let Essentiality::FailsAt { x } = essential_check(script, x_bound, y_bound) {
        return Err(Error::Precondition(format!("formula is not essential within bounds: fails at x = {x}")));
    }
    let snapshot = approx0.stage(horizon)?;
    let mut blocks = Vec::new();
    let mut companions = Vec::new();
    let mut events = Vec::new();
    let mut above: Option<usize> = None;
    for (i, ev) in script.events().iter().enumerate() {
        let fresh = above.is_none_or(|m| ev.r[0] > m);
        if fresh && ev.r.iter().all(|&x| !snapshot.contains(x)) {
            above = ev.s.last().copied();
            blocks.push(ev.s.clone());
            companions.push(ev.r.clone());
            events.push(i);
        }
    }
    Ok(DependentArray {
        blocks: ArrayOfSets::new(super::array::ArrayKind::CbEnum, blocks)?,
        companions: ArrayOfSets::new(super::array::ArrayKind::CbEnum, companions)?,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immunity::array::traces;

    fn all_singletons(n: usize) -> Script<PairEvent> {
        let mut events = Vec::new();
        for m in 1..n {
            for r in 0..m {
                events.push(PairEvent { stage: m, r: vec![r], s: vec![m] });
            }
        }
        Script::new(n, events).unwrap()
    }

    #[test]
    fn essentiality() {
        assert_eq!(essential_check(&Script::empty(5), 3, 3), Essentiality::FailsAt { x: 0 });
        let s = all_singletons(20);
        assert!(essential_check(&s, 10, 10).is_essential());
        assert_eq!(essential_check(&s, 19, 19), Essentiality::FailsAt { x: 18 });

        assert_eq!(combined_essential_check(&Script::empty(5), 2), Essentiality::FailsAt { x: 0 });
        let mut events = Vec::new();
        for u in 0..8 {
            for v in 0..8 {
                if u != v {
                    events.push(ElementEvent { stage: 1, u, v });
                }
            }
        }
        assert!(combined_essential_check(&Script::new(3, events).unwrap(), 6).is_essential());
    }

    #[test]
    fn dependent_search() {
        let s = all_singletons(6);
        let full = SetPrefix::full(6);
        assert_eq!(dependent_witness_search(&s, &full, &full).unwrap().event, 0);
        assert!(dependent_witness_search(&s, &SetPrefix::empty(6), &full).is_none());
    }

    #[test]
    fn dependent_array_with_empty_a0() {
        let s = all_singletons(30);
        let approx = CoCeApprox::constant(SetPrefix::empty(30), 2);
        let out = coce_dependent_array(&s, &approx, 1, 5, 5).unwrap();
        assert!(out.blocks.len() > 3);
        assert!(traces(&out.companions, &approx.final_snapshot().complement()).unwrap().holds());
        assert!(coce_dependent_array(&Script::empty(30), &approx, 1, 5, 5).is_err());
    }
}
