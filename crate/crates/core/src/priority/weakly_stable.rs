//! Three-scheme construction of a weakly stable partial order whose small/large
//! part and isolated part both defeat the scripted formulas.
//!
//! Each element sits in one of three sets `S`, `L`, `I`. When `s` arrives, every
//! earlier `x` is placed below `s` if `x ∈ S`, above if `x ∈ L`, and apart if
//! `x ∈ I`, and that relation is never revised.

use serde::{Deserialize, Serialize};

use super::engine::{run_injury, Construction, ConstructionKind, ConstructionTranscript, Witness};
use super::script::{ElementEvent, Script, SetEvent};
use crate::error::Result;
use crate::structures::{classify_elements, validate_partial_order, ElementClassification, PartialOrderPrefix, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    R,
    S,
    T,
}

/// Strategy list in interleaved order `R₀ < S₀ < T₀ < R₁ < …`, skipping
/// schemes that have run out of opponents.
pub fn interleave(r: usize, s: usize, t: usize) -> Vec<(Scheme, usize)> {
    let mut out = Vec::with_capacity(r + s + t);
    for e in 0..r.max(s).max(t) {
        for (scheme, len) in [(Scheme::R, r), (Scheme::S, s), (Scheme::T, t)] {
            if e < len {
                out.push((scheme, e));
            }
        }
    }
    out
}

pub(crate) const SMALL: u8 = b'S';
pub(crate) const LARGE: u8 = b'L';
pub(crate) const ISOLATED: u8 = b'I';

struct WeaklyStableOrder<'a> {
    strategies: Vec<(Scheme, usize)>,
    r: &'a [Script<SetEvent>],
    s: &'a [Script<SetEvent>],
    t: &'a [Script<ElementEvent>],
    side: Vec<u8>,
    /// `arrival[y][x]` is the side of `x < y` when `y` arrived.
    arrival: Vec<Vec<u8>>,
}

impl WeaklyStableOrder<'_> {
    fn leq(&self, a: usize, b: usize) -> bool {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => true,
            std::cmp::Ordering::Less => self.arrival[b][a] == SMALL,
            std::cmp::Ordering::Greater => self.arrival[a][b] == LARGE,
        }
    }

    fn set_events(&self, scheme: Scheme, e: usize) -> &Script<SetEvent> {
        match scheme {
            Scheme::R => &self.r[e],
            Scheme::S => &self.s[e],
            Scheme::T => unreachable!(),
        }
    }
}

impl Construction for WeaklyStableOrder<'_> {
    fn kind(&self) -> ConstructionKind {
        ConstructionKind::WeaklyStableOrder
    }

    fn strategy_labels(&self) -> Vec<String> {
        self.strategies.iter().map(|(scheme, e)| format!("{scheme:?}{e}")).collect()
    }

    fn begin_stage(&mut self, _t: usize) {
        self.arrival.push(self.side.clone());
    }

    fn requires_attention(&self, strategy: usize, marker: usize, t: usize) -> Option<Witness> {
        let s = t - 1;
        let in_range = |x: usize| marker <= x && x <= s;
        match self.strategies[strategy] {
            (Scheme::T, e) => self.t[e]
                .visible(t)
                .find(|(_, ev)| in_range(ev.u) && in_range(ev.v))
                .map(|(event, ev)| Witness::Elements { event, u: ev.u, v: ev.v }),
            (scheme, e) => self
                .set_events(scheme, e)
                .visible(t)
                .find(|(_, ev)| in_range(ev.r[0]) && in_range(*ev.r.last().unwrap()))
                .map(|(event, ev)| Witness::Set { event, r: ev.r.clone() }),
        }
    }

    fn act(&mut self, strategy: usize, marker: usize, witness: &Witness, t: usize) -> Result<Vec<usize>> {
        let s = t - 1;
        self.side.resize(s + 1, ISOLATED);
        match (self.strategies[strategy].0, witness) {
            (Scheme::R, _) => self.side[marker..=s].fill(SMALL),
            (Scheme::S, _) => self.side[marker..=s].fill(ISOLATED),
            (Scheme::T, &Witness::Elements { u, v, .. }) => {
                let (keep, mark): (Vec<bool>, u8) = if self.leq(u, v) {
                    ((marker..=s).map(|x| self.leq(v, x)).collect(), LARGE)
                } else {
                    ((marker..=s).map(|x| self.leq(x, v)).collect(), SMALL)
                };
                for (x, k) in (marker..=s).zip(keep) {
                    self.side[x] = if k { mark } else { ISOLATED };
                }
            }
            (Scheme::T, w) => unreachable!("element witness expected, got {w:?}"),
        }
        Ok(Vec::new())
    }

    fn default_action(&mut self, _t: usize) {
        self.side.push(ISOLATED);
    }

    fn membership(&self) -> String {
        String::from_utf8(self.side.clone()).expect("ascii sides")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeaklyStableRun {
    pub transcript: ConstructionTranscript,
    pub order: PartialOrderPrefix,
    pub classification: ElementClassification,
}

impl WeaklyStableRun {
    /// Final `S`, `L`, `I` snapshot, one byte per element.
    pub fn final_sides(&self) -> &[u8] {
        self.transcript.final_membership().as_bytes()
    }
}

/// Runs the construction for `max_stage` stages and classifies the resulting
/// order of size `max_stage` over the last `tail_window` elements.
pub fn build_weakly_stable_order(
    r: &[Script<SetEvent>],
    s: &[Script<SetEvent>],
    t: &[Script<ElementEvent>],
    max_stage: usize,
    tail_window: usize,
) -> Result<WeaklyStableRun> {
    let mut c = WeaklyStableOrder {
        strategies: interleave(r.len(), s.len(), t.len()),
        r,
        s,
        t,
        side: Vec::with_capacity(max_stage),
        arrival: Vec::with_capacity(max_stage),
    };
    let transcript = run_injury(&mut c, max_stage)?;
    let rel = Relation::from_fn(max_stage, |a, b| c.leq(a, b));
    let order = validate_partial_order(rel)?;
    let classification = classify_elements(&order, tail_window)?;
    Ok(WeaklyStableRun { transcript, order, classification })
}
