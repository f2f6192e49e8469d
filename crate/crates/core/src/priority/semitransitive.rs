//! Movable-marker construction of a stable semi-transitive coloring that
//! defeats a list of pair formulas `φ_e(U, V)`.

use serde::{Deserialize, Serialize};

use super::engine::{run_injury, Construction, ConstructionKind, ConstructionTranscript, Witness};
use super::script::{PairEvent, Script};
use crate::error::Result;
use crate::structures::ColoringPrefix;

struct StableSemitransitive<'a> {
    opponents: &'a [Script<PairEvent>],
    /// `side[x] = i` iff `x ∈ A_i`.
    side: Vec<u8>,
    coloring: ColoringPrefix,
}

impl Construction for StableSemitransitive<'_> {
    fn kind(&self) -> ConstructionKind {
        ConstructionKind::StableSemitransitive
    }

    fn strategy_labels(&self) -> Vec<String> {
        (0..self.opponents.len()).map(|e| format!("R{e}")).collect()
    }

    fn begin_stage(&mut self, _t: usize) {
        // f(x, s) records the side of x before anyone acts
        self.coloring.push_element(&self.side);
    }

    fn requires_attention(&self, e: usize, marker: usize, t: usize) -> Option<Witness> {
        let s = t - 1;
        self.opponents[e]
            .visible(t)
            .find(|(_, ev)| ev.r[0] > marker && *ev.s.last().unwrap() <= s)
            .map(|(event, ev)| Witness::Pair { event, r: ev.r.clone(), s: ev.s.clone() })
    }

    fn act(&mut self, _e: usize, marker: usize, witness: &Witness, t: usize) -> Result<Vec<usize>> {
        let Witness::Pair { s: big_s, .. } = witness else { unreachable!("pair witness expected") };
        let s = t - 1;
        let min_s = big_s[0];
        self.side.resize(s + 1, 0);
        self.side[marker + 1..min_s].fill(1);
        self.side[min_s..=s].fill(0);
        Ok(Vec::new())
    }

    fn default_action(&mut self, _t: usize) {
        self.side.push(0);
    }

    fn membership(&self) -> String {
        self.side.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableColoringRun {
    pub transcript: ConstructionTranscript,
    pub coloring: ColoringPrefix,
}

impl StableColoringRun {
    /// Final `A₀` and `A₁` as member lists.
    pub fn final_sets(&self) -> (Vec<usize>, Vec<usize>) {
        let m = self.transcript.final_membership().as_bytes();
        let pick = |c: u8| m.iter().enumerate().filter(|(_, &b)| b == c).map(|(x, _)| x).collect();
        (pick(b'0'), pick(b'1'))
    }
}

/// Runs the construction for `max_stage` stages; the coloring has size `max_stage`.
pub fn build_stable_semitransitive(opponents: &[Script<PairEvent>], max_stage: usize) -> Result<StableColoringRun> {
    let mut c = StableSemitransitive {
        opponents,
        side: Vec::with_capacity(max_stage),
        coloring: ColoringPrefix::constant(2, 0, 0)?,
    };
    let transcript = run_injury(&mut c, max_stage)?;
    Ok(StableColoringRun { transcript, coloring: c.coloring })
}
