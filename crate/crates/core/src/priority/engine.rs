//! A finite-injury scheduler with one movable marker per strategy.
//!
//! Stage `t ≥ 1` plays the role of stage `s + 1` with `s = t − 1`: constructions
//! that grow a structure add element `s` at the start of stage `t`, so after
//! stage `t` the domain is `[0, t)`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::SCHEMA_VERSION;

/// What a strategy found when it required attention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Pair { event: usize, r: Vec<usize>, s: Vec<usize> },
    Set { event: usize, r: Vec<usize> },
    Elements { event: usize, u: usize, v: usize },
    Output { event: usize, x: usize, value: Vec<usize> },
}

impl Witness {
    pub fn event(&self) -> usize {
        match self {
            Witness::Pair { event, .. }
            | Witness::Set { event, .. }
            | Witness::Elements { event, .. }
            | Witness::Output { event, .. } => *event,
        }
    }
}

/// How many of the strategies requiring attention act in one stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActPolicy {
    /// Only the highest-priority one; it injures everything below it.
    LeastInjuring,
    /// All of them, in priority order, with no injury.
    AllIndependent,
}

pub trait Construction {
    fn kind(&self) -> ConstructionKind;

    fn strategy_labels(&self) -> Vec<String>;

    fn policy(&self) -> ActPolicy {
        ActPolicy::LeastInjuring
    }

    fn begin_stage(&mut self, t: usize);

    fn requires_attention(&self, strategy: usize, marker: usize, t: usize) -> Option<Witness>;

    /// Executes the strategy and returns any elements it enumerated.
    fn act(&mut self, strategy: usize, marker: usize, witness: &Witness, t: usize) -> Result<Vec<usize>>;

    fn default_action(&mut self, t: usize);

    /// Membership snapshot after the stage, one character per element.
    fn membership(&self) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    StableSemitransitive,
    WeaklyStableOrder,
    CeW,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::StableSemitransitive => "stable-semitransitive",
            ConstructionKind::WeaklyStableOrder => "weakly-stable-order",
            ConstructionKind::CeW => "ce-W",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Action {
    pub strategy: usize,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: usize,
    /// Unsatisfied strategies that required attention, in priority order.
    pub attention: Vec<usize>,
    pub acted: Vec<Action>,
    /// Strategies whose marker changed during the stage.
    pub markers_moved: Vec<usize>,
    /// Strategies whose satisfied flag was cleared.
    pub injured: Vec<usize>,
    /// Marker values after the stage.
    pub markers: Vec<usize>,
    pub membership: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub enumerated: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTranscript {
    pub schema_version: u32,
    pub kind: ConstructionKind,
    pub pairing: String,
    pub max_stage: usize,
    pub strategies: Vec<String>,
    pub stages: Vec<StageRecord>,
}

impl ConstructionTranscript {
    /// Number of times each strategy acted.
    pub fn action_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.strategies.len()];
        for rec in &self.stages {
            for a in &rec.acted {
                counts[a.strategy] += 1;
            }
        }
        counts
    }

    /// Last action of `strategy`, with its stage.
    pub fn last_action(&self, strategy: usize) -> Option<(usize, &Witness)> {
        self.stages.iter().rev().find_map(|rec| {
            rec.acted.iter().find(|a| a.strategy == strategy).map(|a| (rec.stage, &a.witness))
        })
    }

    pub fn final_markers(&self) -> Vec<usize> {
        self.stages.last().map_or_else(|| vec![0; self.strategies.len()], |rec| rec.markers.clone())
    }

    pub fn final_membership(&self) -> &str {
        self.stages.last().map_or("", |rec| rec.membership.as_str())
    }
}

/// Runs `c` for stages `1..=max_stage`.
pub fn run_injury<C: Construction>(c: &mut C, max_stage: usize) -> Result<ConstructionTranscript> {
    if max_stage == 0 {
        return Err(invalid("max stage must be at least 1"));
    }
    let labels = c.strategy_labels();
    let n = labels.len();
    let mut markers = vec![0usize; n];
    let mut satisfied = vec![false; n];
    let mut stages = Vec::with_capacity(max_stage);

    for t in 1..=max_stage {
        c.begin_stage(t);
        let attention: Vec<(usize, Witness)> = (0..n)
            .filter(|&e| !satisfied[e])
            .filter_map(|e| c.requires_attention(e, markers[e], t).map(|w| (e, w)))
            .collect();
        let chosen: Vec<(usize, Witness)> = match c.policy() {
            ActPolicy::LeastInjuring => attention.iter().take(1).cloned().collect(),
            ActPolicy::AllIndependent => attention.clone(),
        };

        let mut acted = Vec::with_capacity(chosen.len());
        let mut markers_moved = Vec::new();
        let mut injured = Vec::new();
        let mut enumerated = Vec::new();
        for (e, witness) in chosen {
            enumerated.extend(c.act(e, markers[e], &witness, t)?);
            satisfied[e] = true;
            if c.policy() == ActPolicy::LeastInjuring {
                for i in e + 1..n {
                    if markers[i] != t {
                        markers[i] = t;
                        markers_moved.push(i);
                    }
                    if satisfied[i] {
                        satisfied[i] = false;
                        injured.push(i);
                    }
                }
            }
            acted.push(Action { strategy: e, witness });
        }
        if acted.is_empty() {
            c.default_action(t);
        }
        stages.push(StageRecord {
            stage: t,
            attention: attention.into_iter().map(|(e, _)| e).collect(),
            acted,
            markers_moved,
            injured,
            markers: markers.clone(),
            membership: c.membership(),
            enumerated,
        });
    }

    Ok(ConstructionTranscript {
        schema_version: SCHEMA_VERSION,
        kind: c.kind(),
        pairing: crate::Pairing::Cantor.name().to_string(),
        max_stage,
        strategies: labels,
        stages,
    })
}
