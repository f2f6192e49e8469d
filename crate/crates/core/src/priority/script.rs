//! Finite, stage-stamped event lists standing in for Σ⁰₁ enumerators.
//!
//! An event becomes visible at its stage and stays visible, so the facts a
//! script witnesses only grow over time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A witnessed finite set `R` for a formula `φ(U)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEvent {
    pub stage: usize,
    pub r: Vec<usize>,
}

/// A witnessed pair `R < S` for a formula `φ(U, V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEvent {
    pub stage: usize,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
}

/// A witnessed pair of distinct naturals for a formula `ψ(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementEvent {
    pub stage: usize,
    pub u: usize,
    pub v: usize,
}

/// A halting computation `Φ(x) = value` with a finite set as output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputEvent {
    pub stage: usize,
    pub x: usize,
    pub value: Vec<usize>,
}

pub trait ScriptEvent: Clone {
    const KIND: ScriptKind;

    fn stage(&self) -> usize;

    /// Every natural the event mentions.
    fn elements(&self) -> Vec<usize>;

    fn check(&self) -> std::result::Result<(), String>;

    /// Constraints spanning several events.
    fn check_all(_events: &[Self]) -> std::result::Result<(), String> {
        Ok(())
    }
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn check_finite_set(name: &str, v: &[usize]) -> std::result::Result<(), String> {
    if v.is_empty() {
        return Err(format!("{name} is empty"));
    }
    if !strictly_increasing(v) {
        return Err(format!("{name} = {v:?} is not sorted and duplicate-free"));
    }
    Ok(())
}

impl ScriptEvent for SetEvent {
    const KIND: ScriptKind = ScriptKind::SetFormula;

    fn stage(&self) -> usize {
        self.stage
    }

    fn elements(&self) -> Vec<usize> {
        self.r.clone()
    }

    fn check(&self) -> std::result::Result<(), String> {
        check_finite_set("R", &self.r)
    }
}

impl ScriptEvent for PairEvent {
    const KIND: ScriptKind = ScriptKind::PairFormula;

    fn stage(&self) -> usize {
        self.stage
    }

    fn elements(&self) -> Vec<usize> {
        self.r.iter().chain(&self.s).copied().collect()
    }

    fn check(&self) -> std::result::Result<(), String> {
        check_finite_set("R", &self.r)?;
        check_finite_set("S", &self.s)?;
        if self.r.last() >= self.s.first() {
            return Err(format!("R = {:?} is not below S = {:?}", self.r, self.s));
        }
        Ok(())
    }
}

impl ScriptEvent for ElementEvent {
    const KIND: ScriptKind = ScriptKind::ElementFormula;

    fn stage(&self) -> usize {
        self.stage
    }

    fn elements(&self) -> Vec<usize> {
        vec![self.u, self.v]
    }

    fn check(&self) -> std::result::Result<(), String> {
        if self.u == self.v {
            return Err(format!("u = v = {}", self.u));
        }
        Ok(())
    }
}

impl ScriptEvent for OutputEvent {
    const KIND: ScriptKind = ScriptKind::Functional;

    fn stage(&self) -> usize {
        self.stage
    }

    fn elements(&self) -> Vec<usize> {
        self.value.clone()
    }

    fn check(&self) -> std::result::Result<(), String> {
        check_finite_set("value", &self.value)
    }

    /// One value per argument, and values at consecutive arguments are
    /// ordered as blocks.
    fn check_all(events: &[Self]) -> std::result::Result<(), String> {
        let mut by_arg = std::collections::BTreeMap::new();
        for ev in events {
            if by_arg.insert(ev.x, &ev.value).is_some() {
                return Err(format!("argument {} has two values", ev.x));
            }
        }
        for (&x, value) in &by_arg {
            if let Some(next) = by_arg.get(&(x + 1)) {
                if value.last() >= next.first() {
                    return Err(format!("values at {x} and {} are not ordered blocks", x + 1));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScriptKind {
    SetFormula,
    PairFormula,
    ElementFormula,
    Functional,
}

/// A validated event list of one kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Script<E> {
    pub budget: usize,
    events: Vec<E>,
}

impl<E: ScriptEvent> Script<E> {
    pub fn new(budget: usize, events: Vec<E>) -> Result<Self> {
        let script = Script { budget, events };
        script.validate()?;
        Ok(script)
    }

    pub fn empty(budget: usize) -> Self {
        Script { budget, events: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let bad = |i: usize, msg: String| Err(Error::Script(format!("event {i}: {msg}")));
        for (i, ev) in self.events.iter().enumerate() {
            if let Err(msg) = ev.check() {
                return bad(i, msg);
            }
            if ev.stage() > self.budget {
                return bad(i, format!("stage {} exceeds budget {}", ev.stage(), self.budget));
            }
            if i > 0 && self.events[i - 1].stage() > ev.stage() {
                return bad(i, "events are not sorted by stage".into());
            }
        }
        E::check_all(&self.events).map_err(Error::Script)
    }

    pub fn events(&self) -> &[E] {
        &self.events
    }

    /// Events witnessed by stage `t`, with their indices.
    pub fn visible(&self, t: usize) -> impl Iterator<Item = (usize, &E)> {
        self.events.iter().enumerate().take_while(move |(_, ev)| ev.stage() <= t)
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

impl Script<OutputEvent> {
    /// The value at `x`, if the script ever outputs one.
    pub fn value(&self, x: usize) -> Option<&OutputEvent> {
        self.events.iter().find(|ev| ev.x == x)
    }
}

#[derive(Deserialize)]
struct RawScript<E> {
    budget: usize,
    events: Vec<E>,
}

impl<'de, E: ScriptEvent + Deserialize<'de>> Deserialize<'de> for Script<E> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawScript::<E>::deserialize(d)?;
        Script::new(raw.budget, raw.events).map_err(serde::de::Error::custom)
    }
}

/// A script of any kind, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OpponentScript {
    SetFormula(Script<SetEvent>),
    PairFormula(Script<PairEvent>),
    ElementFormula(Script<ElementEvent>),
    Functional(Script<OutputEvent>),
}

impl OpponentScript {
    pub fn kind(&self) -> ScriptKind {
        match self {
            OpponentScript::SetFormula(_) => ScriptKind::SetFormula,
            OpponentScript::PairFormula(_) => ScriptKind::PairFormula,
            OpponentScript::ElementFormula(_) => ScriptKind::ElementFormula,
            OpponentScript::Functional(_) => ScriptKind::Functional,
        }
    }
}

/// A functional tagged with the pair `(e, k)` of the requirement it attacks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedFunctional {
    pub e: usize,
    pub k: usize,
    pub script: Script<OutputEvent>,
}

/// Every opponent family a construction can consume, as one file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct OpponentSuite {
    pub pair: Vec<Script<PairEvent>>,
    pub r: Vec<Script<SetEvent>>,
    pub s: Vec<Script<SetEvent>>,
    pub t: Vec<Script<ElementEvent>>,
    pub functionals: Vec<TaggedFunctional>,
}
