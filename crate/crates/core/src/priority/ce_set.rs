//! Construction of a c.e. set `W` meeting each column `X_i = {⟨i, n⟩ : n ∈ ω}`
//! in at most `i` elements while defeating scripted `k`-enumerations, and the
//! derived set `A = ⋃_i F_i \ W`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::engine::{run_injury, ActPolicy, Construction, ConstructionKind, ConstructionTranscript, Witness};
use super::script::TaggedFunctional;
use crate::error::{invalid, Error, Result};
use crate::{Pairing, SetPrefix};

/// `i_{e,k}`: the sum of `k'` over all pairs with `⟨e', k'⟩ ≤ ⟨e, k⟩`.
pub fn column_threshold(pairing: Pairing, code: usize) -> usize {
    (0..=code).map(|z| pairing.unpair(z).1).sum()
}

struct CeW<'a> {
    pairing: Pairing,
    /// Functionals sorted by code, with their code and threshold.
    strategies: Vec<(&'a TaggedFunctional, usize, usize)>,
    w: BTreeMap<usize, usize>,
}

impl Construction for CeW<'_> {
    fn kind(&self) -> ConstructionKind {
        ConstructionKind::CeW
    }

    fn strategy_labels(&self) -> Vec<String> {
        self.strategies.iter().map(|(f, _, _)| format!("R<{},{}>", f.e, f.k)).collect()
    }

    fn policy(&self) -> ActPolicy {
        ActPolicy::AllIndependent
    }

    fn begin_stage(&mut self, _t: usize) {}

    fn requires_attention(&self, strategy: usize, _marker: usize, t: usize) -> Option<Witness> {
        let (f, code, threshold) = self.strategies[strategy];
        if t <= code {
            return None;
        }
        f.script
            .visible(t)
            .find(|(_, ev)| {
                ev.x < t && ev.value.len() <= f.k && ev.value.iter().all(|&z| self.pairing.column(z) >= threshold)
            })
            .map(|(event, ev)| Witness::Output { event, x: ev.x, value: ev.value.clone() })
    }

    fn act(&mut self, _strategy: usize, _marker: usize, witness: &Witness, t: usize) -> Result<Vec<usize>> {
        let Witness::Output { value, .. } = witness else { unreachable!("output witness expected") };
        Ok(value.iter().copied().filter(|&z| self.w.insert(z, t).is_none()).collect())
    }

    fn default_action(&mut self, _t: usize) {}

    fn membership(&self) -> String {
        String::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedElement {
    pub code: usize,
    pub column: usize,
    pub stage: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeRun {
    pub transcript: ConstructionTranscript,
    /// Per strategy, in transcript order: `(e, k, ⟨e,k⟩, i_{e,k})`.
    pub strategies: Vec<(usize, usize, usize, usize)>,
    pub w: Vec<EnumeratedElement>,
}

impl CeRun {
    pub fn members(&self) -> Vec<usize> {
        self.w.iter().map(|el| el.code).collect()
    }

    /// `|X_i ∩ W|` for `i < columns`.
    pub fn column_counts(&self, columns: usize) -> Vec<usize> {
        let mut counts = vec![0; columns];
        for el in &self.w {
            if el.column < columns {
                counts[el.column] += 1;
            }
        }
        counts
    }
}

/// Runs the construction for `max_stage` stages. Every output element must lie
/// in a column below `max_stage`.
pub fn build_ce_w(functionals: &[TaggedFunctional], pairing: Pairing, max_stage: usize) -> Result<CeRun> {
    let mut strategies = Vec::with_capacity(functionals.len());
    for f in functionals {
        let code = pairing
            .pair(f.e, f.k)
            .ok_or_else(|| invalid(format!("pair <{}, {}> overflows", f.e, f.k)))?;
        if let Some(ev) = f.script.events().iter().find(|ev| ev.value.iter().any(|&z| pairing.column(z) >= max_stage)) {
            return Err(Error::Script(format!(
                "functional <{}, {}>: value {:?} at x = {} leaves the columns below {max_stage}",
                f.e, f.k, ev.value, ev.x
            )));
        }
        strategies.push((f, code, column_threshold(pairing, code)));
    }
    strategies.sort_by_key(|&(_, code, _)| code);
    if let Some(w) = strategies.windows(2).find(|w| w[0].1 == w[1].1) {
        return Err(invalid(format!("two functionals attack <{}, {}>", w[0].0.e, w[0].0.k)));
    }

    let mut c = CeW { pairing, strategies, w: BTreeMap::new() };
    let transcript = run_injury(&mut c, max_stage)?;
    let w = c
        .w
        .iter()
        .map(|(&code, &stage)| EnumeratedElement { code, column: pairing.column(code), stage })
        .collect();
    let strategies = c.strategies.iter().map(|&(f, code, i)| (f.e, f.k, code, i)).collect();
    Ok(CeRun { transcript, strategies, w })
}

/// A user-supplied non-decreasing function standing in for the modulus of `∅'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ModulusStandIn(Vec<usize>);

impl ModulusStandIn {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(invalid(format!("modulus decreases at {}", i + 1)));
        }
        Ok(ModulusStandIn(values))
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new((0..len).map(f).collect())
    }

    pub fn domain(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }
}

impl<'de> Deserialize<'de> for ModulusStandIn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ModulusStandIn::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `A ∩ [0, ⟨horizon, 0⟩)` where `A = ⋃_i F_i \ W` and `F_i` holds the first
/// `modulus(i)` elements of `X_i`.
///
/// Below `⟨horizon, 0⟩` only columns `i < horizon` occur, so the prefix is exact.
pub fn compute_a_from_w(w: &[usize], modulus: &ModulusStandIn, pairing: Pairing, horizon: usize) -> Result<SetPrefix> {
    if horizon > modulus.domain() {
        return Err(Error::Horizon(format!("horizon {horizon} exceeds modulus domain {}", modulus.domain())));
    }
    let domain = pairing
        .pair(horizon, 0)
        .ok_or_else(|| invalid(format!("pairing overflows at column {horizon}")))?;
    let mut a = SetPrefix::empty(domain);
    for i in 0..horizon {
        for n in 0..modulus.get(i) {
            match pairing.pair(i, n) {
                Some(z) if z < domain => a.insert(z),
                _ => break,
            }
        }
    }
    for &z in w {
        if z < domain {
            a.remove(z);
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priority::script::{OutputEvent, Script};

    fn functional(e: usize, k: usize, events: &[(usize, usize, &[usize])]) -> TaggedFunctional {
        let events = events
            .iter()
            .map(|&(stage, x, value)| OutputEvent { stage, x, value: value.to_vec() })
            .collect();
        TaggedFunctional { e, k, script: Script::new(1000, events).unwrap() }
    }

    #[test]
    fn thresholds() {
        let p = Pairing::Cantor;
        assert_eq!(p.pair(0, 1), Some(2));
        assert_eq!(column_threshold(p, 2), 1);
        // codes 0..=4 are (0,0) (1,0) (0,1) (2,0) (1,1)
        assert_eq!(column_threshold(p, 4), 2);
    }

    #[test]
    fn empty_run() {
        let run = build_ce_w(&[], Pairing::Cantor, 30).unwrap();
        assert!(run.w.is_empty());
        assert!(run.column_counts(30).iter().all(|&c| c == 0));
    }

    #[test]
    fn single_functional_replay() {
        let p = Pairing::Cantor;
        let z = p.pair(1, 5).unwrap();
        let run = build_ce_w(&[functional(0, 1, &[(7, 0, &[z])])], p, 40).unwrap();
        assert_eq!(run.members(), vec![z]);
        assert_eq!(run.w[0].stage, 7);
        assert_eq!(run.column_counts(40)[1], 1);
        assert_eq!(run.strategies, vec![(0, 1, 2, 1)]);
    }

    #[test]
    fn low_columns_and_large_values_never_trigger() {
        let p = Pairing::Cantor;
        let low = p.pair(0, 9).unwrap();
        let a = p.pair(3, 1).unwrap();
        let b = p.pair(3, 2).unwrap();
        let run = build_ce_w(&[functional(0, 1, &[(2, 5, &[low]), (3, 1, &[a, b])])], p, 60).unwrap();
        assert!(run.w.is_empty());
    }

    #[test]
    fn rejects_columns_beyond_horizon() {
        let z = Pairing::Cantor.pair(50, 0).unwrap();
        assert!(build_ce_w(&[functional(0, 1, &[(1, 0, &[z])])], Pairing::Cantor, 20).is_err());
    }

    #[test]
    fn derived_set() {
        let p = Pairing::Cantor;
        let zero = ModulusStandIn::from_fn(10, |_| 0).unwrap();
        assert!(compute_a_from_w(&[], &zero, p, 10).unwrap().is_empty());
        let one = ModulusStandIn::from_fn(10, |_| 1).unwrap();
        let a = compute_a_from_w(&[], &one, p, 10).unwrap();
        assert_eq!(a.to_vec(), (0..10).map(|i| p.pair(i, 0).unwrap()).collect::<Vec<_>>());
        assert!(compute_a_from_w(&[], &one, p, 11).is_err());
        assert!(ModulusStandIn::new(vec![2, 1]).is_err());
    }
}
