//! Checks run against finished transcripts: requirement satisfaction, the
//! stagewise structural invariants, marker discipline and column budgets.

use serde::{Deserialize, Serialize};

use super::engine::{ConstructionKind, ConstructionTranscript, Witness};
use super::script::{OpponentSuite, ScriptEvent};
use super::weakly_stable::{interleave, Scheme, ISOLATED, LARGE, SMALL};
use super::ce_set::column_threshold;
use crate::error::{invalid, Result};
use crate::structures::{ColoringPrefix, OrderViolation};
use crate::{Pairing, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RequirementStatus {
    /// The last action's witnesses sit in the required final sets.
    Satisfied { stage: usize, witness: Witness },
    /// No scripted fact is usable above the final marker within the run.
    Vacuous,
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequirementResult {
    pub strategy: String,
    #[serde(flatten)]
    pub status: RequirementStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequirementReport {
    pub kind: ConstructionKind,
    pub requirements: Vec<RequirementResult>,
}

impl RequirementReport {
    pub fn all_satisfied(&self) -> bool {
        self.requirements.iter().all(|r| matches!(r.status, RequirementStatus::Satisfied { .. }))
    }

    pub fn any_failed(&self) -> bool {
        self.requirements.iter().any(|r| matches!(r.status, RequirementStatus::Failed { .. }))
    }
}

fn mismatch(expected: usize, got: usize) -> crate::Error {
    invalid(format!("transcript has {got} strategies but the opponents define {expected}"))
}

fn status(
    transcript: &ConstructionTranscript,
    strategy: usize,
    lands: impl Fn(&Witness) -> std::result::Result<(), String>,
    usable: bool,
) -> RequirementStatus {
    match transcript.last_action(strategy) {
        Some((stage, witness)) => match lands(witness) {
            Ok(()) => RequirementStatus::Satisfied { stage, witness: witness.clone() },
            Err(_) if !usable => RequirementStatus::Vacuous,
            Err(reason) => RequirementStatus::Failed { reason },
        },
        None if !usable => RequirementStatus::Vacuous,
        None => RequirementStatus::Failed { reason: "a usable fact was never acted on".into() },
    }
}

fn all_in(xs: &[usize], sides: &[u8], allowed: &[u8], name: &str) -> std::result::Result<(), String> {
    match xs.iter().find(|&&x| !sides.get(x).is_some_and(|c| allowed.contains(c))) {
        Some(x) => Err(format!("{x} is not in the final {name}")),
        None => Ok(()),
    }
}

/// Per requirement, whether the run satisfied it.
///
/// Requirements of the coloring construction are checked in the orientation
/// the update rule produces: `R ⊆ A₁` and `S ⊆ A₀` in the limit.
pub fn verify_requirements(transcript: &ConstructionTranscript, opponents: &OpponentSuite) -> Result<RequirementReport> {
    let n = transcript.strategies.len();
    let max_stage = transcript.max_stage;
    let markers = transcript.final_markers();
    let sides = transcript.final_membership().as_bytes();
    let within = |ev_stage: usize, elements: &[usize]| ev_stage <= max_stage && elements.iter().all(|&x| x < max_stage);

    let statuses: Vec<RequirementStatus> = match transcript.kind {
        ConstructionKind::StableSemitransitive => {
            if opponents.pair.len() != n {
                return Err(mismatch(opponents.pair.len(), n));
            }
            (0..n)
                .map(|e| {
                    let m = markers[e];
                    let usable = opponents.pair[e]
                        .events()
                        .iter()
                        .any(|ev| ev.r[0] > m && within(ev.stage, &ev.elements()));
                    status(
                        transcript,
                        e,
                        |w| match w {
                            Witness::Pair { r, s, .. } => {
                                all_in(r, sides, b"1", "A1")?;
                                all_in(s, sides, b"0", "A0")
                            }
                            _ => Err("unexpected witness".into()),
                        },
                        usable,
                    )
                })
                .collect()
        }
        ConstructionKind::WeaklyStableOrder => {
            let order = interleave(opponents.r.len(), opponents.s.len(), opponents.t.len());
            if order.len() != n {
                return Err(mismatch(order.len(), n));
            }
            order
                .iter()
                .enumerate()
                .map(|(i, &(scheme, e))| {
                    let m = markers[i];
                    let elements_ok = |stage: usize, xs: &[usize]| within(stage, xs) && xs.iter().all(|&x| x >= m);
                    let usable = match scheme {
                        Scheme::R => opponents.r[e].events().iter().any(|ev| elements_ok(ev.stage, &ev.r)),
                        Scheme::S => opponents.s[e].events().iter().any(|ev| elements_ok(ev.stage, &ev.r)),
                        Scheme::T => opponents.t[e].events().iter().any(|ev| elements_ok(ev.stage, &ev.elements())),
                    };
                    status(
                        transcript,
                        i,
                        |w| match (scheme, w) {
                            (Scheme::R, Witness::Set { r, .. }) => all_in(r, sides, &[SMALL, LARGE], "S or L"),
                            (Scheme::S, Witness::Set { r, .. }) => all_in(r, sides, &[ISOLATED], "I"),
                            (Scheme::T, &Witness::Elements { u, v, .. }) => {
                                all_in(&[u], sides, &[ISOLATED], "I")?;
                                all_in(&[v], sides, &[SMALL, LARGE], "S or L")
                            }
                            _ => Err("unexpected witness".into()),
                        },
                        usable,
                    )
                })
                .collect()
        }
        ConstructionKind::CeW => {
            let pairing = Pairing::from_name(&transcript.pairing)?;
            let mut fs: Vec<_> = opponents.functionals.iter().collect();
            fs.sort_by_key(|f| pairing.pair(f.e, f.k));
            if fs.len() != n {
                return Err(mismatch(fs.len(), n));
            }
            fs.iter()
                .enumerate()
                .map(|(i, f)| {
                    let code = pairing.pair(f.e, f.k).unwrap_or(usize::MAX);
                    let threshold = column_threshold(pairing, code);
                    let usable = f.script.events().iter().any(|ev| {
                        ev.stage.max(ev.x + 1).max(code + 1) <= max_stage
                            && ev.value.len() <= f.k
                            && ev.value.iter().all(|&z| pairing.column(z) >= threshold)
                    });
                    // enumeration into W is permanent, so acting is enough
                    status(transcript, i, |_| Ok(()), usable)
                })
                .collect()
        }
    };

    Ok(RequirementReport {
        kind: transcript.kind,
        requirements: transcript
            .strategies
            .iter()
            .cloned()
            .zip(statuses)
            .map(|(strategy, status)| RequirementResult { strategy, status })
            .collect(),
    })
}

/// First stage whose prefix is not semi-transitive, with the least violating
/// triple ending at the element that stage added.
pub fn stagewise_semi_transitive(c: &ColoringPrefix) -> Verdict<(usize, (usize, usize, usize))> {
    for z in 2..c.size() {
        for x in 0..z {
            for y in x + 1..z {
                if c.get(x, y) == 1 && c.get(y, z) == 1 && c.get(x, z) == 0 {
                    return Verdict::Fails((z + 1, (x, y, z)));
                }
            }
        }
    }
    Verdict::Holds
}

/// First stage whose prefix is not a partial order, with a violation that
/// involves the element that stage added.
pub fn stagewise_partial_order(rel: &crate::structures::Relation) -> Verdict<(usize, OrderViolation)> {
    for z in 0..rel.size() {
        if !rel.get(z, z) {
            return Verdict::Fails((z + 1, OrderViolation::Reflexivity { x: z }));
        }
        for x in 0..z {
            if rel.get(x, z) && rel.get(z, x) {
                return Verdict::Fails((z + 1, OrderViolation::Antisymmetry { x, y: z }));
            }
        }
        for a in 0..=z {
            for b in 0..=z {
                if !rel.get(a, b) {
                    continue;
                }
                let only_new = a != z && b != z;
                for c in 0..=z {
                    if only_new && c != z {
                        continue;
                    }
                    if rel.get(b, c) && !rel.get(a, c) {
                        return Verdict::Fails((z + 1, OrderViolation::Transitivity { x: a, y: b, z: c }));
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// Membership snapshots cover exactly `[0, t)` after stage `t`, using only the
/// construction's side letters.
pub fn check_partitions(transcript: &ConstructionTranscript) -> Verdict<usize> {
    let letters: &[u8] = match transcript.kind {
        ConstructionKind::StableSemitransitive => b"01",
        ConstructionKind::WeaklyStableOrder => b"SLI",
        ConstructionKind::CeW => return Verdict::Holds,
    };
    match transcript
        .stages
        .iter()
        .find(|rec| rec.membership.len() != rec.stage || !rec.membership.bytes().all(|b| letters.contains(&b)))
    {
        Some(rec) => Verdict::Fails(rec.stage),
        None => Verdict::Holds,
    }
}

/// Markers never decrease, and a marker changes only in a stage where a
/// strictly higher-priority strategy acted. Returns `(stage, strategy)` on failure.
pub fn check_markers(transcript: &ConstructionTranscript) -> Verdict<(usize, usize)> {
    let mut prev = vec![0; transcript.strategies.len()];
    for rec in &transcript.stages {
        let highest = rec.acted.iter().map(|a| a.strategy).min();
        for (e, (&before, &after)) in prev.iter().zip(&rec.markers).enumerate() {
            if after < before || (after != before && !highest.is_some_and(|h| h < e)) {
                return Verdict::Fails((rec.stage, e));
            }
        }
        prev.clone_from(&rec.markers);
    }
    Verdict::Holds
}

/// `|X_i ∩ W_t| ≤ i` for every stage `t` and every `i < columns`. Returns the
/// first `(stage, column, count)` that breaks the budget.
pub fn check_column_budget(transcript: &ConstructionTranscript, pairing: Pairing, columns: usize) -> Verdict<(usize, usize, usize)> {
    let mut counts = vec![0usize; columns];
    for rec in &transcript.stages {
        for &z in &rec.enumerated {
            let i = pairing.column(z);
            if i < columns {
                counts[i] += 1;
                if counts[i] > i {
                    return Verdict::Fails((rec.stage, i, counts[i]));
                }
            }
        }
    }
    Verdict::Holds
}

/// Whether every strategy acted at most `1 + Σ_{i<e} acts(i)` times, the bound
/// the injury rule guarantees. Returns the first offending strategy.
pub fn check_injury_bound(transcript: &ConstructionTranscript) -> Verdict<usize> {
    let counts = transcript.action_counts();
    let mut higher = 0;
    for (e, &c) in counts.iter().enumerate() {
        if c > higher + 1 {
            return Verdict::Fails(e);
        }
        higher += c;
    }
    Verdict::Holds
}

/// Whether the final order's classification agrees with the final side of
/// every classified element (small ↔ `S`, large ↔ `L`, isolated ↔ `I`).
pub fn classification_matches_sides(
    cls: &crate::structures::ElementClassification,
    sides: &[u8],
) -> Verdict<usize> {
    use crate::structures::Class;
    for e in &cls.entries {
        let expected = match e.class {
            Class::Small => SMALL,
            Class::Large => LARGE,
            Class::Isolated => ISOLATED,
            Class::Unstable => continue,
        };
        if sides.get(e.element) != Some(&expected) {
            return Verdict::Fails(e.element);
        }
    }
    Verdict::Holds
}
