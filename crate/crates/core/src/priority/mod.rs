//! Stage-based priority constructions driven by scripted opponents.

mod ce_set;
mod engine;
mod script;
mod semitransitive;
mod verify;
mod weakly_stable;

pub use ce_set::{build_ce_w, column_threshold, compute_a_from_w, CeRun, EnumeratedElement, ModulusStandIn};
pub use engine::{
    run_injury, Action, ActPolicy, Construction, ConstructionKind, ConstructionTranscript, StageRecord, Witness,
};
pub use script::{
    ElementEvent, OpponentScript, OpponentSuite, OutputEvent, PairEvent, Script, ScriptEvent, ScriptKind, SetEvent,
    TaggedFunctional,
};
pub use semitransitive::{build_stable_semitransitive, StableColoringRun};
pub use verify::{
    check_column_budget, check_injury_bound, check_markers, check_partitions, classification_matches_sides,
    stagewise_partial_order, stagewise_semi_transitive, verify_requirements, RequirementReport, RequirementResult,
    RequirementStatus,
};
pub use weakly_stable::{build_weakly_stable_order, interleave, Scheme, WeaklyStableRun};
