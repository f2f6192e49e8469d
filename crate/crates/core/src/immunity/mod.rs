//! Tracing arrays, bounded enumerations and the effective transformations
//! between them, all evaluated on finite data with co-c.e. sets given by
//! stage snapshots.

mod approx;
mod array;
mod enumeration;
mod essential;
mod minp;
mod union;

pub use approx::CoCeApprox;
pub use array::{dominates, principal_function, traces, ArrayKind, ArrayOfSets};
pub use enumeration::{covers, kenum_to_subset, normalize_class_enum, KenumBranch, KenumSubset, NormalizedEnum, StringBlockEnum};
pub use essential::{
    coce_dependent_array, combined_essential_check, dependent_witness_search, essential_check, DependentArray,
    DependentPair, ElementWitness, Essentiality, SetWitness,
};
pub use minp::{minp_extract, MinPReport};
pub use union::{
    build_b, extract_g_sequence, lift_array_to_b, union_hyp_transform, union_of_family, GExtraction, GStep, UnionSplit,
    DEFAULT_THRESHOLD,
};
