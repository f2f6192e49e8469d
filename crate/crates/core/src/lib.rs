//! Desk-scale workbench for priority constructions over partial orders and
//! pair colorings, the reduction chain from arbitrary 2-colorings to linear
//! orders, and effective transformations of tracing arrays and bounded
//! enumerations.
//!
//! Every infinitary object is represented by a finite prefix together with a
//! stage-indexed history, and every construction is checked by exact
//! validators on that finite data. See [`oracle`] for the brute-force
//! reference implementations used by the test suite and the `oracle` command.

use serde::{Deserialize, Serialize};

pub mod error;
pub mod forcing;
pub mod generate;
pub mod immunity;
pub mod oracle;
pub mod pairing;
pub mod priority;
pub mod reductions;
pub mod set;
pub mod structures;

pub use error::{Error, Result};
pub use pairing::Pairing;
pub use set::SetPrefix;

/// Outcome of an exact check: either the property holds, or it fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Version tag embedded in every serialized transcript and structure file.
pub const SCHEMA_VERSION: u32 = 1;
