use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::SetPrefix;

/// Stage snapshots `A₀ ⊇ A₁ ⊇ …` of a co-c.e. set over a common domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawApprox", into = "RawApprox")]
pub struct CoCeApprox {
    stages: Vec<SetPrefix>,
}

#[derive(Serialize, Deserialize)]
struct RawApprox {
    domain: usize,
    snapshots: Vec<Vec<usize>>,
}

impl TryFrom<RawApprox> for CoCeApprox {
    type Error = Error;

    fn try_from(raw: RawApprox) -> Result<Self> {
        let stages = raw
            .snapshots
            .into_iter()
            .map(|s| SetPrefix::from_members(raw.domain, s))
            .collect::<Result<_>>()?;
        CoCeApprox::new(stages)
    }
}

impl From<CoCeApprox> for RawApprox {
    fn from(a: CoCeApprox) -> Self {
        RawApprox { domain: a.domain(), snapshots: a.stages.iter().map(SetPrefix::to_vec).collect() }
    }
}

impl CoCeApprox {
    pub fn new(stages: Vec<SetPrefix>) -> Result<Self> {
        let first = stages.first().ok_or_else(|| invalid("an approximation needs at least one stage"))?;
        let domain = first.domain();
        for (s, w) in stages.windows(2).enumerate() {
            if w[1].domain() != domain {
                return Err(invalid(format!("stage {} has a different domain", s + 1)));
            }
            if !w[1].is_subset(&w[0]) {
                return Err(invalid(format!("stage {} adds elements", s + 1)));
            }
        }
        Ok(CoCeApprox { stages })
    }

    /// The set never changes.
    pub fn constant(set: SetPrefix, stages: usize) -> Self {
        CoCeApprox { stages: vec![set; stages.max(1)] }
    }

    /// `A_s = {x ∈ initial : removal[x] is none or > s}` for `s < stages`.
    pub fn from_removals(initial: &SetPrefix, removal: &[Option<usize>], stages: usize) -> Result<Self> {
        if removal.len() != initial.domain() {
            return Err(invalid("one removal entry per domain element is required"));
        }
        let snapshots = (0..stages.max(1))
            .map(|s| SetPrefix::from_fn(initial.domain(), |x| initial.contains(x) && removal[x].is_none_or(|r| r > s)))
            .collect();
        Self::new(snapshots)
    }

    pub fn domain(&self) -> usize {
        self.stages[0].domain()
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn stage(&self, s: usize) -> Result<&SetPrefix> {
        self.stages
            .get(s)
            .ok_or_else(|| Error::Horizon(format!("stage {s} is beyond the {} recorded stages", self.stages.len())))
    }

    pub fn final_snapshot(&self) -> &SetPrefix {
        self.stages.last().unwrap()
    }

    /// Whether `x ∉ A` is visible by stage `horizon`.
    pub fn certified_out(&self, x: usize, horizon: usize) -> Result<bool> {
        Ok(!self.stage(horizon)?.contains(x))
    }
}
