//! Bounded enumerations: extracting a subset of a co-c.e. set from a
//! `k`-enumeration, and normalizing enumerations of a class of reals.

use serde::{Deserialize, Serialize};

use super::approx::CoCeApprox;
use super::array::{ArrayKind, ArrayOfSets};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KenumBranch {
    /// Enough minima were certified outside `A`; those blocks lose their minimum.
    Strip,
    /// Too few were; the minima past the last certified block are returned.
    Minima,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KenumSubset {
    /// Branch taken at each level of the recursion, outermost first.
    pub branches: Vec<KenumBranch>,
    pub elements: Vec<usize>,
}

/// Turns a `k`-enumeration of a co-c.e. set `A` into an increasing list of
/// elements of `A`, by recursion on `k`.
pub fn kenum_to_subset(enumeration: &ArrayOfSets, approx: &CoCeApprox, horizon: usize, threshold: usize) -> Result<KenumSubset> {
    let k = match enumeration.kind() {
        ArrayKind::KEnum(k) => k,
        ArrayKind::CbEnum => enumeration.width(),
        ArrayKind::Array => return Err(invalid("a k-enumeration is required")),
    };
    let snapshot = approx.stage(horizon)?;
    let a = approx.final_snapshot();
    if let Some(i) = enumeration.blocks().iter().position(|b| !b.iter().any(|&x| a.contains(x))) {
        return Err(Error::Precondition(format!("block {i} does not meet A")));
    }

    let mut blocks: Vec<Vec<usize>> = enumeration.blocks().to_vec();
    let mut branches = Vec::new();
    for level in (1..=k.max(1)).rev() {
        if level == 1 {
            branches.push(KenumBranch::Minima);
            return Ok(KenumSubset { branches, elements: blocks.iter().map(|b| b[0]).collect() });
        }
        let certified: Vec<usize> = (0..blocks.len()).filter(|&i| !snapshot.contains(blocks[i][0])).collect();
        if certified.len() >= threshold {
            branches.push(KenumBranch::Strip);
            blocks = certified.iter().map(|&i| blocks[i][1..].to_vec()).collect();
            if let Some(i) = blocks.iter().position(Vec::is_empty) {
                return Err(Error::Precondition(format!("stripped block {i} is empty")));
            }
        } else {
            let tail = certified.last().map_or(0, |&i| i + 1);
            if tail >= blocks.len() {
                return Err(Error::Horizon(format!("no uncertified blocks remain at level {level}")));
            }
            branches.push(KenumBranch::Minima);
            return Ok(KenumSubset { branches, elements: blocks[tail..].iter().map(|b| b[0]).collect() });
        }
    }
    unreachable!("the loop returns at level 1")
}

/// Blocks of binary strings; normalized when every string of block `i` has
/// length exactly `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringBlockEnum {
    pub blocks: Vec<Vec<String>>,
    pub normalized: bool,
}

impl StringBlockEnum {
    pub fn new(blocks: Vec<Vec<String>>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(invalid(format!("block {i} is empty")));
            }
            if let Some(s) = b.iter().find(|s| !s.bytes().all(|c| c == b'0' || c == b'1')) {
                return Err(invalid(format!("block {i} holds non-binary string {s:?}")));
            }
        }
        let normalized = blocks.iter().enumerate().all(|(i, b)| b.iter().all(|s| s.len() == i));
        Ok(StringBlockEnum { blocks, normalized })
    }

    pub fn width(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Whether every string of `fine` extends some string of `coarse`, that is,
/// `[fine] ⊆ [coarse]`.
pub fn covers(coarse: &[String], fine: &[String]) -> bool {
    fine.iter().all(|s| coarse.iter().any(|c| s.starts_with(c.as_str())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedEnum {
    pub enumeration: StringBlockEnum,
    /// Index of the source block behind each output block.
    pub sources: Vec<usize>,
}

/// Produces `wanted` blocks, block `i` holding strings of length exactly `i`:
/// source blocks are skipped until their shortest string reaches the target
/// length, then every string is truncated to it.
pub fn normalize_class_enum(input: &StringBlockEnum, wanted: usize) -> Result<NormalizedEnum> {
    let mut blocks = Vec::with_capacity(wanted);
    let mut sources = Vec::with_capacity(wanted);
    let mut src = input.blocks.iter().enumerate();
    while blocks.len() < wanted {
        let target = blocks.len();
        let (j, b) = src
            .by_ref()
            .find(|(_, b)| b.iter().all(|s| s.len() >= target))
            .ok_or_else(|| Error::Horizon(format!("enumeration exhausted before block {target}")))?;
        let mut out: Vec<String> = b.iter().map(|s| s[..target].to_string()).collect();
        out.sort();
        out.dedup();
        blocks.push(out);
        sources.push(j);
    }
    Ok(NormalizedEnum { enumeration: StringBlockEnum { blocks, normalized: true }, sources })
}
