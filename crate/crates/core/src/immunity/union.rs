//! Splitting an array that traces a union of two co-c.e. sets, and the
//! product set `B` that collects a whole family of co-c.e. sets.

use serde::{Deserialize, Serialize};

use super::approx::CoCeApprox;
use super::array::ArrayOfSets;
use crate::error::{invalid, Error, Result};
use crate::{Pairing, SetPrefix};

/// The number of certified blocks needed before a non-uniform case split is
/// decided at a finite horizon.
pub const DEFAULT_THRESHOLD: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum UnionSplit {
    /// Blocks certified disjoint from `A₀`; each meets `A₁`.
    First { certified: Vec<usize>, array: ArrayOfSets },
    /// Blocks after the last certified one; each meets `A₀`.
    Second { tail_start: usize, array: ArrayOfSets },
}

/// Splits an array tracing `A₀ ∪ A₁` by which blocks the enumeration of the
/// complement of `A₀` has emptied out of `A₀` by stage `horizon`.
pub fn union_hyp_transform(arr: &ArrayOfSets, approx0: &CoCeApprox, horizon: usize, threshold: usize) -> Result<UnionSplit> {
    let snapshot = approx0.stage(horizon)?;
    let certified: Vec<usize> = arr
        .blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().all(|&x| !snapshot.contains(x)))
        .map(|(i, _)| i)
        .collect();
    if certified.len() >= threshold {
        let array = ArrayOfSets::array(certified.iter().map(|&i| arr.blocks()[i].clone()).collect())?;
        return Ok(UnionSplit::First { certified, array });
    }
    let tail_start = certified.last().map_or(0, |&i| i + 1);
    if tail_start >= arr.len() {
        return Err(Error::Horizon(format!(
            "only {} of {threshold} blocks certified and no uncertified tail remains",
            certified.len()
        )));
    }
    let array = ArrayOfSets::array(arr.blocks()[tail_start..].to_vec())?;
    Ok(UnionSplit::Second { tail_start, array })
}

/// Final snapshots of `A_j`, with `A_j = ∅` past the end of the family.
fn union_up_to(family: &[CoCeApprox], x: usize, y: usize) -> bool {
    family.iter().take(x + 1).any(|a| a.final_snapshot().contains(y))
}

fn family_domain(family: &[CoCeApprox]) -> Result<usize> {
    let first = family.first().ok_or_else(|| invalid("empty family"))?;
    if family.iter().any(|a| a.domain() != first.domain()) {
        return Err(invalid("family members have different domains"));
    }
    Ok(first.domain())
}

/// `B ∩ [0, codes)` for `B = {⟨x, y⟩ : x ∈ A₀ ∧ y ∈ ⋃_{j ≤ x} A_j}`, from the
/// final snapshots.
pub fn build_b(family: &[CoCeApprox], pairing: Pairing, codes: usize) -> Result<SetPrefix> {
    let domain = family_domain(family)?;
    let a0 = family[0].final_snapshot();
    let mut b = SetPrefix::empty(codes);
    for z in 0..codes {
        let (x, y) = pairing.unpair(z);
        if x >= domain || y >= domain {
            return Err(Error::Horizon(format!("code {z} = <{x}, {y}> leaves the family domain {domain}")));
        }
        if a0.contains(x) && union_up_to(family, x, y) {
            b.insert(z);
        }
    }
    Ok(b)
}

/// `G_i = {⟨x, y⟩ : y ∈ F_i}` for an array `F` tracing `A_n` and `x ∈ A₀`, `x ≥ n`.
pub fn lift_array_to_b(arr: &ArrayOfSets, n: usize, x: usize, a0: &SetPrefix, pairing: Pairing) -> Result<ArrayOfSets> {
    if x < n {
        return Err(Error::Precondition(format!("x = {x} is below n = {n}")));
    }
    if !a0.contains(x) {
        return Err(Error::Precondition(format!("x = {x} is not in A0")));
    }
    let blocks = arr
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&y| pairing.pair(x, y).ok_or_else(|| invalid(format!("<{x}, {y}> overflows"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    ArrayOfSets::array(blocks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GStep {
    /// Index of the block of `F` used.
    pub s: usize,
    /// Least approximation stage certifying it.
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum GExtraction {
    /// An array tracing `A₀`.
    G { x0: usize, steps: Vec<GStep>, array: ArrayOfSets },
    /// The search stalled at `cut = x_i`; the array traces `⋃_{j ≤ cut} A_j`.
    H { cut: usize, stalled_at: usize, blocks_used: Vec<usize>, array: ArrayOfSets },
}

/// Replays the inductive search on an array `F` tracing `B`.
///
/// Starting from `G₀ = {min A₀}`, step `i` looks for the least block index
/// `s > i` and stage `t ∈ (s, horizon)` such that every `⟨x, y⟩ ∈ F_s` with
/// `x ≤ x_i = max G_i` is out of `B` by stage `t`, and then sets
/// `G_{i+1} = {x > x_i : ⟨x, y⟩ ∈ F_s}`. If the search stalls with at least
/// `threshold` candidate blocks left, the blocks `H_s = {y : ⟨x, y⟩ ∈ F_s, x ≤ x_i}`
/// for `s > i` are returned instead, skipping any that would overlap an
/// earlier one so the result stays an array.
pub fn extract_g_sequence(
    arr: &ArrayOfSets,
    family: &[CoCeApprox],
    pairing: Pairing,
    horizon: usize,
    threshold: usize,
) -> Result<GExtraction> {
    let domain = family_domain(family)?;
    let stages = family.iter().map(CoCeApprox::stage_count).min().unwrap_or(0);
    if horizon == 0 || horizon > stages {
        return Err(Error::Horizon(format!("horizon {horizon} must lie in [1, {stages}]")));
    }
    let x0 = family[0]
        .final_snapshot()
        .min()
        .ok_or_else(|| Error::Precondition("A0 is empty on the prefix".into()))?;
    let decoded: Vec<Vec<(usize, usize)>> = arr
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&z| pairing.unpair(z)).collect())
        .collect();
    if let Some(&(x, y)) = decoded.iter().flatten().find(|&&(x, y)| x >= domain || y >= domain) {
        return Err(Error::Horizon(format!("pair <{x}, {y}> leaves the family domain {domain}")));
    }
    // ⟨x, y⟩ is out of B by stage t
    let out_by = |x: usize, y: usize, t: usize| -> bool {
        !family[0].stages_contain(x, t) || !family.iter().take(x + 1).any(|a| a.stages_contain(y, t))
    };

    let mut g_blocks = vec![vec![x0]];
    let mut steps = Vec::new();
    loop {
        let i = g_blocks.len() - 1;
        let xi = *g_blocks[i].last().unwrap();
        let found = (i + 1..arr.len()).find_map(|s| {
            (s + 1..horizon)
                .find(|&t| decoded[s].iter().all(|&(x, y)| x > xi || out_by(x, y, t)))
                .map(|t| (s, t))
        });
        match found {
            Some((s, t)) => {
                let next: Vec<usize> = {
                    let mut v: Vec<usize> = decoded[s].iter().map(|&(x, _)| x).filter(|&x| x > xi).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                };
                if next.is_empty() {
                    return Err(Error::Precondition(format!("block {s} meets B nowhere above x = {xi}")));
                }
                steps.push(GStep { s, t });
                g_blocks.push(next);
            }
            None => {
                let candidates = arr.len().saturating_sub(i + 1);
                if candidates < threshold {
                    let array = ArrayOfSets::array(g_blocks)?;
                    return Ok(GExtraction::G { x0, steps, array });
                }
                let mut used = std::collections::HashSet::new();
                let mut blocks = Vec::new();
                let mut blocks_used = Vec::new();
                for (s, block) in decoded.iter().enumerate().skip(i + 1) {
                    let mut h: Vec<usize> = block.iter().filter(|&&(x, _)| x <= xi).map(|&(_, y)| y).collect();
                    h.sort_unstable();
                    h.dedup();
                    if h.is_empty() || h.iter().any(|y| used.contains(y)) {
                        continue;
                    }
                    used.extend(h.iter().copied());
                    blocks.push(h);
                    blocks_used.push(s);
                }
                let array = ArrayOfSets::array(blocks)?;
                return Ok(GExtraction::H { cut: xi, stalled_at: i, blocks_used, array });
            }
        }
    }
}

impl CoCeApprox {
    pub(crate) fn stages_contain(&self, x: usize, t: usize) -> bool {
        self.stage(t.min(self.stage_count() - 1)).is_ok_and(|s| s.contains(x))
    }
}

/// `⋃_{j ≤ cut} A_j` from the final snapshots.
pub fn union_of_family(family: &[CoCeApprox], cut: usize) -> Result<SetPrefix> {
    let domain = family_domain(family)?;
    Ok(SetPrefix::from_fn(domain, |y| union_up_to(family, cut, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immunity::array::traces;

    fn set(n: usize, f: impl Fn(usize) -> bool) -> SetPrefix {
        SetPrefix::from_fn(n, f)
    }

    #[test]
    fn union_branches() {
        let arr = ArrayOfSets::array(vec![vec![1], vec![3], vec![5], vec![7]]).unwrap();
        let empty = CoCeApprox::constant(SetPrefix::empty(10), 4);
        match union_hyp_transform(&arr, &empty, 3, 3).unwrap() {
            UnionSplit::First { certified, array } => {
                assert_eq!(certified, vec![0, 1, 2, 3]);
                assert_eq!(array, arr);
            }
            other => panic!("{other:?}"),
        }
        let odds = CoCeApprox::constant(set(10, |x| x % 2 == 1), 4);
        match union_hyp_transform(&arr, &odds, 3, 3).unwrap() {
            UnionSplit::Second { tail_start, array } => {
                assert_eq!(tail_start, 0);
                assert!(traces(&array, odds.final_snapshot()).unwrap().holds());
            }
            other => panic!("{other:?}"),
        }
        assert!(union_hyp_transform(&arr, &odds, 4, 3).is_err());
    }

    #[test]
    fn b_from_evens_and_threes() {
        let p = Pairing::Cantor;
        let family = vec![
            CoCeApprox::constant(set(200, |x| x % 2 == 0), 1),
            CoCeApprox::constant(set(200, |x| x % 3 == 0), 1),
        ];
        let b = build_b(&family, p, 200).unwrap();
        for z in 0..200 {
            let (x, y) = p.unpair(z);
            let expected = x % 2 == 0 && (y % 2 == 0 || (x >= 1 && y % 3 == 0));
            assert_eq!(b.contains(z), expected, "code {z}");
        }
        let empty = vec![CoCeApprox::constant(SetPrefix::empty(50), 1)];
        assert!(build_b(&empty, p, 50).unwrap().is_empty());
        assert!(build_b(&empty, p, p.pair(0, 50).unwrap() + 1).is_err());
    }

    #[test]
    fn lifting() {
        let p = Pairing::Cantor;
        let a0 = set(40, |x| x % 2 == 0);
        let family = vec![CoCeApprox::constant(a0.clone(), 1)];
        let arr = ArrayOfSets::array(vec![vec![4]]).unwrap();
        let g = lift_array_to_b(&arr, 0, 2, &a0, p).unwrap();
        assert_eq!(g.blocks(), &[vec![p.pair(2, 4).unwrap()]]);
        let b = build_b(&family, p, 40).unwrap();
        assert!(traces(&g, &b).unwrap().holds());
        assert!(lift_array_to_b(&arr, 0, 3, &a0, p).is_err());
        assert!(lift_array_to_b(&arr, 4, 2, &a0, p).is_err());
    }

    #[test]
    fn g_branch_on_cofinite_a0() {
        let p = Pairing::Cantor;
        let n = 60;
        let family = vec![CoCeApprox::constant(set(n, |x| x != 1), 10)];
        let blocks = (2..8).map(|x| vec![p.pair(x, x).unwrap()]).collect();
        let arr = ArrayOfSets::array(blocks).unwrap();
        match extract_g_sequence(&arr, &family, p, 10, 3).unwrap() {
            GExtraction::G { x0, array, .. } => {
                assert_eq!(x0, 0);
                assert!(array.len() > 1);
                assert!(traces(&array, family[0].final_snapshot()).unwrap().holds());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn h_branch_on_fixed_column() {
        let p = Pairing::Cantor;
        let n = 60;
        let family = vec![CoCeApprox::constant(set(n, |x| x % 2 == 0), 10)];
        let blocks = (0..6).map(|i| vec![p.pair(0, 2 * i).unwrap()]).collect();
        let arr = ArrayOfSets::array(blocks).unwrap();
        match extract_g_sequence(&arr, &family, p, 10, 3).unwrap() {
            GExtraction::H { cut, array, .. } => {
                assert_eq!(cut, 0);
                assert!(traces(&array, &union_of_family(&family, cut).unwrap()).unwrap().holds());
            }
            other => panic!("{other:?}"),
        }
        assert!(extract_g_sequence(&arr, &family, p, 0, 3).is_err());
    }
}
