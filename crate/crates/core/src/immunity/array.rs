use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::set::normalized;
use crate::{SetPrefix, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrayKind {
    /// Mutually disjoint blocks.
    Array,
    /// Increasing blocks `F₀ < F₁ < …` of sizes in `[1, k]`.
    KEnum(usize),
    /// Increasing nonempty blocks with no declared bound.
    CbEnum,
}

/// A finite sequence of finite sets of naturals, each stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArray", into = "RawArray")]
pub struct ArrayOfSets {
    kind: ArrayKind,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawArray {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<RawArray> for ArrayOfSets {
    type Error = crate::Error;

    fn try_from(raw: RawArray) -> Result<Self> {
        let kind = match (raw.kind.as_str(), raw.k) {
            ("array", None) => ArrayKind::Array,
            ("kenum", Some(k)) => ArrayKind::KEnum(k),
            ("cbenum", None) => ArrayKind::CbEnum,
            (kind, k) => return Err(invalid(format!("unknown array kind {kind:?} with k = {k:?}"))),
        };
        ArrayOfSets::new(kind, raw.blocks)
    }
}

impl From<ArrayOfSets> for RawArray {
    fn from(a: ArrayOfSets) -> Self {
        let (kind, k) = match a.kind {
            ArrayKind::Array => ("array", None),
            ArrayKind::KEnum(k) => ("kenum", Some(k)),
            ArrayKind::CbEnum => ("cbenum", None),
        };
        RawArray { kind: kind.into(), k, blocks: a.blocks }
    }
}

impl ArrayOfSets {
    /// Validates the blocks against `kind`. Blocks are sorted first; duplicate
    /// elements inside a block are rejected.
    pub fn new(kind: ArrayKind, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                let n = normalized(&b);
                if n.len() != b.len() {
                    return Err(invalid(format!("block {i} repeats an element")));
                }
                Ok(n)
            })
            .collect::<Result<_>>()?;
        match kind {
            ArrayKind::Array => {
                let mut seen = std::collections::HashSet::new();
                for (i, b) in blocks.iter().enumerate() {
                    if let Some(x) = b.iter().find(|&&x| !seen.insert(x)) {
                        return Err(invalid(format!("block {i} shares {x} with an earlier block")));
                    }
                }
            }
            ArrayKind::KEnum(_) | ArrayKind::CbEnum => {
                let bound = match kind {
                    ArrayKind::KEnum(k) => k,
                    _ => usize::MAX,
                };
                for (i, b) in blocks.iter().enumerate() {
                    if b.is_empty() || b.len() > bound {
                        return Err(invalid(format!("block {i} has size {} outside [1, {bound}]", b.len())));
                    }
                    if i > 0 && blocks[i - 1].last() >= b.first() {
                        return Err(invalid(format!("block {} is not below block {i}", i - 1)));
                    }
                }
            }
        }
        Ok(ArrayOfSets { kind, blocks })
    }

    pub fn array(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(ArrayKind::Array, blocks)
    }

    pub fn kenum(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(ArrayKind::KEnum(k), blocks)
    }

    pub fn kind(&self) -> ArrayKind {
        self.kind
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Largest block size.
    pub fn width(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Whether every block meets `a`; otherwise the first block that does not.
pub fn traces(arr: &ArrayOfSets, a: &SetPrefix) -> Result<Verdict<usize>> {
    for (i, b) in arr.blocks().iter().enumerate() {
        if let Some(&x) = b.iter().find(|&&x| x >= a.domain()) {
            return Err(invalid(format!("block {i} holds {x}, outside the domain {}", a.domain())));
        }
    }
    Ok(match arr.blocks().iter().position(|b| !b.iter().any(|&x| a.contains(x))) {
        Some(i) => Verdict::Fails(i),
        None => Verdict::Holds,
    })
}

/// `p_A(i)`: the `i`-th smallest element of `a`.
pub fn principal_function(a: &SetPrefix) -> Result<Vec<usize>> {
    if a.is_empty() {
        return Err(invalid("principal function of the empty set"));
    }
    Ok(a.to_vec())
}

/// Whether `f(i) ≥ g(i)` on the common range; otherwise the first `i` where not.
pub fn dominates(f: &[usize], g: &[usize]) -> Verdict<usize> {
    match f.iter().zip(g).position(|(a, b)| a < b) {
        Some(i) => Verdict::Fails(i),
        None => Verdict::Holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evens(n: usize) -> SetPrefix {
        SetPrefix::from_fn(n, |x| x % 2 == 0)
    }

    #[test]
    fn tracing() {
        let arr = ArrayOfSets::array(vec![vec![0], vec![2], vec![4]]).unwrap();
        assert!(traces(&arr, &evens(10)).unwrap().holds());
        let arr = ArrayOfSets::array(vec![vec![1]]).unwrap();
        assert_eq!(traces(&arr, &evens(10)).unwrap(), Verdict::Fails(0));
        let arr = ArrayOfSets::array(vec![vec![12]]).unwrap();
        assert!(traces(&arr, &evens(10)).is_err());
    }

    #[test]
    fn validation() {
        assert!(ArrayOfSets::array(vec![vec![1, 2], vec![2]]).is_err());
        assert!(ArrayOfSets::kenum(2, vec![vec![1, 2], vec![2, 5]]).is_err());
        assert!(ArrayOfSets::kenum(1, vec![vec![1, 2]]).is_err());
        assert!(ArrayOfSets::kenum(2, vec![vec![]]).is_err());
        assert!(ArrayOfSets::kenum(2, vec![vec![2, 1], vec![3]]).is_ok());
    }

    #[test]
    fn json_shape() {
        let arr = ArrayOfSets::kenum(2, vec![vec![0, 1], vec![4]]).unwrap();
        let json = serde_json::to_string(&arr).unwrap();
        assert_eq!(json, r#"{"kind":"kenum","k":2,"blocks":[[0,1],[4]]}"#);
        assert_eq!(serde_json::from_str::<ArrayOfSets>(&json).unwrap(), arr);
        assert!(serde_json::from_str::<ArrayOfSets>(r#"{"kind":"kenum","k":1,"blocks":[[0,1]]}"#).is_err());
    }

    #[test]
    fn principal_and_domination() {
        let p = principal_function(&evens(9)).unwrap();
        assert_eq!(p, vec![0, 2, 4, 6, 8]);
        let squares = SetPrefix::from_members(50, (0..7).map(|i| i * i)).unwrap();
        let p = principal_function(&squares).unwrap();
        let id: Vec<usize> = (0..p.len()).collect();
        assert!(dominates(&p, &id).holds());
        assert_eq!(dominates(&id, &p), Verdict::Fails(2));
        assert!(principal_function(&SetPrefix::empty(4)).is_err());
    }
}
