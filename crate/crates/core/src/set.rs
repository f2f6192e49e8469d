use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A finite set of naturals given by its characteristic function on `[0, domain)`.
///
/// Membership queries outside the domain answer `false`. Serialized as a 0/1 list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u8>", into = "Vec<u8>")]
pub struct SetPrefix {
    bits: Vec<bool>,
}

impl SetPrefix {
    pub fn empty(domain: usize) -> Self {
        SetPrefix { bits: vec![false; domain] }
    }

    pub fn full(domain: usize) -> Self {
        SetPrefix { bits: vec![true; domain] }
    }

    pub fn from_fn(domain: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        SetPrefix { bits: (0..domain).map(&mut f).collect() }
    }

    pub fn from_members(domain: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = SetPrefix::empty(domain);
        for x in members {
            if x >= domain {
                return Err(invalid(format!("element {x} outside domain [0, {domain})")));
            }
            set.bits[x] = true;
        }
        Ok(set)
    }

    pub fn domain(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.get(x).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, x: usize) {
        self.bits[x] = true;
    }

    pub fn remove(&mut self, x: usize) {
        self.bits[x] = false;
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn min(&self) -> Option<usize> {
        self.members().next()
    }

    /// Complement relative to the domain.
    pub fn complement(&self) -> Self {
        SetPrefix { bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn is_subset(&self, other: &SetPrefix) -> bool {
        self.members().all(|x| other.contains(x))
    }

    /// Restricts (or pads with non-members) to `[0, domain)`.
    pub fn resized(&self, domain: usize) -> Self {
        SetPrefix::from_fn(domain, |x| self.contains(x))
    }
}

impl From<Vec<u8>> for SetPrefix {
    fn from(v: Vec<u8>) -> Self {
        SetPrefix { bits: v.into_iter().map(|b| b != 0).collect() }
    }
}

impl From<SetPrefix> for Vec<u8> {
    fn from(s: SetPrefix) -> Self {
        s.bits.into_iter().map(u8::from).collect()
    }
}

/// Sorts and deduplicates a list of naturals.
pub(crate) fn normalized(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
