use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{invalid, Error, Result};

/// An unvalidated binary relation on `[0, size)`, stored row-major
/// (`leq[x * size + y]` is `x ≤ y`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRelation", into = "RawRelation")]
pub struct Relation {
    size: usize,
    leq: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawRelation {
    size: usize,
    leq: Vec<Vec<u8>>,
}

impl TryFrom<RawRelation> for Relation {
    type Error = Error;

    fn try_from(raw: RawRelation) -> Result<Self> {
        if raw.leq.len() != raw.size || raw.leq.iter().any(|row| row.len() != raw.size) {
            return Err(invalid(format!("leq must be a {0}×{0} matrix", raw.size)));
        }
        let mut leq = Vec::with_capacity(raw.size * raw.size);
        for row in raw.leq {
            for v in row {
                match v {
                    0 => leq.push(false),
                    1 => leq.push(true),
                    other => return Err(invalid(format!("leq entries are 0/1, got {other}"))),
                }
            }
        }
        Ok(Relation { size: raw.size, leq })
    }
}

impl From<Relation> for RawRelation {
    fn from(r: Relation) -> Self {
        let leq = r
            .leq
            .chunks(r.size.max(1))
            .take(r.size)
            .map(|row| row.iter().map(|&b| u8::from(b)).collect())
            .collect();
        RawRelation { size: r.size, leq }
    }
}

impl Relation {
    /// Only `x ≤ x`: the discrete (antichain) order.
    pub fn discrete(size: usize) -> Self {
        Self::from_fn(size, |x, y| x == y)
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut leq = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                leq.push(f(x, y));
            }
        }
        Relation { size, leq }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.leq[x * self.size + y] = value;
    }

    /// The restriction to `[0, n)`.
    pub fn restrict(&self, n: usize) -> Self {
        assert!(n <= self.size);
        Self::from_fn(n, |x, y| self.get(x, y))
    }
}

/// The least violated order axiom, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum OrderViolation {
    #[error("reflexivity fails at {x}")]
    Reflexivity { x: usize },
    #[error("antisymmetry fails at ({x}, {y})")]
    Antisymmetry { x: usize, y: usize },
    #[error("transitivity fails at ({x}, {y}, {z})")]
    Transitivity { x: usize, y: usize, z: usize },
    #[error("totality fails at ({x}, {y})")]
    Totality { x: usize, y: usize },
}

/// A validated partial order on `[0, size)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PartialOrderPrefix {
    rel: Relation,
}

impl<'de> Deserialize<'de> for PartialOrderPrefix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rel = Relation::deserialize(d)?;
        validate_partial_order(rel).map_err(serde::de::Error::custom)
    }
}

impl PartialOrderPrefix {
    pub fn size(&self) -> usize {
        self.rel.size
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel.get(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.rel.get(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.rel.get(x, y) || self.rel.get(y, x)
    }

    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn into_relation(self) -> Relation {
        self.rel
    }

    /// The suborder on `[0, n)`.
    pub fn restrict(&self, n: usize) -> Self {
        PartialOrderPrefix { rel: self.rel.restrict(n) }
    }
}

/// A validated total order on `[0, size)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LinearOrderPrefix {
    order: PartialOrderPrefix,
}

impl<'de> Deserialize<'de> for LinearOrderPrefix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rel = Relation::deserialize(d)?;
        validate_linear_order(rel).map_err(serde::de::Error::custom)
    }
}

impl LinearOrderPrefix {
    pub fn as_partial(&self) -> &PartialOrderPrefix {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.order.lt(x, y)
    }
}

/// Validates reflexivity, then antisymmetry, then transitivity, reporting the
/// first failing axiom at its lexicographically least witness.
pub fn validate_partial_order(rel: Relation) -> std::result::Result<PartialOrderPrefix, OrderViolation> {
    let n = rel.size;
    if let Some(x) = (0..n).find(|&x| !rel.get(x, x)) {
        return Err(OrderViolation::Reflexivity { x });
    }
    for x in 0..n {
        for y in x + 1..n {
            if rel.get(x, y) && rel.get(y, x) {
                return Err(OrderViolation::Antisymmetry { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !rel.get(x, y) {
                continue;
            }
            for z in 0..n {
                if rel.get(y, z) && !rel.get(x, z) {
                    return Err(OrderViolation::Transitivity { x, y, z });
                }
            }
        }
    }
    Ok(PartialOrderPrefix { rel })
}

/// As [`validate_partial_order`], then checks totality.
pub fn validate_linear_order(rel: Relation) -> std::result::Result<LinearOrderPrefix, OrderViolation> {
    let order = validate_partial_order(rel)?;
    let n = order.size();
    for x in 0..n {
        for y in x + 1..n {
            if !order.comparable(x, y) {
                return Err(OrderViolation::Totality { x, y });
            }
        }
    }
    Ok(LinearOrderPrefix { order })
}

impl PartialOrderPrefix {
    /// Upgrades to a linear order if the order is total.
    pub fn into_linear(self) -> std::result::Result<LinearOrderPrefix, OrderViolation> {
        validate_linear_order(self.rel)
    }
}
