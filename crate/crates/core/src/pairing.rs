//! Bijective codings of pairs of naturals.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A pairing codec `ω² → ω`. Only the Cantor pairing is provided; the name is
/// echoed in every serialized transcript so that codes can be decoded later.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    /// `π(x, y) = (x + y)(x + y + 1)/2 + y`
    #[default]
    Cantor,
}

impl Pairing {
    pub fn name(self) -> &'static str {
        match self {
            Pairing::Cantor => "cantor",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "cantor" => Ok(Pairing::Cantor),
            other => Err(invalid(format!("unknown pairing codec {other:?}"))),
        }
    }

    /// Encodes `(x, y)`, or `None` on overflow.
    pub fn pair(self, x: usize, y: usize) -> Option<usize> {
        let sum = x.checked_add(y)?;
        let tri = sum.checked_mul(sum.checked_add(1)?)? / 2;
        tri.checked_add(y)
    }

    pub fn unpair(self, z: usize) -> (usize, usize) {
        // w is the largest integer with w(w+1)/2 <= z
        let mut w = (((8 * z as u128 + 1).isqrt() - 1) / 2) as usize;
        while w * (w + 1) / 2 > z {
            w -= 1;
        }
        let y = z - w * (w + 1) / 2;
        (w - y, y)
    }

    /// Column index of a code: the first component.
    pub fn column(self, z: usize) -> usize {
        self.unpair(z).0
    }
}
