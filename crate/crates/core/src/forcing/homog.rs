//! Mathias-style conditions `(F₀, …, F_{k−1}, X)` for a coloring of pairs and
//! the single extension step that grows one part.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::set::normalized;
use crate::structures::{Color, ColoringPrefix};
use crate::SetPrefix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Homogeneity {
    /// Every pair inside `F_i ∪ {x}` has color `i`.
    #[default]
    Full,
    /// Consecutive pairs of `F_i ∪ {x}` have color `i`.
    Pseudo,
}

/// Parts `F_i`, one per color, and a reservoir given as a membership prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCondition", into = "RawCondition")]
pub struct HomogCondition {
    pub parts: Vec<Vec<usize>>,
    pub reservoir: SetPrefix,
    pub homogeneity: Homogeneity,
}

#[derive(Serialize, Deserialize)]
struct RawCondition {
    #[serde(flatten)]
    parts: BTreeMap<String, Vec<usize>>,
    reservoir: SetPrefix,
    #[serde(default)]
    homogeneity: Homogeneity,
}

impl TryFrom<RawCondition> for HomogCondition {
    type Error = Error;

    fn try_from(raw: RawCondition) -> Result<Self> {
        let k = raw.parts.len();
        let parts = (0..k)
            .map(|i| raw.parts.get(&format!("F{i}")).cloned().ok_or_else(|| invalid(format!("missing part F{i}"))))
            .collect::<Result<_>>()?;
        Ok(HomogCondition { parts, reservoir: raw.reservoir, homogeneity: raw.homogeneity })
    }
}

impl From<HomogCondition> for RawCondition {
    fn from(c: HomogCondition) -> Self {
        RawCondition {
            parts: c.parts.into_iter().enumerate().map(|(i, p)| (format!("F{i}"), p)).collect(),
            reservoir: c.reservoir,
            homogeneity: c.homogeneity,
        }
    }
}

impl HomogCondition {
    /// Empty parts for `colors` colors over the given reservoir.
    pub fn initial(colors: usize, reservoir: SetPrefix, homogeneity: Homogeneity) -> Self {
        HomogCondition { parts: vec![Vec::new(); colors], reservoir, homogeneity }
    }

    /// Whether `part ∪ {x}` keeps the required homogeneity for `color`, given
    /// that `part` already does.
    fn accepts(&self, f: &ColoringPrefix, part: &[usize], color: Color, x: usize) -> bool {
        match self.homogeneity {
            Homogeneity::Full => part.iter().all(|&a| f.get(a, x) == color),
            Homogeneity::Pseudo => part.last().is_none_or(|&a| f.get(a, x) == color),
        }
    }

    fn part_is_homogeneous(&self, f: &ColoringPrefix, part: &[usize], color: Color) -> bool {
        (1..part.len()).all(|j| self.accepts(f, &part[..j], color, part[j]))
    }

    /// Checks every invariant against `f`; the first failure is reported.
    pub fn validate(&self, f: &ColoringPrefix) -> Result<()> {
        if self.parts.len() != f.colors() as usize {
            return Err(invalid(format!("{} parts for {} colors", self.parts.len(), f.colors())));
        }
        if self.reservoir.domain() > f.size() {
            return Err(invalid("reservoir exceeds the coloring prefix"));
        }
        let top = self.parts.iter().flatten().copied().max();
        for (i, part) in self.parts.iter().enumerate() {
            if *part != normalized(part) {
                return Err(invalid(format!("F{i} is not sorted and duplicate-free")));
            }
            if let Some(&x) = part.iter().find(|&&x| x >= f.size()) {
                return Err(invalid(format!("F{i} holds {x}, outside the coloring")));
            }
            if !self.part_is_homogeneous(f, part, i as Color) {
                return Err(invalid(format!("F{i} is not homogeneous for color {i}")));
            }
        }
        if let (Some(top), Some(min)) = (top, self.reservoir.min()) {
            if top >= min {
                return Err(invalid(format!("stem element {top} is not below the reservoir minimum {min}")));
            }
        }
        for x in self.reservoir.members() {
            for (i, part) in self.parts.iter().enumerate() {
                if !self.accepts(f, part, i as Color, x) {
                    return Err(invalid(format!("F{i} plus reservoir element {x} is not homogeneous for color {i}")));
                }
            }
        }
        Ok(())
    }
}

/// How "`Y` is infinite" is decided at a finite horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ExtensionMode {
    /// Exact for stable colorings: `x` qualifies when its column is constantly
    /// `i` over the tail window and `Y` reaches into the window.
    Limit { tail_window: usize },
    /// `x` qualifies when `|Y| ≥ threshold` below the horizon; approximate.
    Threshold { threshold: usize },
}

impl ExtensionMode {
    /// A quarter of the horizon.
    pub fn default_threshold(horizon: usize) -> Self {
        ExtensionMode::Threshold { threshold: (horizon / 4).max(1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pub condition: HomogCondition,
    pub chosen: usize,
    pub color: Color,
    /// Set when the choice rests on a threshold rather than limit data.
    pub approximate: bool,
}

/// Grows part `color` by the least reservoir element `x` whose set
/// `Y = {y ∈ X : y > x ∧ f(x, y) = color}` is judged infinite, and shrinks the
/// reservoir to `Y`.
pub fn extension_search(c: &HomogCondition, f: &ColoringPrefix, color: Color, mode: ExtensionMode) -> Result<Extension> {
    c.validate(f)?;
    if color >= f.colors() {
        return Err(invalid(format!("color {color} out of range")));
    }
    let limits = match mode {
        ExtensionMode::Limit { tail_window } => Some(f.column_limits(tail_window)?),
        ExtensionMode::Threshold { .. } => None,
    };
    let window_start = match mode {
        ExtensionMode::Limit { tail_window } => f.size() - tail_window,
        ExtensionMode::Threshold { .. } => 0,
    };
    for x in c.reservoir.members() {
        let y: Vec<usize> = c.reservoir.members().filter(|&y| y > x && f.get(x, y) == color).collect();
        let qualifies = match (mode, &limits) {
            (ExtensionMode::Limit { .. }, Some(limits)) => {
                limits[x] == Some(color) && y.last().is_some_and(|&m| m >= window_start)
            }
            (ExtensionMode::Threshold { threshold }, _) => y.len() >= threshold,
            _ => unreachable!(),
        };
        if !qualifies {
            continue;
        }
        let mut parts = c.parts.clone();
        parts[color as usize].push(x);
        let reservoir = SetPrefix::from_members(c.reservoir.domain(), y)?;
        let condition = HomogCondition { parts, reservoir, homogeneity: c.homogeneity };
        return Ok(Extension {
            condition,
            chosen: x,
            color,
            approximate: matches!(mode, ExtensionMode::Threshold { .. }),
        });
    }
    Err(Error::Stall(format!("no reservoir element has infinitely many color-{color} successors")))
}

/// The two-color step for semi-transitive colorings, with full homogeneity.
pub fn cac_extension_search(c: &HomogCondition, f: &ColoringPrefix, color: Color, mode: ExtensionMode) -> Result<Extension> {
    if c.parts.len() != 2 || c.homogeneity != Homogeneity::Full {
        return Err(invalid("a two-part condition with full homogeneity is required"));
    }
    extension_search(c, f, color, mode)
}

/// The `k`-color step for pseudo-homogeneity.
pub fn psrt_extension_search(c: &HomogCondition, f: &ColoringPrefix, color: Color, mode: ExtensionMode) -> Result<Extension> {
    if c.homogeneity != Homogeneity::Pseudo {
        return Err(invalid("a condition with pseudo-homogeneity is required"));
    }
    extension_search(c, f, color, mode)
}
