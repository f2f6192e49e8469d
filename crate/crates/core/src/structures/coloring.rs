use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::Verdict;

pub type Color = u8;

/// Position of the increasing pair `(x, y)` in the dense upper-triangle layout,
/// ordered by `y` then `x`. Growing the prefix only appends.
#[inline]
pub(crate) fn pair_index(x: usize, y: usize) -> usize {
    debug_assert!(x < y);
    y * (y - 1) / 2 + x
}

/// A coloring of the increasing pairs over `[0, size)` with colors in `[0, colors)`.
///
/// Queries on unordered pairs are normalized by sorting, so `get(3, 1)` reads the
/// color of `{1, 3}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColoring", into = "RawColoring")]
pub struct ColoringPrefix {
    colors: Color,
    size: usize,
    upper: Vec<Color>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    arity: usize,
    colors: Color,
    size: usize,
    upper: Vec<Color>,
}

impl TryFrom<RawColoring> for ColoringPrefix {
    type Error = Error;

    fn try_from(raw: RawColoring) -> Result<Self> {
        if raw.arity != 2 {
            return Err(invalid(format!("only pair colorings are supported, got arity {}", raw.arity)));
        }
        ColoringPrefix::from_upper(raw.colors, raw.size, raw.upper)
    }
}

impl From<ColoringPrefix> for RawColoring {
    fn from(c: ColoringPrefix) -> Self {
        RawColoring { arity: 2, colors: c.colors, size: c.size, upper: c.upper }
    }
}

impl ColoringPrefix {
    pub fn constant(colors: Color, size: usize, color: Color) -> Result<Self> {
        Self::from_fn(colors, size, |_, _| color)
    }

    /// Builds the coloring `(x, y) ↦ f(x, y)` for `x < y < size`.
    pub fn from_fn(colors: Color, size: usize, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let mut upper = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for y in 0..size {
            for x in 0..y {
                upper.push(f(x, y));
            }
        }
        Self::from_upper(colors, size, upper)
    }

    pub fn from_upper(colors: Color, size: usize, upper: Vec<Color>) -> Result<Self> {
        if colors == 0 {
            return Err(invalid("a coloring needs at least one color"));
        }
        let expected = size * size.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(invalid(format!(
                "{} pair colors given, {expected} needed for size {size}",
                upper.len()
            )));
        }
        if let Some(pos) = upper.iter().position(|&c| c >= colors) {
            return Err(invalid(format!("color {} at position {pos} is not below {colors}", upper[pos])));
        }
        Ok(ColoringPrefix { colors, size, upper })
    }

    pub fn arity(&self) -> usize {
        2
    }

    pub fn colors(&self) -> Color {
        self.colors
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn upper(&self) -> &[Color] {
        &self.upper
    }

    /// Color of the pair `{a, b}`. Panics on `a == b` or out-of-range arguments.
    pub fn get(&self, a: usize, b: usize) -> Color {
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        assert!(x != y, "coloring queried on the diagonal ({a}, {b})");
        assert!(y < self.size, "pair ({a}, {b}) outside prefix of size {}", self.size);
        self.upper[pair_index(x, y)]
    }

    pub fn set(&mut self, a: usize, b: usize, color: Color) {
        assert!(color < self.colors);
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        assert!(x != y && y < self.size);
        self.upper[pair_index(x, y)] = color;
    }

    /// Appends the element `size`, colored `column[x]` against each earlier `x`.
    pub fn push_element(&mut self, column: &[Color]) {
        assert_eq!(column.len(), self.size);
        assert!(column.iter().all(|&c| c < self.colors));
        self.upper.extend_from_slice(column);
        self.size += 1;
    }

    /// The restriction to `[0, n)`.
    pub fn restrict(&self, n: usize) -> Self {
        assert!(n <= self.size);
        ColoringPrefix {
            colors: self.colors,
            size: n,
            upper: self.upper[..n * n.saturating_sub(1) / 2].to_vec(),
        }
    }

    /// Per element `x`, the color of `(x, y)` if it is constant over the later
    /// elements `y` of the tail window `[size - tail_window, size)`, and `None`
    /// otherwise (or when no later element falls inside the window).
    pub fn column_limits(&self, tail_window: usize) -> Result<Vec<Option<Color>>> {
        if tail_window == 0 || tail_window >= self.size {
            return Err(Error::Horizon(format!(
                "tail window {tail_window} must lie in [1, {})",
                self.size
            )));
        }
        let start = self.size - tail_window;
        Ok((0..self.size)
            .map(|x| {
                let from = start.max(x + 1);
                let mut colors = (from..self.size).map(|y| self.get(x, y));
                let first = colors.next()?;
                colors.all(|c| c == first).then_some(first)
            })
            .collect())
    }

    /// Least stage `s > x` after which `f(x, ·)` is constant on the prefix.
    pub fn column_stabilization(&self, x: usize) -> Option<usize> {
        if x + 1 >= self.size {
            return None;
        }
        let last = self.get(x, self.size - 1);
        let mut s = self.size - 1;
        while s > x + 1 && self.get(x, s - 1) == last {
            s -= 1;
        }
        Some(s)
    }
}

/// Checks that color 1 is transitive along increasing triples, returning the
/// lexicographically least violating `(x, y, z)`.
pub fn check_semi_transitive(c: &ColoringPrefix) -> Result<Verdict<(usize, usize, usize)>> {
    if c.colors() != 2 {
        return Err(invalid(format!("semi-transitivity needs 2 colors, got {}", c.colors())));
    }
    let n = c.size();
    for x in 0..n {
        for y in x + 1..n {
            if c.get(x, y) != 1 {
                continue;
            }
            for z in y + 1..n {
                if c.get(y, z) == 1 && c.get(x, z) == 0 {
                    return Ok(Verdict::Fails((x, y, z)));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}
