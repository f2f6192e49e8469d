use serde::{Deserialize, Serialize};

use super::coloring::{Color, ColoringPrefix};
use super::order::{LinearOrderPrefix, PartialOrderPrefix};
use crate::error::{invalid, Result};
use crate::set::normalized;
use crate::Verdict;

/// The structure a finite set is checked against.
#[derive(Clone, Copy, Debug)]
pub enum Structure<'a> {
    Coloring(&'a ColoringPrefix),
    Order(&'a PartialOrderPrefix),
    Linear(&'a LinearOrderPrefix),
}

impl Structure<'_> {
    fn size(&self) -> usize {
        match self {
            Structure::Coloring(c) => c.size(),
            Structure::Order(p) => p.size(),
            Structure::Linear(l) => l.size(),
        }
    }

    fn order(&self) -> Option<&PartialOrderPrefix> {
        match self {
            Structure::Coloring(_) => None,
            Structure::Order(p) => Some(p),
            Structure::Linear(l) => Some(l.as_partial()),
        }
    }
}

/// Set properties. The color, when given, pins the (pseudo-)homogeneous color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetProperty {
    Chain,
    Antichain,
    Ascending,
    Descending,
    Homogeneous(Option<Color>),
    PseudoHomogeneous(Option<Color>),
}

/// Exact verdict for `property` on the finite set `set`. A failing verdict
/// carries the least offending pair `[x, y]` (for pseudo-homogeneity: the least
/// consecutive pair whose color differs from the expected one).
pub fn check_set_property(set: &[usize], structure: Structure<'_>, property: SetProperty) -> Result<Verdict<Vec<usize>>> {
    let s = normalized(set);
    if let Some(&x) = s.iter().find(|&&x| x >= structure.size()) {
        return Err(invalid(format!("element {x} outside structure of size {}", structure.size())));
    }
    let pairs = || s.iter().enumerate().flat_map(|(i, &x)| s[i + 1..].iter().map(move |&y| (x, y)));
    let first_failure = |mut bad: Box<dyn FnMut(usize, usize) -> bool + '_>| {
        pairs()
            .find(|&(x, y)| bad(x, y))
            .map_or(Verdict::Holds, |(x, y)| Verdict::Fails(vec![x, y]))
    };
    match property {
        SetProperty::Chain | SetProperty::Antichain => {
            let p = structure
                .order()
                .ok_or_else(|| invalid(format!("{property:?} needs an order")))?;
            Ok(if property == SetProperty::Chain {
                first_failure(Box::new(|x, y| p.incomparable(x, y)))
            } else {
                first_failure(Box::new(|x, y| p.comparable(x, y)))
            })
        }
        SetProperty::Ascending | SetProperty::Descending => {
            let Structure::Linear(l) = structure else {
                return Err(invalid(format!("{property:?} needs a linear order")));
            };
            Ok(if property == SetProperty::Ascending {
                first_failure(Box::new(|x, y| !l.lt(x, y)))
            } else {
                first_failure(Box::new(|x, y| !l.lt(y, x)))
            })
        }
        SetProperty::Homogeneous(color) => {
            let Structure::Coloring(f) = structure else {
                return Err(invalid("homogeneity needs a coloring"));
            };
            let Some(expected) = color.or_else(|| pairs().next().map(|(x, y)| f.get(x, y))) else {
                return Ok(Verdict::Holds);
            };
            Ok(first_failure(Box::new(|x, y| f.get(x, y) != expected)))
        }
        SetProperty::PseudoHomogeneous(color) => {
            let Structure::Coloring(f) = structure else {
                return Err(invalid("pseudo-homogeneity needs a coloring"));
            };
            Ok(pseudo_homogeneity(f, &s, color))
        }
    }
}

fn pseudo_homogeneity(f: &ColoringPrefix, sorted: &[usize], color: Option<Color>) -> Verdict<Vec<usize>> {
    let mut consecutive = sorted.windows(2).map(|w| (w[0], w[1]));
    let expected = match color {
        Some(c) => c,
        None => match sorted.get(..2) {
            Some([x, y]) => f.get(*x, *y),
            _ => return Verdict::Holds,
        },
    };
    consecutive
        .find(|&(x, y)| f.get(x, y) != expected)
        .map_or(Verdict::Holds, |(x, y)| Verdict::Fails(vec![x, y]))
}

/// The common color of the consecutive pairs of `set`, if it is pseudo-homogeneous
/// and has at least two elements.
pub fn pseudo_color(f: &ColoringPrefix, set: &[usize]) -> Option<Color> {
    let s = normalized(set);
    if s.len() < 2 {
        return None;
    }
    let c = f.get(s[0], s[1]);
    s.windows(2).all(|w| f.get(w[0], w[1]) == c).then_some(c)
}

pub fn is_pseudo_homogeneous(f: &ColoringPrefix, set: &[usize], color: Option<Color>) -> bool {
    let s = normalized(set);
    s.iter().all(|&x| x < f.size()) && pseudo_homogeneity(f, &s, color).holds()
}

pub fn is_homogeneous(f: &ColoringPrefix, set: &[usize], color: Option<Color>) -> bool {
    check_set_property(set, Structure::Coloring(f), SetProperty::Homogeneous(color))
        .map(|v| v.holds())
        .unwrap_or(false)
}
