//! Small / large / isolated classification of the elements of an order prefix.
//!
//! "For all but finitely many y" cannot be certified on a prefix. An element is
//! classified by its relation to the later elements of a caller-chosen tail
//! window `[size - w, size)`; if that relation is not uniform, or if no later
//! element lies in the window, the element is `Unstable` at this horizon.

use serde::{Deserialize, Serialize};

use super::order::PartialOrderPrefix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Small,
    Large,
    Isolated,
    #[serde(rename = "unstable-at-horizon")]
    Unstable,
}

/// How `x` relates to a later element `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Below,
    Above,
    Apart,
}

fn side(p: &PartialOrderPrefix, x: usize, y: usize) -> Side {
    if p.leq(x, y) {
        Side::Below
    } else if p.leq(y, x) {
        Side::Above
    } else {
        Side::Apart
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClass {
    pub element: usize,
    pub class: Class,
    /// Least stage after which the element's relation to every later element
    /// of the prefix is constant; `None` when no later element exists.
    pub stabilization_stage: Option<usize>,
}

/// Classification of (a subset of) the elements of a prefix, sorted by element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClassification {
    pub size: usize,
    pub tail_window: usize,
    pub entries: Vec<ElementClass>,
}

pub fn classify_elements(p: &PartialOrderPrefix, tail_window: usize) -> Result<ElementClassification> {
    let n = p.size();
    if tail_window == 0 || tail_window >= n {
        return Err(Error::Horizon(format!("tail window {tail_window} must lie in [1, {n})")));
    }
    let start = n - tail_window;
    let entries = (0..n)
        .map(|x| {
            let from = start.max(x + 1);
            let mut sides = (from..n).map(|y| side(p, x, y));
            let class = match sides.next() {
                None => Class::Unstable,
                Some(first) if sides.all(|s| s == first) => match first {
                    Side::Below => Class::Small,
                    Side::Above => Class::Large,
                    Side::Apart => Class::Isolated,
                },
                Some(_) => Class::Unstable,
            };
            let stabilization_stage = (x + 1 < n).then(|| {
                let last = side(p, x, n - 1);
                let mut s = n - 1;
                while s > x + 1 && side(p, x, s - 1) == last {
                    s -= 1;
                }
                s
            });
            ElementClass { element: x, class, stabilization_stage }
        })
        .collect();
    Ok(ElementClassification { size: n, tail_window, entries })
}

impl ElementClassification {
    /// Builds a classification directly from per-element classes.
    pub fn from_classes(classes: &[Class]) -> Self {
        ElementClassification {
            size: classes.len(),
            tail_window: 0,
            entries: classes
                .iter()
                .enumerate()
                .map(|(element, &class)| ElementClass { element, class, stabilization_stage: None })
                .collect(),
        }
    }

    pub fn get(&self, x: usize) -> Option<Class> {
        self.entries
            .binary_search_by_key(&x, |e| e.element)
            .ok()
            .map(|i| self.entries[i].class)
    }

    pub fn is(&self, x: usize, class: Class) -> bool {
        self.get(x) == Some(class)
    }

    pub fn elements_of(&self, class: Class) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().filter(move |e| e.class == class).map(|e| e.element)
    }

    pub fn unstable(&self) -> Vec<usize> {
        self.elements_of(Class::Unstable).collect()
    }

    /// Keeps only the entries whose element satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        ElementClassification {
            size: self.size,
            tail_window: self.tail_window,
            entries: self.entries.iter().filter(|e| keep(e.element)).cloned().collect(),
        }
    }

    /// Drops the elements that are unstable at this horizon.
    pub fn classified_only(&self) -> Self {
        self.restrict_by_class(|c| c != Class::Unstable)
    }

    fn restrict_by_class(&self, keep: impl Fn(Class) -> bool) -> Self {
        ElementClassification {
            size: self.size,
            tail_window: self.tail_window,
            entries: self.entries.iter().filter(|e| keep(e.class)).cloned().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityKind {
    /// Every element small or isolated.
    #[serde(rename = "stable-SI")]
    StableSmallIsolated,
    /// Every element large or isolated.
    #[serde(rename = "stable-LI")]
    StableLargeIsolated,
    WeaklyStable,
    NotWeaklyStable,
}

impl StabilityKind {
    pub fn is_weakly_stable(self) -> bool {
        self != StabilityKind::NotWeaklyStable
    }
}

/// Stability verdict. When both stable forms hold (no small and no large
/// element), `StableSmallIsolated` is reported; see [`ElementClassification::is_stable_li`].
pub fn stability_kind(cls: &ElementClassification) -> Result<StabilityKind> {
    let unstable = cls.unstable();
    if !unstable.is_empty() {
        return Err(Error::Horizon(format!("elements unstable at horizon: {unstable:?}")));
    }
    Ok(stability_of_limits(cls.entries.iter().map(|e| Some(e.class))))
}

/// Stability of stagewise limit data, where `None` (or `Unstable`) marks an
/// element with no limit class.
pub fn stability_of_limits(classes: impl IntoIterator<Item = Option<Class>>) -> StabilityKind {
    let (mut small, mut large) = (false, false);
    for class in classes {
        match class {
            Some(Class::Small) => small = true,
            Some(Class::Large) => large = true,
            Some(Class::Isolated) => {}
            Some(Class::Unstable) | None => return StabilityKind::NotWeaklyStable,
        }
    }
    match (small, large) {
        (_, false) => StabilityKind::StableSmallIsolated,
        (false, true) => StabilityKind::StableLargeIsolated,
        (true, true) => StabilityKind::WeaklyStable,
    }
}

impl ElementClassification {
    pub fn is_stable_si(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.class, Class::Small | Class::Isolated))
    }

    pub fn is_stable_li(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.class, Class::Large | Class::Isolated))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{validate_partial_order, Relation};

    fn order(n: usize, f: impl FnMut(usize, usize) -> bool) -> PartialOrderPrefix {
        validate_partial_order(Relation::from_fn(n, f)).unwrap()
    }

    #[test]
    fn bottom_element_small_rest_isolated() {
        let p = order(10, |x, y| x == y || x == 0);
        let cls = classify_elements(&p, 5).unwrap();
        assert_eq!(cls.get(0), Some(Class::Small));
        for x in 1..9 {
            assert_eq!(cls.get(x), Some(Class::Isolated), "element {x}");
        }
        // the newest element has nothing after it
        assert_eq!(cls.get(9), Some(Class::Unstable));
    }

    #[test]
    fn numeric_order_all_small() {
        let p = order(10, |x, y| x <= y);
        let cls = classify_elements(&p, 5).unwrap();
        assert!((0..9).all(|x| cls.is(x, Class::Small)));
        assert_eq!(cls.entries[3].stabilization_stage, Some(4));
    }

    #[test]
    fn window_bounds() {
        let p = order(4, |x, y| x == y);
        assert!(classify_elements(&p, 0).is_err());
        assert!(classify_elements(&p, 4).is_err());
    }

    #[test]
    fn unstable_when_relation_changes_inside_window() {
        // 0 is below 1..=5 and incomparable to 6..
        let p = order(9, |x, y| x == y || (x == 0 && y <= 5));
        assert_eq!(classify_elements(&p, 5).unwrap().get(0), Some(Class::Unstable));
        let cls = classify_elements(&p, 3).unwrap();
        assert_eq!(cls.get(0), Some(Class::Isolated));
        assert_eq!(cls.entries[0].stabilization_stage, Some(6));
    }

    #[test]
    fn stability_kinds() {
        use Class::*;
        let all_isolated = ElementClassification::from_classes(&[Isolated; 4]);
        assert_eq!(stability_kind(&all_isolated).unwrap(), StabilityKind::StableSmallIsolated);
        assert!(all_isolated.is_stable_li());
        let si = ElementClassification::from_classes(&[Small, Isolated, Small]);
        assert_eq!(stability_kind(&si).unwrap(), StabilityKind::StableSmallIsolated);
        let li = ElementClassification::from_classes(&[Large, Isolated]);
        assert_eq!(stability_kind(&li).unwrap(), StabilityKind::StableLargeIsolated);
        let mixed = ElementClassification::from_classes(&[Small, Large, Isolated]);
        assert_eq!(stability_kind(&mixed).unwrap(), StabilityKind::WeaklyStable);
        let bad = ElementClassification::from_classes(&[Small, Unstable]);
        assert!(stability_kind(&bad).is_err());
        assert_eq!(stability_kind(&bad.classified_only()).unwrap(), StabilityKind::StableSmallIsolated);
        assert_eq!(stability_of_limits([Some(Small), None]), StabilityKind::NotWeaklyStable);
    }
}
