use serde::{Deserialize, Serialize};

use super::array::ArrayOfSets;
use crate::error::{invalid, Error, Result};
use crate::structures::{Class, ElementClassification, LinearOrderPrefix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinPReport {
    /// `min_P F_i` for each block, in block order.
    pub minima: Vec<usize>,
    /// Minima not classified small, a sign the array did not trace `S*(P)`.
    pub not_small: Vec<usize>,
}

/// The `≤_P`-least element of each block.
pub fn minp_extract(arr: &ArrayOfSets, p: &LinearOrderPrefix, cls: &ElementClassification) -> Result<MinPReport> {
    let mut minima = Vec::with_capacity(arr.len());
    for (i, b) in arr.blocks().iter().enumerate() {
        if let Some(&x) = b.iter().find(|&&x| x >= p.size()) {
            return Err(invalid(format!("block {i} holds {x}, outside the order")));
        }
        if let Some(&x) = b.iter().find(|&&x| matches!(cls.get(x), None | Some(Class::Unstable))) {
            return Err(Error::Horizon(format!("block {i} holds {x}, unclassified at this horizon")));
        }
        let min = b.iter().copied().reduce(|a, x| if p.lt(x, a) { x } else { a });
        minima.extend(min);
    }
    let not_small = minima.iter().copied().filter(|&x| !cls.is(x, Class::Small)).collect();
    Ok(MinPReport { minima, not_small })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{classify_elements, validate_linear_order, Relation};

    fn omega_plus_omega_star(n: usize, cut: usize) -> LinearOrderPrefix {
        // 0 < 1 < … < cut-1 < n-1 < n-2 < … < cut
        let rank = |x: usize| if x < cut { x } else { cut + (n - 1 - x) };
        validate_linear_order(Relation::from_fn(n, |x, y| rank(x) <= rank(y))).unwrap()
    }

    #[test]
    fn numeric_order() {
        let p = omega_plus_omega_star(10, 10);
        let cls = classify_elements(p.as_partial(), 5).unwrap();
        let arr = ArrayOfSets::array(vec![vec![0, 5], vec![7, 8]]).unwrap();
        let out = minp_extract(&arr, &p, &cls).unwrap();
        assert_eq!(out.minima, vec![0, 7]);
        assert!(out.not_small.is_empty());
        let arr = ArrayOfSets::array(vec![vec![9]]).unwrap();
        assert!(minp_extract(&arr, &p, &cls).is_err());
    }

    #[test]
    fn small_representatives_win() {
        let p = omega_plus_omega_star(12, 6);
        let cls = classify_elements(p.as_partial(), 4).unwrap();
        assert!(cls.is(2, Class::Small) && cls.is(7, Class::Large));
        let arr = ArrayOfSets::array(vec![vec![2, 7], vec![4, 6]]).unwrap();
        let out = minp_extract(&arr, &p, &cls).unwrap();
        assert_eq!(out.minima, vec![2, 4]);
        let large = ArrayOfSets::array(vec![vec![7, 8]]).unwrap();
        assert_eq!(minp_extract(&large, &p, &cls).unwrap().not_small, vec![8]);
    }
}
