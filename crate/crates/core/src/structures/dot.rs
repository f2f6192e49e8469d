use std::fmt::Write;

use super::order::PartialOrderPrefix;

/// Hasse-diagram DOT export: an edge `x -> y` for every covering pair
/// `x <_P y` with no `z` strictly between.
pub fn to_dot(p: &PartialOrderPrefix) -> String {
    let n = p.size();
    let mut out = String::from("digraph order {\n");
    for x in 0..n {
        let _ = writeln!(out, "  {x};");
    }
    for x in 0..n {
        for y in 0..n {
            if p.lt(x, y) && !(0..n).any(|z| p.lt(x, z) && p.lt(z, y)) {
                let _ = writeln!(out, "  {x} -> {y};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{validate_partial_order, Relation};

    #[test]
    fn chain_keeps_only_covers() {
        let p = validate_partial_order(Relation::from_fn(3, |x, y| x <= y)).unwrap();
        let dot = to_dot(&p);
        assert!(dot.contains("0 -> 1;") && dot.contains("1 -> 2;"));
        assert!(!dot.contains("0 -> 2;"));
    }
}
