//! Finite prefixes of colorings and orders, and exact checkers for the
//! structural properties the constructions rely on.

mod classify;
mod coloring;
mod dot;
mod order;
mod property;

pub use classify::{
    classify_elements, stability_kind, stability_of_limits, Class, ElementClass, ElementClassification,
    StabilityKind,
};
pub use coloring::{check_semi_transitive, Color, ColoringPrefix};
pub use dot::to_dot;
pub use order::{
    validate_linear_order, validate_partial_order, LinearOrderPrefix, OrderViolation, PartialOrderPrefix, Relation,
};
pub use property::{check_set_property, is_homogeneous, is_pseudo_homogeneous, pseudo_color, SetProperty, Structure};
