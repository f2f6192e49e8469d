//! Single extension steps of the forcing arguments, as finite searches.

mod homog;
mod order;

pub use homog::{
    cac_extension_search, extension_search, psrt_extension_search, ExtensionMode, Extension, HomogCondition, Homogeneity,
};
pub use order::{extend_both, split_pair_search, x_of, OrderCondition, SplitPair, XReport};
