//! Expanders, boosters and rotation-extension: the constructive side of the
//! resilience argument.

mod booster;
mod expander;
mod pipeline;
mod rotation;

pub use booster::{enumerate_boosters, is_booster, BoosterOracle, BoosterSet};
pub use expander::{
    binomial_saturating, expansion_violation, is_expander, max_expander_k, subsets_up_to, violation_of_size,
    ExpanderParams, Ratio, DEFAULT_SUBSET_BUDGET,
};
pub use pipeline::{booster_augment, extract_sparse_expander, AugmentOutcome, AugmentStep, AugmentStop};
pub use rotation::{posa_find_hamilton, MAX_RESTARTS};
