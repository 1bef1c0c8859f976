//! Adaptive filtering procedures.
//!
//! Each hypothesis is summarised by a filtering value `F_j` (the scaled
//! `(r-1)`-th smallest p-value) and a selection value `S_j` (the scaled `r`-th
//! smallest). Only hypotheses that pass the filter count toward the
//! multiplicity correction applied to `S_j`.

mod bh;
mod bonferroni;
mod curve;
mod stats;

pub use bh::{adafilter_bh, adafilter_bh_adjusted, adafilter_bh_oracle, ORACLE_LIMIT};
pub use bonferroni::{adafilter_bonferroni, adafilter_bonferroni_twostep};
pub use curve::{curves, default_grid, CurveTable};
pub use stats::{compute_filter_select, FilterSelectStats};
