//! Multiple testing of partial conjunction (replicability) hypotheses.
//!
//! Given an `n x M` matrix of p-values (`n` studies, `M` features) and a
//! replicability level `r`, the procedures here decide for each feature
//! whether its signal is non-null in at least `r` studies, while controlling
//! the per-family error rate (AdaFilter Bonferroni) or the false discovery
//! rate (AdaFilter BH). Direct correction of per-feature PC p-values is
//! provided as a baseline, and [`simlab`] reproduces the simulation study.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix it to `f64`.

pub mod adafilter;
pub mod baselines;
mod decision;
mod error;
pub mod pc;
mod scalar;
pub mod simlab;

pub use adafilter::{
    adafilter_bh, adafilter_bh_oracle, adafilter_bonferroni, adafilter_bonferroni_twostep, compute_filter_select,
    curves, CurveTable, FilterSelectStats,
};
pub use baselines::{direct_adjust, pfer_bound, Adjustment, DirectProcedureSpec};
pub use decision::{DecisionResult, Method};
pub use error::{Error, Result};
pub use pc::{chi_square_sf, pc_pvalue, PValueMatrix, PcCombiner, SortedColumn};
pub use scalar::{grid_value, le_tol, Scalar};

pub type PValueMatrix64 = PValueMatrix<f64>;
pub type PValueMatrix32 = PValueMatrix<f32>;
pub type SortedColumn64 = SortedColumn<f64>;
pub type FilterSelectStats64 = FilterSelectStats<f64>;
pub type FilterSelectStats32 = FilterSelectStats<f32>;
pub type DecisionResult64 = DecisionResult<f64>;
pub type DecisionResult32 = DecisionResult<f32>;
pub type CurveTable64 = CurveTable<f64>;
pub type DirectProcedureSpec64 = DirectProcedureSpec<f64>;
