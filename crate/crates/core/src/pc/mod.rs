//! Base p-value containers and single-hypothesis partial conjunction tests.

mod combine;
mod matrix;

pub use combine::{chi_square_sf, pc_pvalue, pc_pvalue_sorted, PcCombiner};
pub use matrix::{PValueMatrix, SortedColumn};
