//! Synthetic experiments: truth configurations, block-correlated z-values,
//! calibrated signal strengths and replicated procedure panels.

mod normal;
mod panel;
mod rng;
mod sampler;
mod scenario;
mod truth;
mod validity;

pub use normal::{calibrate_mu, normal_cdf, normal_isf, normal_sf, two_sided_power, two_sided_pvalue};
pub use panel::{
    default_procedures, metrics_tsv, run_panel, Estimate, MetricsReport, ProcedureMetrics, ProcedureSpec,
    METRICS_HEADER,
};
pub use rng::{stream, study_stream, StreamRng, TRUTH_STREAM};
pub use sampler::{sample_pvalues, sample_pvalues_with, sample_zvalues_with, signal_levels};
pub use scenario::{
    default_panel, format_scenarios, parse_scenarios, SimScenario, DEFAULT_CONFIGURATIONS, DEFAULT_POWER_TARGETS,
    MAX_STUDIES,
};
pub use truth::{sample_truth, TruthAssignment, TruthLaw};
pub use validity::{conditional_validity, ConditionalEstimate};
