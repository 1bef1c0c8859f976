use crate::adafilter::stats::FilterSelectStats;
use crate::decision::{check_alpha, DecisionResult, Method};
use crate::error::{Error, Result};
use crate::scalar::{grid_value, le_tol, Scalar};

/// AdaFilter Bonferroni: the largest `gamma` in `{alpha/M, ..., alpha/2, alpha}`
/// with `gamma * #{F_j <= gamma} <= alpha`; rejects `S_j <= gamma`.
///
/// `M` counts testable hypotheses only.
pub fn adafilter_bonferroni<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T) -> Result<DecisionResult<T>> {
    check_alpha(alpha)?;
    let total = stats.testable_count();
    if total == 0 {
        return Err(Error::NoTestableHypotheses);
    }
    let mut filter = stats.testable_filter();
    filter.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    // gamma = alpha / k for k = 1, 2, ...: the first feasible k gives the maximum.
    // k = total is always feasible.
    let mut chosen = total;
    for k in 1..=total {
        let gamma = grid_value(alpha, 1, k);
        let count = filter.partition_point(|&f| f <= gamma);
        if le_tol(gamma * T::from_usize_lossy(count), alpha) {
            chosen = k;
            break;
        }
    }
    Ok(bonferroni_decision(stats, alpha, chosen))
}

/// The two-step form: sort `F`, find the first `j` with `alpha/j < F_(j)`,
/// settle the filtered count `m`, then reject `S_j <= alpha/m`.
///
/// Produces the same decision as [`adafilter_bonferroni`] on every input.
pub fn adafilter_bonferroni_twostep<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T) -> Result<DecisionResult<T>> {
    check_alpha(alpha)?;
    let total = stats.testable_count();
    if total == 0 {
        return Err(Error::NoTestableHypotheses);
    }
    let mut filter = stats.testable_filter();
    filter.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    let first_exceeding = (1..=total).find(|&j| grid_value(alpha, 1, j) < filter[j - 1]);
    let m = match first_exceeding {
        None => total,
        // alpha / (m' - 1) is undefined for m' = 1; keep m = m'
        Some(1) => 1,
        Some(mp) if filter[mp - 1] <= grid_value(alpha, 1, mp - 1) => mp,
        Some(mp) => mp - 1,
    };
    Ok(bonferroni_decision(stats, alpha, m))
}

fn bonferroni_decision<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T, m: usize) -> DecisionResult<T> {
    let gamma0 = grid_value(alpha, 1, m);
    let scale = T::from_usize_lossy(m);
    let mut rejected = Vec::with_capacity(stats.len());
    let mut adjusted = Vec::with_capacity(stats.len());
    for j in 0..stats.len() {
        match stats.select(j) {
            Some(s) => {
                rejected.push(s <= gamma0);
                adjusted.push(Some((s * scale).min(T::one())));
            }
            None => {
                rejected.push(false);
                adjusted.push(None);
            }
        }
    }
    DecisionResult {
        method: Method::AdaFilterBonferroni,
        alpha,
        gamma0,
        filtered_count: Some(m),
        rejected,
        adjusted: Some(adjusted),
        untestable: stats.testable_mask().iter().map(|t| !t).collect(),
    }
}
