//! Direct approach: compute a PC p-value per hypothesis, then apply an
//! ordinary Bonferroni or Benjamini-Hochberg correction across hypotheses.

use crate::decision::{check_alpha, DecisionResult, Method};
use crate::error::{Error, Result};
use crate::pc::{pc_pvalue_sorted, PValueMatrix, PcCombiner};
use crate::scalar::{le_tol, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adjustment {
    Bonferroni,
    Bh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectProcedureSpec<T> {
    pub combiner: PcCombiner,
    pub adjustment: Adjustment,
    pub alpha: T,
}

impl<T> DirectProcedureSpec<T> {
    pub fn method(&self) -> Method {
        match self.adjustment {
            Adjustment::Bonferroni => Method::DirectBonferroni(self.combiner),
            Adjustment::Bh => Method::DirectBh(self.combiner),
        }
    }
}

/// PC p-values for every column; `None` where fewer than `r` studies are observed.
pub fn pc_pvalues<T: Scalar>(matrix: &PValueMatrix<T>, r: usize, combiner: PcCombiner) -> Result<Vec<Option<T>>> {
    let max_studies = matrix.max_observed();
    if r < 2 || r > max_studies {
        return Err(Error::ReplicabilityLevelOutOfRange { r, max_studies });
    }
    let mut buf = Vec::with_capacity(matrix.n_studies());
    (0..matrix.n_hypotheses())
        .map(|j| {
            buf.clear();
            buf.extend(matrix.column(j).flatten());
            if buf.len() < r {
                return Ok(None);
            }
            buf.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            pc_pvalue_sorted(&buf, r, combiner).map(Some)
        })
        .collect()
}

pub fn direct_adjust<T: Scalar>(
    matrix: &PValueMatrix<T>,
    r: usize,
    spec: &DirectProcedureSpec<T>,
) -> Result<DecisionResult<T>> {
    let pvalues = pc_pvalues(matrix, r, spec.combiner)?;
    adjust_pc_pvalues(&pvalues, spec)
}

/// Applies the multiplicity correction of `spec` to precomputed PC p-values.
pub fn adjust_pc_pvalues<T: Scalar>(pvalues: &[Option<T>], spec: &DirectProcedureSpec<T>) -> Result<DecisionResult<T>> {
    let alpha = spec.alpha;
    check_alpha(alpha)?;
    let total = pvalues.iter().flatten().count();
    if total == 0 {
        return Err(Error::NoTestableHypotheses);
    }
    let count = T::from_usize_lossy(total);
    let untestable: Vec<bool> = pvalues.iter().map(Option::is_none).collect();

    let (gamma0, filtered_count, adjusted) = match spec.adjustment {
        Adjustment::Bonferroni => {
            let adjusted = pvalues.iter().map(|p| p.map(|p| (p * count).min(T::one()))).collect();
            (alpha / count, Some(total), adjusted)
        }
        Adjustment::Bh => {
            let mut order: Vec<usize> = (0..pvalues.len()).filter(|&j| pvalues[j].is_some()).collect();
            order.sort_by(|&a, &b| pvalues[a].partial_cmp(&pvalues[b]).unwrap());
            let sorted: Vec<T> = order.iter().map(|&j| pvalues[j].unwrap()).collect();
            // step-up: largest k with P_(k) <= k alpha / M
            let k = (1..=total)
                .rev()
                .find(|&k| le_tol(sorted[k - 1] * count, T::from_usize_lossy(k) * alpha))
                .unwrap_or(0);
            let gamma0 = if k == 0 {
                T::zero()
            } else {
                T::from_usize_lossy(k) * alpha / count
            };
            let mut adjusted = vec![None; pvalues.len()];
            let mut running = T::one();
            for (rank, &j) in order.iter().enumerate().rev() {
                let a = sorted[rank] * count / T::from_usize_lossy(rank + 1);
                running = running.min(a);
                adjusted[j] = Some(running);
            }
            let rejected_cut = if k == 0 { None } else { Some(sorted[k - 1]) };
            let rejected = pvalues
                .iter()
                .map(|p| match (p, rejected_cut) {
                    (Some(p), Some(cut)) => *p <= cut,
                    _ => false,
                })
                .collect();
            return Ok(DecisionResult {
                method: spec.method(),
                alpha,
                gamma0,
                filtered_count: None,
                rejected,
                adjusted: Some(adjusted),
                untestable,
            });
        }
    };
    let rejected = pvalues
        .iter()
        .map(|p| p.is_some_and(|p| le_tol(p * count, alpha)))
        .collect();
    Ok(DecisionResult {
        method: spec.method(),
        alpha,
        gamma0,
        filtered_count,
        rejected,
        adjusted: Some(adjusted),
        untestable,
    })
}

/// Upper bound on the expected number of false rejections of direct
/// Bonferroni for the conjunction null (`r = n`):
/// `sum_{k < n} |I_k| (alpha / M)^(n - k)`, where `counts[k] = |I_k|` is the
/// number of hypotheses with exactly `k` non-null studies.
pub fn pfer_bound<T: Scalar>(counts: &[usize], alpha: T, hypotheses: usize, studies: usize) -> T {
    let ratio = alpha / T::from_usize_lossy(hypotheses);
    counts
        .iter()
        .take(studies)
        .enumerate()
        .map(|(k, &c)| T::from_usize_lossy(c) * ratio.powi((studies - k) as i32))
        .fold(T::zero(), |a, b| a + b)
}
