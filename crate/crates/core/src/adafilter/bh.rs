use std::collections::HashMap;

use crate::adafilter::stats::FilterSelectStats;
use crate::decision::{check_alpha, DecisionResult, Method};
use crate::error::{Error, Result};
use crate::scalar::{gcd, grid_value, le_tol, Scalar};

/// Largest number of testable hypotheses the literal-grid oracle accepts.
pub const ORACLE_LIMIT: usize = 200;

/// AdaFilter BH: the largest `gamma` in `{k alpha / m : 0 <= k <= m <= M}` with
/// `gamma * #{F_j <= gamma} <= alpha * #{S_j <= gamma}`; rejects `S_j <= gamma`.
///
/// Runs in `O(M log M)`: the constraint only changes at the observed `F` and
/// `S` values, so the segments between them are visited from the top and the
/// best grid point inside the first feasible segment is found by a
/// Stern-Brocot search over fractions with denominator at most `M`.
pub fn adafilter_bh<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T) -> Result<DecisionResult<T>> {
    check_alpha(alpha)?;
    let total = stats.testable_count();
    if total == 0 {
        return Err(Error::NoTestableHypotheses);
    }
    let gamma0 = bh_threshold(stats, alpha, total);
    Ok(bh_decision(stats, alpha, gamma0))
}

fn bh_threshold<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T, total: usize) -> T {
    let cmp = |a: &T, b: &T| a.partial_cmp(b).unwrap();
    let mut filter = stats.testable_filter();
    let mut select = stats.testable_select();
    filter.sort_unstable_by(cmp);
    select.sort_unstable_by(cmp);

    let mut breaks: Vec<T> = Vec::with_capacity(2 * total + 1);
    breaks.push(T::zero());
    breaks.extend(
        filter
            .iter()
            .chain(&select)
            .copied()
            .filter(|&v| v > T::zero() && v <= alpha),
    );
    breaks.sort_unstable_by(cmp);
    breaks.dedup();

    for i in (0..breaks.len()).rev() {
        let lower = breaks[i];
        let upper = breaks.get(i + 1).copied();
        let nf = T::from_usize_lossy(filter.partition_point(|&f| f <= lower));
        let ns = T::from_usize_lossy(select.partition_point(|&s| s <= lower));
        // the constraint only tightens as gamma grows inside a segment
        if !le_tol(lower * nf, alpha * ns) {
            continue;
        }
        let feasible = |k: usize, m: usize| {
            let g = grid_value(alpha, k, m);
            upper.is_none_or(|u| g < u) && le_tol(g * nf, alpha * ns)
        };
        let (k, m) = largest_fraction(total, feasible);
        let gamma = grid_value(alpha, k, m);
        if gamma >= lower {
            return gamma;
        }
    }
    T::zero()
}

/// Literal evaluation of the BH-type threshold: every distinct grid point is
/// checked by direct counting. Cubic in `M`; intended as a test oracle.
pub fn adafilter_bh_oracle<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T) -> Result<DecisionResult<T>> {
    check_alpha(alpha)?;
    let total = stats.testable_count();
    if total == 0 {
        return Err(Error::NoTestableHypotheses);
    }
    if total > ORACLE_LIMIT {
        return Err(Error::OracleSizeExceeded {
            size: total,
            limit: ORACLE_LIMIT,
        });
    }
    let filter = stats.testable_filter();
    let select = stats.testable_select();
    let mut best = T::zero();
    for m in 1..=total {
        for k in 1..=m {
            if gcd(k, m) != 1 {
                continue;
            }
            let gamma = grid_value(alpha, k, m);
            let nf = filter.iter().filter(|&&f| f <= gamma).count();
            let ns = select.iter().filter(|&&s| s <= gamma).count();
            if le_tol(gamma * T::from_usize_lossy(nf), alpha * T::from_usize_lossy(ns)) && gamma > best {
                best = gamma;
            }
        }
    }
    Ok(bh_decision(stats, alpha, best))
}

fn bh_decision<T: Scalar>(stats: &FilterSelectStats<T>, alpha: T, gamma0: T) -> DecisionResult<T> {
    let rejected = (0..stats.len())
        .map(|j| stats.select(j).is_some_and(|s| s <= gamma0))
        .collect();
    DecisionResult {
        method: Method::AdaFilterBh,
        alpha,
        gamma0,
        filtered_count: None,
        rejected,
        adjusted: None,
        untestable: stats.testable_mask().iter().map(|t| !t).collect(),
    }
}

/// Smallest level at which each hypothesis is rejected by AdaFilter BH, found
/// by bisection over `alpha` in `(0, 1]` to within `tolerance`. Hypotheses not
/// rejected at `alpha = 1` get 1.
///
/// Every probe reruns the procedure; probes are shared across hypotheses, but
/// the cost is still roughly `M log(1/tolerance)` procedure runs.
pub fn adafilter_bh_adjusted<T: Scalar>(stats: &FilterSelectStats<T>, tolerance: T) -> Result<Vec<Option<T>>> {
    let total = stats.testable_count();
    if total == 0 {
        return Err(Error::NoTestableHypotheses);
    }
    let mut cache: HashMap<u64, T> = HashMap::new();
    let mut threshold_at = |a: T| -> T {
        *cache
            .entry(a.to_f64_lossy().to_bits())
            .or_insert_with(|| bh_threshold(stats, a, total))
    };
    let two = T::one() + T::one();
    let mut out = Vec::with_capacity(stats.len());
    for j in 0..stats.len() {
        let Some(s) = stats.select(j) else {
            out.push(None);
            continue;
        };
        if s > threshold_at(T::one()) {
            out.push(Some(T::one()));
            continue;
        }
        let (mut lo, mut hi) = (T::zero(), T::one());
        while hi - lo > tolerance {
            let mid = (lo + hi) / two;
            if s <= threshold_at(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(Some(hi));
    }
    Ok(out)
}

/// Largest reduced fraction `k/m` in `[0, 1]` with `m <= max_den` satisfying
/// `pred`, where `pred` holds on an initial segment of the fractions in
/// increasing order and `pred(0, 1)` is true.
fn largest_fraction(max_den: usize, pred: impl Fn(usize, usize) -> bool) -> (usize, usize) {
    if pred(1, 1) {
        return (1, 1);
    }
    let (mut lk, mut lm) = (0usize, 1usize);
    let (mut hk, mut hm) = (1usize, 1usize);
    loop {
        let up = last_true((max_den - lm) / hm, |t| pred(lk + t * hk, lm + t * hm));
        lk += up * hk;
        lm += up * hm;
        let down = last_true((max_den - hm) / lm, |t| !pred(hk + t * lk, hm + t * lm));
        hk += down * lk;
        hm += down * lm;
        if up == 0 && down == 0 {
            return (lk, lm);
        }
    }
}

/// Largest `t` in `[0, max]` with `f(t)`, for `f` true on a prefix; `f(0)` is assumed.
fn last_true(max: usize, f: impl Fn(usize) -> bool) -> usize {
    if max == 0 || !f(1) {
        return 0;
    }
    let mut good = 1;
    let mut step = 2;
    while step <= max && f(step) {
        good = step;
        step = step.saturating_mul(2);
    }
    let mut bad = step.min(max + 1);
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if f(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}
