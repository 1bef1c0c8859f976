//! Partial conjunction p-values for a single hypothesis.
//!
//! Each combiner applies a meta-analysis rule to the largest `n - r + 1`
//! order statistics of the hypothesis' base p-values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pc::matrix::SortedColumn;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PcCombiner {
    Simes,
    Fisher,
    Bonferroni,
}

impl PcCombiner {
    pub const ALL: [PcCombiner; 3] = [PcCombiner::Simes, PcCombiner::Fisher, PcCombiner::Bonferroni];

    pub fn name(self) -> &'static str {
        match self {
            PcCombiner::Simes => "simes",
            PcCombiner::Fisher => "fisher",
            PcCombiner::Bonferroni => "bonferroni",
        }
    }
}

impl fmt::Display for PcCombiner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PcCombiner {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "simes" => Ok(PcCombiner::Simes),
            "fisher" => Ok(PcCombiner::Fisher),
            "bonferroni" => Ok(PcCombiner::Bonferroni),
            other => Err(format!("unknown combiner '{other}'")),
        }
    }
}

/// Partial conjunction p-value of `H0^{r/n}` from a sorted column, capped at 1.
pub fn pc_pvalue<T: Scalar>(column: &SortedColumn<T>, r: usize, kind: PcCombiner) -> Result<T> {
    pc_pvalue_sorted(column.values(), r, kind)
}

/// Same as [`pc_pvalue`] on a plain nondecreasing slice.
pub fn pc_pvalue_sorted<T: Scalar>(sorted: &[T], r: usize, kind: PcCombiner) -> Result<T> {
    let n = sorted.len();
    if r < 2 || r > n {
        return Err(Error::ReplicabilityLevelOutOfRange { r, max_studies: n });
    }
    let tail = &sorted[r - 1..];
    let width = T::from_usize_lossy(n - r + 1);
    let p = match kind {
        PcCombiner::Bonferroni => width * tail[0],
        PcCombiner::Simes => tail
            .iter()
            .enumerate()
            .map(|(k, &p)| width / T::from_usize_lossy(k + 1) * p)
            .fold(T::infinity(), T::min),
        PcCombiner::Fisher => {
            if tail.iter().any(|&p| p == T::zero()) {
                return Ok(T::zero());
            }
            let two = T::one() + T::one();
            let stat = -two * tail.iter().map(|p| p.ln()).fold(T::zero(), |a, b| a + b);
            chi_square_sf(stat.max(T::zero()), 2 * (n - r + 1))?
        }
    };
    Ok(p.min(T::one()))
}

/// Upper tail probability of a chi-square variable with an even number of
/// degrees of freedom, `exp(-x/2) * sum_{k < df/2} (x/2)^k / k!`.
pub fn chi_square_sf<T: Scalar>(x: T, df: usize) -> Result<T> {
    if df == 0 || !df.is_multiple_of(2) {
        return Err(Error::InvalidDegreesOfFreedom(df));
    }
    if x.is_nan() || x < T::zero() {
        return Err(Error::NegativeStatistic(x.to_f64_lossy()));
    }
    if x == T::zero() {
        return Ok(T::one());
    }
    if x.is_infinite() {
        return Ok(T::zero());
    }
    let half = x / (T::one() + T::one());
    let terms = df / 2;
    let lead = (-half).exp();
    if lead > T::min_positive_value() {
        let mut term = lead;
        let mut sum = lead;
        for k in 1..terms {
            term = term * half / T::from_usize_lossy(k);
            sum = sum + term;
        }
        return Ok(sum.min(T::one()));
    }
    // exp(-x/2) underflows: accumulate in log space around the largest term.
    let log_half = half.ln();
    let mut log_terms = Vec::with_capacity(terms);
    let mut log_term = -half;
    log_terms.push(log_term);
    for k in 1..terms {
        log_term = log_term + log_half - T::from_usize_lossy(k).ln();
        log_terms.push(log_term);
    }
    let peak = log_terms.iter().copied().fold(T::neg_infinity(), T::max);
    let scaled = log_terms
        .iter()
        .map(|&l| (l - peak).exp())
        .fold(T::zero(), |a, b| a + b);
    Ok((peak + scaled.ln()).exp().min(T::one()))
}
