use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pc::PValueMatrix;
use crate::scalar::Scalar;

const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Filtering and selection p-values for every hypothesis.
///
/// For a testable hypothesis with `n_j` observed studies,
/// `F_j = (n_j - r + 1) * P_(r-1)j` and `S_j = (n_j - r + 1) * P_(r)j`.
/// Both are kept uncapped. Hypotheses with `n_j < r` are untestable and carry NaN.
#[derive(Debug, Clone)]
pub struct FilterSelectStats<T> {
    level: Option<usize>,
    observed: Option<Vec<usize>>,
    filter: Vec<T>,
    select: Vec<T>,
    testable: Vec<bool>,
}

impl<T: Scalar> FilterSelectStats<T> {
    /// Builds statistics from precomputed `(F_j, S_j)` pairs, all testable.
    pub fn from_values(filter: Vec<T>, select: Vec<T>) -> Result<Self> {
        if filter.len() != select.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} filtering values vs {} selection values",
                filter.len(),
                select.len()
            )));
        }
        for (j, (&f, &s)) in filter.iter().zip(&select).enumerate() {
            if f.is_nan() || s.is_nan() || f < T::zero() || f > s {
                return Err(Error::DimensionMismatch(format!(
                    "hypothesis {j}: need 0 <= F <= S, got F={f}, S={s}"
                )));
            }
        }
        let testable = vec![true; filter.len()];
        Ok(Self {
            level: None,
            observed: None,
            filter,
            select,
            testable,
        })
    }

    pub fn len(&self) -> usize {
        self.filter.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filter.is_empty()
    }

    /// Replicability level `r`, when derived from a matrix.
    pub fn level(&self) -> Option<usize> {
        self.level
    }

    /// Observed study count `n_j`, when derived from a matrix.
    pub fn observed(&self, j: usize) -> Option<usize> {
        self.observed.as_ref().map(|o| o[j])
    }

    pub fn is_testable(&self, j: usize) -> bool {
        self.testable[j]
    }

    pub fn testable_mask(&self) -> &[bool] {
        &self.testable
    }

    pub fn testable_count(&self) -> usize {
        self.testable.iter().filter(|&&t| t).count()
    }

    pub fn filter(&self, j: usize) -> Option<T> {
        self.testable[j].then(|| self.filter[j])
    }

    pub fn select(&self, j: usize) -> Option<T> {
        self.testable[j].then(|| self.select[j])
    }

    /// Raw filtering values (NaN for untestable).
    pub fn filter_values(&self) -> &[T] {
        &self.filter
    }

    /// Raw selection values (NaN for untestable).
    pub fn select_values(&self) -> &[T] {
        &self.select
    }

    pub(crate) fn testable_filter(&self) -> Vec<T> {
        self.filter
            .iter()
            .copied()
            .zip(&self.testable)
            .filter_map(|(f, &t)| t.then_some(f))
            .collect()
    }

    pub(crate) fn testable_select(&self) -> Vec<T> {
        self.select
            .iter()
            .copied()
            .zip(&self.testable)
            .filter_map(|(s, &t)| t.then_some(s))
            .collect()
    }
}

impl<T: Scalar> PartialEq for FilterSelectStats<T> {
    // NaN placeholders of untestable hypotheses compare equal
    fn eq(&self, other: &Self) -> bool {
        let same =
            |a: &[T], b: &[T]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y || (x.is_nan() && y.is_nan()));
        self.level == other.level
            && self.observed == other.observed
            && self.testable == other.testable
            && same(&self.filter, &other.filter)
            && same(&self.select, &other.select)
    }
}

/// Computes `(F_j, S_j)` for every column at replicability level `r`.
pub fn compute_filter_select<T: Scalar>(matrix: &PValueMatrix<T>, r: usize) -> Result<FilterSelectStats<T>> {
    let max_studies = matrix.max_observed();
    if r < 2 || r > max_studies {
        return Err(Error::ReplicabilityLevelOutOfRange { r, max_studies });
    }
    let m = matrix.n_hypotheses();
    let per_column = |j: usize| column_stats(matrix.column_raw(j), r);
    let rows: Vec<(T, T, usize)> = if m >= PARALLEL_THRESHOLD {
        (0..m).into_par_iter().map(per_column).collect()
    } else {
        (0..m).map(per_column).collect()
    };
    let mut filter = Vec::with_capacity(m);
    let mut select = Vec::with_capacity(m);
    let mut observed = Vec::with_capacity(m);
    let mut testable = Vec::with_capacity(m);
    for (f, s, n) in rows {
        filter.push(f);
        select.push(s);
        observed.push(n);
        testable.push(n >= r);
    }
    Ok(FilterSelectStats {
        level: Some(r),
        observed: Some(observed),
        filter,
        select,
        testable,
    })
}

fn column_stats<T: Scalar>(raw: &[T], r: usize) -> (T, T, usize) {
    // n is small; a stack buffer avoids allocating per column
    let mut stack = [T::zero(); 32];
    let mut heap;
    let buf: &mut [T] = if raw.len() <= stack.len() {
        &mut stack[..raw.len()]
    } else {
        heap = vec![T::zero(); raw.len()];
        &mut heap
    };
    let mut n = 0;
    for &v in raw {
        if !v.is_nan() {
            buf[n] = v;
            n += 1;
        }
    }
    if n < r {
        return (T::nan(), T::nan(), n);
    }
    let obs = &mut buf[..n];
    let (below, &mut rth, _) = obs.select_nth_unstable_by(r - 1, |a, b| a.partial_cmp(b).unwrap());
    let prev = below.iter().copied().fold(T::neg_infinity(), T::max);
    let width = T::from_usize_lossy(n - r + 1);
    (width * prev, width * rth, n)
}
