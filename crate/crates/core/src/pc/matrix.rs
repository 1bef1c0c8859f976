use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An `n x M` grid of base p-values: one row per study, one column per
/// hypothesis. Entries may be missing.
///
/// Storage is column-major so that each hypothesis' p-values are contiguous;
/// missing entries are held as NaN and never exposed as numbers.
#[derive(Debug, Clone)]
pub struct PValueMatrix<T> {
    studies: usize,
    hypotheses: usize,
    values: Vec<T>,
}

impl<T: Scalar> PartialEq for PValueMatrix<T> {
    // missing entries compare equal
    fn eq(&self, other: &Self) -> bool {
        self.studies == other.studies
            && self.hypotheses == other.hypotheses
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a == b || (a.is_nan() && b.is_nan()))
    }
}

impl<T: Scalar> PValueMatrix<T> {
    /// Validates a study-major grid (`rows[i][j]` is study `i`, hypothesis `j`).
    pub fn from_rows(rows: &[Vec<Option<T>>]) -> Result<Self> {
        let studies = rows.len();
        if studies == 0 {
            return Err(Error::DimensionMismatch("matrix has no studies".into()));
        }
        let hypotheses = rows[0].len();
        if hypotheses == 0 {
            return Err(Error::DimensionMismatch("matrix has no hypotheses".into()));
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != hypotheses) {
            return Err(Error::DimensionMismatch(format!(
                "study {i} has {} entries, expected {hypotheses}",
                row.len()
            )));
        }
        let mut values = vec![T::nan(); studies * hypotheses];
        for (i, row) in rows.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if let Some(v) = *entry {
                    values[j * studies + i] = v;
                }
            }
        }
        Self::check(studies, hypotheses, values, |i, j, v| Error::OutOfRangeEntry {
            study: i,
            hypothesis: j,
            value: v.to_f64_lossy(),
        })
    }

    /// Validates a hypothesis-major grid (`columns[j][i]` is study `i`, hypothesis `j`).
    pub fn from_columns(columns: &[Vec<Option<T>>]) -> Result<Self> {
        let hypotheses = columns.len();
        if hypotheses == 0 {
            return Err(Error::DimensionMismatch("matrix has no hypotheses".into()));
        }
        let studies = columns[0].len();
        if studies == 0 {
            return Err(Error::DimensionMismatch("matrix has no studies".into()));
        }
        let mut values = Vec::with_capacity(studies * hypotheses);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != studies {
                return Err(Error::DimensionMismatch(format!(
                    "hypothesis {j} has {} entries, expected {studies}",
                    col.len()
                )));
            }
            values.extend(col.iter().map(|v| v.unwrap_or_else(T::nan)));
        }
        Self::check(studies, hypotheses, values, |i, j, v| Error::OutOfRangeEntry {
            study: i,
            hypothesis: j,
            value: v.to_f64_lossy(),
        })
    }

    /// Wraps a column-major buffer in which NaN marks a missing entry.
    pub fn from_column_major(studies: usize, hypotheses: usize, values: Vec<T>) -> Result<Self> {
        if studies == 0 || hypotheses == 0 || values.len() != studies * hypotheses {
            return Err(Error::DimensionMismatch(format!(
                "{} values cannot form a {studies} x {hypotheses} matrix",
                values.len()
            )));
        }
        Self::check(studies, hypotheses, values, |i, j, v| Error::OutOfRangeEntry {
            study: i,
            hypothesis: j,
            value: v.to_f64_lossy(),
        })
    }

    fn check(
        studies: usize,
        hypotheses: usize,
        values: Vec<T>,
        out_of_range: impl Fn(usize, usize, T) -> Error,
    ) -> Result<Self> {
        // Report in study-major order so the first offending cell matches a
        // reader scanning the grid row by row.
        for i in 0..studies {
            for j in 0..hypotheses {
                let v = values[j * studies + i];
                if !v.is_nan() && (v < T::zero() || v > T::one()) {
                    return Err(out_of_range(i, j, v));
                }
            }
        }
        for j in 0..hypotheses {
            if values[j * studies..(j + 1) * studies].iter().all(|v| v.is_nan()) {
                return Err(Error::EmptyColumn(j));
            }
        }
        Ok(Self {
            studies,
            hypotheses,
            values,
        })
    }

    pub fn n_studies(&self) -> usize {
        self.studies
    }

    pub fn n_hypotheses(&self) -> usize {
        self.hypotheses
    }

    pub fn get(&self, study: usize, hypothesis: usize) -> Option<T> {
        let v = self.values[hypothesis * self.studies + study];
        (!v.is_nan()).then_some(v)
    }

    /// Raw column slice; NaN entries are missing.
    pub(crate) fn column_raw(&self, hypothesis: usize) -> &[T] {
        &self.values[hypothesis * self.studies..(hypothesis + 1) * self.studies]
    }

    pub fn column(&self, hypothesis: usize) -> impl Iterator<Item = Option<T>> + '_ {
        self.column_raw(hypothesis).iter().map(|&v| (!v.is_nan()).then_some(v))
    }

    /// Number of observed entries in a column (`n_j`).
    pub fn observed(&self, hypothesis: usize) -> usize {
        self.column_raw(hypothesis).iter().filter(|v| !v.is_nan()).count()
    }

    pub fn max_observed(&self) -> usize {
        (0..self.hypotheses).map(|j| self.observed(j)).max().unwrap_or(0)
    }

    /// Replaces one observed entry, re-checking its range.
    pub fn set(&mut self, study: usize, hypothesis: usize, value: T) -> Result<()> {
        if value.is_nan() || value < T::zero() || value > T::one() {
            return Err(Error::OutOfRangeEntry {
                study,
                hypothesis,
                value: value.to_f64_lossy(),
            });
        }
        self.values[hypothesis * self.studies + study] = value;
        Ok(())
    }

    pub fn sort_column(&self, hypothesis: usize) -> Result<SortedColumn<T>> {
        if hypothesis >= self.hypotheses {
            return Err(Error::IndexOutOfBounds {
                index: hypothesis,
                len: self.hypotheses,
            });
        }
        let mut sorted: Vec<T> = self
            .column_raw(hypothesis)
            .iter()
            .copied()
            .filter(|v| !v.is_nan())
            .collect();
        // stable: equal values keep their input order
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(SortedColumn { hypothesis, sorted })
    }
}

/// The observed p-values of one hypothesis in nondecreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedColumn<T> {
    hypothesis: usize,
    sorted: Vec<T>,
}

impl<T: Scalar> SortedColumn<T> {
    /// Builds a column directly from p-values, sorting them.
    pub fn new(hypothesis: usize, mut values: Vec<T>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|v| v.is_nan() || **v < T::zero() || **v > T::one()) {
            return Err(Error::OutOfRangeEntry {
                study: 0,
                hypothesis,
                value: v.to_f64_lossy(),
            });
        }
        if values.is_empty() {
            return Err(Error::EmptyColumn(hypothesis));
        }
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self {
            hypothesis,
            sorted: values,
        })
    }

    pub fn hypothesis(&self) -> usize {
        self.hypothesis
    }

    pub fn values(&self) -> &[T] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(grid: &[&[Option<f64>]]) -> Vec<Vec<Option<f64>>> {
        grid.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn accepts_valid_grid() {
        let m = PValueMatrix::from_rows(&rows(&[&[Some(0.03), Some(0.2)], &[Some(0.04), Some(0.9)]])).unwrap();
        assert_eq!(m.n_studies(), 2);
        assert_eq!(m.n_hypotheses(), 2);
        assert_eq!(m.observed(0), 2);
        assert_eq!(m.observed(1), 2);
        assert_eq!(m.get(1, 0), Some(0.04));
    }

    #[test]
    fn boundary_values_allowed() {
        let m = PValueMatrix::from_rows(&rows(&[&[Some(0.0)]])).unwrap();
        assert_eq!(m.get(0, 0), Some(0.0));
        assert!(PValueMatrix::from_rows(&rows(&[&[Some(1.0)]])).is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        let err = PValueMatrix::from_rows(&rows(&[&[Some(1.2)], &[Some(0.5)]])).unwrap_err();
        assert_eq!(
            err,
            Error::OutOfRangeEntry {
                study: 0,
                hypothesis: 0,
                value: 1.2
            }
        );
        assert!(PValueMatrix::from_rows(&rows(&[&[Some(-0.1)]])).is_err());
    }

    #[test]
    fn rejects_empty_column_and_ragged_rows() {
        let err = PValueMatrix::<f64>::from_rows(&rows(&[&[Some(0.1), None], &[Some(0.2), None]])).unwrap_err();
        assert_eq!(err, Error::EmptyColumn(1));
        let err = PValueMatrix::from_rows(&rows(&[&[Some(0.1), Some(0.3)], &[Some(0.2)]])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
        assert!(matches!(
            PValueMatrix::<f64>::from_rows(&[]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn sort_drops_missing() {
        let m = PValueMatrix::from_columns(&[vec![Some(0.9), Some(0.1), None, Some(0.5)]]).unwrap();
        let col = m.sort_column(0).unwrap();
        assert_eq!(col.values(), &[0.1, 0.5, 0.9]);
        assert_eq!(col.len(), 3);

        let m = PValueMatrix::from_columns(&[vec![Some(0.2), Some(0.2)], vec![None, Some(0.7)]]).unwrap();
        assert_eq!(m.sort_column(0).unwrap().values(), &[0.2, 0.2]);
        assert_eq!(m.sort_column(1).unwrap().values(), &[0.7]);
        assert!(m.sort_column(2).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let m = PValueMatrix::<f32>::from_columns(&[vec![Some(0.3), Some(0.1)]]).unwrap();
        assert_eq!(m.sort_column(0).unwrap().values(), &[0.1f32, 0.3]);
    }
}
