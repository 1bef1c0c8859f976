use crate::adafilter::stats::FilterSelectStats;
use crate::scalar::Scalar;

/// Estimated false discovery count and proportion as functions of the threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable<T> {
    pub gamma: Vec<T>,
    /// `gamma * #{F_j <= gamma}`
    pub v_hat: Vec<T>,
    /// `v_hat / max(#{S_j <= gamma}, 1)`
    pub fdp_hat: Vec<T>,
}

impl<T> CurveTable<T> {
    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

/// Evaluates the estimated-V and estimated-FDP step functions on `grid`.
/// Untestable hypotheses are ignored.
pub fn curves<T: Scalar>(stats: &FilterSelectStats<T>, grid: &[T]) -> CurveTable<T> {
    let cmp = |a: &T, b: &T| a.partial_cmp(b).unwrap();
    let mut filter = stats.testable_filter();
    let mut select = stats.testable_select();
    filter.sort_unstable_by(cmp);
    select.sort_unstable_by(cmp);
    let mut v_hat = Vec::with_capacity(grid.len());
    let mut fdp_hat = Vec::with_capacity(grid.len());
    for &g in grid {
        let nf = filter.partition_point(|&f| f <= g);
        let ns = select.partition_point(|&s| s <= g);
        let v = g * T::from_usize_lossy(nf);
        v_hat.push(v);
        fdp_hat.push(v / T::from_usize_lossy(ns.max(1)));
    }
    CurveTable {
        gamma: grid.to_vec(),
        v_hat,
        fdp_hat,
    }
}

/// All breakpoints of the curves inside `[0, 1]`: zero, every `F_j` and `S_j`,
/// and `alpha * k / 100` for `k = 1..=100` when `alpha` is given. Sorted, deduplicated.
pub fn default_grid<T: Scalar>(stats: &FilterSelectStats<T>, alpha: Option<T>) -> Vec<T> {
    let mut grid = vec![T::zero()];
    grid.extend(
        stats
            .testable_filter()
            .into_iter()
            .chain(stats.testable_select())
            .filter(|&v| v >= T::zero() && v <= T::one()),
    );
    if let Some(alpha) = alpha {
        let hundred = T::from_u8(100).unwrap();
        grid.extend((1..=100u8).map(|k| alpha * T::from_u8(k).unwrap() / hundred));
    }
    grid.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> FilterSelectStats<f64> {
        FilterSelectStats::from_values(vec![0.03, 0.2], vec![0.04, 0.9]).unwrap()
    }

    #[test]
    fn fixture_point() {
        let t = curves(&fixture(), &[0.0, 0.05]);
        assert_eq!(t.v_hat, vec![0.0, 0.05]);
        assert_eq!(t.fdp_hat, vec![0.0, 0.05]);
    }

    #[test]
    fn zero_when_nothing_filtered() {
        let t = curves(&fixture(), &[0.0, 0.01, 0.02]);
        assert!(t.v_hat.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn grid_contents() {
        let g = default_grid(&fixture(), Some(0.05));
        assert_eq!(g[0], 0.0);
        assert!(g.contains(&0.03) && g.contains(&0.9) && g.contains(&0.05));
        assert!(g.windows(2).all(|w| w[0] < w[1]));

        let big = FilterSelectStats::from_values(vec![1.5], vec![2.5]).unwrap();
        assert_eq!(default_grid(&big, None), vec![0.0]);
    }
}
