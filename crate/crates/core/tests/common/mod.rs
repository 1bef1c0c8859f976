#![allow(dead_code)]

use adafilter::{grid_value, FilterSelectStats, PValueMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One p-value drawn from a mixture of null, strong-signal, boundary and tie values.
pub fn mixed_pvalue<R: Rng>(rng: &mut R, alpha: f64) -> f64 {
    match rng.random_range(0..10) {
        0 => 0.0,
        1 => 1.0,
        2 => grid_value(alpha, 1, rng.random_range(1..=6)),
        3 => [0.01, 0.02, 0.025, 0.05][rng.random_range(0..4)],
        4 | 5 => rng.random::<f64>().powi(4) * 0.1,
        _ => rng.random::<f64>(),
    }
}

/// A random matrix with `n` in 2..=8, `M` in 1..=50, occasional missing entries,
/// and a valid replicability level.
pub fn random_instance<R: Rng>(rng: &mut R, alpha: f64) -> (PValueMatrix<f64>, usize) {
    loop {
        let (matrix, r) = try_instance(rng, alpha);
        if r <= matrix.max_observed() {
            return (matrix, r);
        }
    }
}

fn try_instance<R: Rng>(rng: &mut R, alpha: f64) -> (PValueMatrix<f64>, usize) {
    let n = rng.random_range(2..=8);
    let m = rng.random_range(1..=50);
    let missing_rate = if rng.random_bool(0.3) { 0.15 } else { 0.0 };
    let columns: Vec<Vec<Option<f64>>> = (0..m)
        .map(|_| {
            let mut col: Vec<Option<f64>> = (0..n)
                .map(|_| (!rng.random_bool(missing_rate)).then(|| mixed_pvalue(rng, alpha)))
                .collect();
            if col.iter().all(Option::is_none) {
                col[0] = Some(rng.random());
            }
            col
        })
        .collect();
    let matrix = PValueMatrix::from_columns(&columns).unwrap();
    let r = rng.random_range(2..=matrix.max_observed().max(2));
    (matrix, r)
}

/// `(F, S)` pairs placed directly on and around the threshold grid.
pub fn random_stats<R: Rng>(rng: &mut R, alpha: f64, max_m: usize) -> FilterSelectStats<f64> {
    let m = rng.random_range(1..=max_m);
    let mut filter = Vec::with_capacity(m);
    let mut select = Vec::with_capacity(m);
    for _ in 0..m {
        let pick = |rng: &mut R| match rng.random_range(0..6) {
            0 => grid_value(alpha, rng.random_range(0..=m), m.max(1)),
            1 => grid_value(alpha, 1, rng.random_range(1..=m)),
            2 => rng.random::<f64>() * alpha,
            3 => rng.random::<f64>().powi(3),
            4 => 0.0,
            _ => rng.random::<f64>() * 3.0,
        };
        let a = pick(rng);
        let b = pick(rng);
        filter.push(a.min(b));
        select.push(a.max(b));
    }
    FilterSelectStats::from_values(filter, select).unwrap()
}
