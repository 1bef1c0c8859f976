//! Monte Carlo check that, for a single null partial conjunction with
//! `n = r = 2`, `P(S <= beta | F <= beta) <= beta`.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::simlab::normal::two_sided_pvalue;
use crate::simlab::rng::stream;

const CHUNK: usize = 1 << 16;

/// Conditional frequency of `S <= beta` among draws with `F <= beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEstimate {
    pub beta: f64,
    pub conditioned: usize,
    pub hits: usize,
}

impl ConditionalEstimate {
    pub fn estimate(&self) -> f64 {
        self.hits as f64 / self.conditioned.max(1) as f64
    }

    pub fn standard_error(&self) -> f64 {
        let p = self.estimate();
        (p * (1.0 - p) / self.conditioned.max(1) as f64).sqrt()
    }
}

/// Draws `draws` p-value pairs from two independent two-sided z-tests, the
/// first null and the second with mean `second_mean` (0 for a null), and
/// estimates the conditional selection probability at every `beta`.
pub fn conditional_validity(second_mean: f64, betas: &[f64], draws: usize, seed: u64) -> Vec<ConditionalEstimate> {
    let chunks = draws.div_ceil(CHUNK);
    let partial: Vec<Vec<(usize, usize)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c as u64, 0);
            let len = CHUNK.min(draws - c * CHUNK);
            let mut tallies = vec![(0usize, 0usize); betas.len()];
            for _ in 0..len {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample::<f64, _>(StandardNormal) + second_mean;
                let (p1, p2) = (two_sided_pvalue(a), two_sided_pvalue(b));
                let (f, s) = (p1.min(p2), p1.max(p2));
                for (t, &beta) in tallies.iter_mut().zip(betas) {
                    if f <= beta {
                        t.0 += 1;
                        if s <= beta {
                            t.1 += 1;
                        }
                    }
                }
            }
            tallies
        })
        .collect();
    betas
        .iter()
        .enumerate()
        .map(|(k, &beta)| {
            let (conditioned, hits) = partial.iter().fold((0, 0), |(c, h), t| (c + t[k].0, h + t[k].1));
            ConditionalEstimate {
                beta,
                conditioned,
                hits,
            }
        })
        .collect()
}
