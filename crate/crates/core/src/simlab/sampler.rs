use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::pc::PValueMatrix;
use crate::simlab::normal::{calibrate_mu, two_sided_pvalue};
use crate::simlab::rng::study_stream;
use crate::simlab::scenario::SimScenario;
use crate::simlab::truth::TruthAssignment;

/// The four signal means matching the scenario's power targets.
pub fn signal_levels(scenario: &SimScenario) -> Result<[f64; 4]> {
    let level = scenario.effective_calibration_alpha();
    let mut out = [0.0; 4];
    for (slot, &power) in out.iter_mut().zip(&scenario.power_targets) {
        *slot = calibrate_mu(power, level)?;
    }
    Ok(out)
}

/// Draws the z-values of one replication (column-major, `n` per hypothesis),
/// one generator per study.
///
/// Within a study the z-values of each contiguous block of `b` hypotheses
/// share a common factor: `Z_j = sqrt(rho) W + sqrt(1 - rho) e_j + mean_j`.
/// Non-null means are drawn uniformly from `{+-mu_1, ..., +-mu_4}`.
pub fn sample_zvalues_with<R: Rng>(
    truth: &TruthAssignment,
    scenario: &SimScenario,
    signal: &[f64; 4],
    rngs: &mut [R],
) -> Result<Vec<f64>> {
    let n = scenario.studies;
    let m = scenario.hypotheses;
    let b = scenario.block_size;
    if rngs.len() != n || truth.len() != m || truth.studies() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} generators and {} truth rows for n={n}, M={m}",
            rngs.len(),
            truth.len()
        )));
    }
    if b == 0 || !m.is_multiple_of(b) {
        return Err(Error::InvalidScenario(format!("block_size {b} does not divide M={m}")));
    }
    let shared = scenario.rho.sqrt();
    let own = (1.0 - scenario.rho).sqrt();
    let mut values = vec![0.0; n * m];
    for (i, rng) in rngs.iter_mut().enumerate() {
        for block in 0..m / b {
            let w: f64 = rng.sample(StandardNormal);
            for j in block * b..(block + 1) * b {
                let e: f64 = rng.sample(StandardNormal);
                let mut z = shared * w + own * e;
                if truth.is_nonnull(i, j) {
                    let pick = rng.random_range(0..8usize);
                    let mu = signal[pick / 2];
                    z += if pick % 2 == 0 { mu } else { -mu };
                }
                values[j * n + i] = z;
            }
        }
    }
    Ok(values)
}

/// Two-sided p-values of [`sample_zvalues_with`].
pub fn sample_pvalues_with<R: Rng>(
    truth: &TruthAssignment,
    scenario: &SimScenario,
    signal: &[f64; 4],
    rngs: &mut [R],
) -> Result<PValueMatrix<f64>> {
    let mut values = sample_zvalues_with(truth, scenario, signal, rngs)?;
    for v in values.iter_mut() {
        *v = two_sided_pvalue(*v);
    }
    PValueMatrix::from_column_major(scenario.studies, scenario.hypotheses, values)
}

/// [`sample_pvalues_with`] using the study streams of `(master_seed, replication)`.
pub fn sample_pvalues(
    truth: &TruthAssignment,
    scenario: &SimScenario,
    signal: &[f64; 4],
    master_seed: u64,
    replication: u64,
) -> Result<PValueMatrix<f64>> {
    let mut rngs: Vec<_> = (0..scenario.studies)
        .map(|i| study_stream(master_seed, replication, i))
        .collect();
    sample_pvalues_with(truth, scenario, signal, &mut rngs)
}
