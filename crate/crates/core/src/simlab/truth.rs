use rand::Rng;

use crate::error::Result;
use crate::simlab::scenario::SimScenario;

/// Which base hypotheses are non-null, per hypothesis, as bit masks over studies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthAssignment {
    studies: usize,
    level: usize,
    masks: Vec<u32>,
}

impl TruthAssignment {
    pub fn from_masks(studies: usize, level: usize, masks: Vec<u32>) -> Self {
        Self { studies, level, masks }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, hypothesis: usize) -> u32 {
        self.masks[hypothesis]
    }

    pub fn is_nonnull(&self, study: usize, hypothesis: usize) -> bool {
        self.masks[hypothesis] >> study & 1 == 1
    }

    pub fn nonnull_count(&self, hypothesis: usize) -> usize {
        self.masks[hypothesis].count_ones() as usize
    }

    /// The partial conjunction null is false: at least `r` studies are non-null.
    pub fn pc_nonnull(&self, hypothesis: usize) -> bool {
        self.nonnull_count(hypothesis) >= self.level
    }

    pub fn studies(&self) -> usize {
        self.studies
    }
}

/// Sampling law over the `2^n` null/non-null combinations.
///
/// The global null has probability `pi0`; the combinations with at least `r`
/// non-nulls share `pi_rn` equally; the remaining combinations share the rest
/// equally.
#[derive(Debug, Clone)]
pub struct TruthLaw {
    studies: usize,
    level: usize,
    pi0: f64,
    pi_rn: f64,
    nonnull_pc: Vec<u32>,
    null_pc: Vec<u32>,
}

impl TruthLaw {
    pub fn new(scenario: &SimScenario) -> Result<Self> {
        scenario.validate()?;
        let n = scenario.studies;
        let r = scenario.level;
        let (nonnull_pc, null_pc): (Vec<u32>, Vec<u32>) = (1u32..1 << n).partition(|m| m.count_ones() as usize >= r);
        Ok(Self {
            studies: n,
            level: r,
            pi0: scenario.pi0,
            pi_rn: scenario.pi_rn,
            nonnull_pc,
            null_pc,
        })
    }

    /// Probability assigned to one combination.
    pub fn probability(&self, mask: u32) -> f64 {
        let k = mask.count_ones() as usize;
        if k == 0 {
            self.pi0
        } else if k >= self.level {
            self.pi_rn / self.nonnull_pc.len() as f64
        } else {
            (1.0 - self.pi0 - self.pi_rn).max(0.0) / self.null_pc.len() as f64
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.random();
        if u < self.pi0 {
            0
        } else if u < self.pi0 + self.pi_rn {
            self.nonnull_pc[rng.random_range(0..self.nonnull_pc.len())]
        } else {
            self.null_pc[rng.random_range(0..self.null_pc.len())]
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, hypotheses: usize, rng: &mut R) -> TruthAssignment {
        let masks = (0..hypotheses).map(|_| self.draw(rng)).collect();
        TruthAssignment::from_masks(self.studies, self.level, masks)
    }
}

pub fn sample_truth<R: Rng + ?Sized>(scenario: &SimScenario, rng: &mut R) -> Result<TruthAssignment> {
    Ok(TruthLaw::new(scenario)?.sample(scenario.hypotheses, rng))
}
