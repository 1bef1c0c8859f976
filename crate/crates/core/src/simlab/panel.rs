use std::fmt::Write as _;

use rayon::prelude::*;

use crate::adafilter::{adafilter_bh, adafilter_bonferroni, compute_filter_select};
use crate::baselines::{adjust_pc_pvalues, pc_pvalues, Adjustment, DirectProcedureSpec};
use crate::decision::{DecisionResult, Method};
use crate::error::{Error, Result};
use crate::pc::PcCombiner;
use crate::simlab::rng::{stream, TRUTH_STREAM};
use crate::simlab::sampler::{sample_pvalues, signal_levels};
use crate::simlab::scenario::SimScenario;
use crate::simlab::truth::{TruthAssignment, TruthLaw};

/// A procedure together with its nominal level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcedureSpec {
    pub method: Method,
    pub alpha: f64,
}

impl ProcedureSpec {
    pub fn new(method: Method, alpha: f64) -> Self {
        Self { method, alpha }
    }
}

/// PFER-targeting procedures at `alpha = 1` and FDR-targeting ones at `alpha = 0.2`.
pub fn default_procedures() -> Vec<ProcedureSpec> {
    let mut out = Vec::with_capacity(8);
    for c in [PcCombiner::Bonferroni, PcCombiner::Fisher, PcCombiner::Simes] {
        out.push(ProcedureSpec::new(Method::DirectBonferroni(c), 1.0));
    }
    out.push(ProcedureSpec::new(Method::AdaFilterBonferroni, 1.0));
    for c in [PcCombiner::Bonferroni, PcCombiner::Fisher, PcCombiner::Simes] {
        out.push(ProcedureSpec::new(Method::DirectBh(c), 0.2));
    }
    out.push(ProcedureSpec::new(Method::AdaFilterBh, 0.2));
    out
}

/// Sample mean with a normal-approximation 95% interval (absent when `B < 2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub ci95: Option<(f64, f64)>,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let b = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / b;
        let ci95 = (xs.len() >= 2).then(|| {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (b - 1.0);
            let half = 1.96 * (var / b).sqrt();
            (mean - half, mean + half)
        });
        Self { mean, ci95 }
    }

    pub fn half_width(&self) -> Option<f64> {
        self.ci95.map(|(lo, hi)| 0.5 * (hi - lo))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProcedureMetrics {
    pub procedure: ProcedureSpec,
    /// Mean number of false rejections.
    pub pfer: Estimate,
    /// Mean of `V / max(R, 1)`.
    pub fdr: Estimate,
    /// Mean of `TP / max(#non-null PC, 1)`.
    pub recall: Estimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub scenario: SimScenario,
    pub master_seed: u64,
    pub replications: usize,
    pub rows: Vec<ProcedureMetrics>,
}

impl MetricsReport {
    pub fn get(&self, method: Method) -> Option<&ProcedureMetrics> {
        self.rows.iter().find(|r| r.procedure.method == method)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Counts {
    false_rejections: usize,
    rejections: usize,
    true_rejections: usize,
}

/// Runs every procedure on the same simulated data for each replication and
/// summarises the error rates and recall.
///
/// Replications run on `threads` workers (the global pool when `None`); the
/// report is identical for any worker count.
pub fn run_panel(
    scenario: &SimScenario,
    procedures: &[ProcedureSpec],
    threads: Option<usize>,
) -> Result<MetricsReport> {
    scenario.validate()?;
    let seed = scenario
        .master_seed
        .ok_or_else(|| Error::InvalidScenario("master_seed is not set".into()))?;
    if procedures.is_empty() {
        return Err(Error::InvalidScenario("no procedures requested".into()));
    }
    let law = TruthLaw::new(scenario)?;
    let signal = signal_levels(scenario)?;
    let run = || -> Result<Vec<(Vec<Counts>, usize)>> {
        (0..scenario.replications as u64)
            .into_par_iter()
            .map(|b| replicate(scenario, &law, &signal, procedures, seed, b))
            .collect()
    };
    let per_rep = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidScenario(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let rows = procedures
        .iter()
        .enumerate()
        .map(|(k, &procedure)| {
            let mut pfer = Vec::with_capacity(per_rep.len());
            let mut fdp = Vec::with_capacity(per_rep.len());
            let mut recall = Vec::with_capacity(per_rep.len());
            for (counts, nonnull) in &per_rep {
                let c = counts[k];
                pfer.push(c.false_rejections as f64);
                fdp.push(c.false_rejections as f64 / c.rejections.max(1) as f64);
                recall.push(c.true_rejections as f64 / (*nonnull).max(1) as f64);
            }
            ProcedureMetrics {
                procedure,
                pfer: Estimate::from_samples(&pfer),
                fdr: Estimate::from_samples(&fdp),
                recall: Estimate::from_samples(&recall),
            }
        })
        .collect();
    Ok(MetricsReport {
        scenario: scenario.clone(),
        master_seed: seed,
        replications: scenario.replications,
        rows,
    })
}

fn replicate(
    scenario: &SimScenario,
    law: &TruthLaw,
    signal: &[f64; 4],
    procedures: &[ProcedureSpec],
    seed: u64,
    replication: u64,
) -> Result<(Vec<Counts>, usize)> {
    let truth = law.sample(scenario.hypotheses, &mut stream(seed, replication, TRUTH_STREAM));
    let matrix = sample_pvalues(&truth, scenario, signal, seed, replication)?;
    let r = scenario.level;
    let stats = compute_filter_select(&matrix, r)?;
    let mut pc_cache: Vec<(PcCombiner, Vec<Option<f64>>)> = Vec::new();
    let mut out = Vec::with_capacity(procedures.len());
    for p in procedures {
        let decision = match p.method {
            Method::AdaFilterBonferroni => adafilter_bonferroni(&stats, p.alpha)?,
            Method::AdaFilterBh => adafilter_bh(&stats, p.alpha)?,
            Method::DirectBonferroni(c) | Method::DirectBh(c) => {
                let adjustment = match p.method {
                    Method::DirectBh(_) => Adjustment::Bh,
                    _ => Adjustment::Bonferroni,
                };
                let idx = match pc_cache.iter().position(|(k, _)| *k == c) {
                    Some(i) => i,
                    None => {
                        pc_cache.push((c, pc_pvalues(&matrix, r, c)?));
                        pc_cache.len() - 1
                    }
                };
                let spec = DirectProcedureSpec {
                    combiner: c,
                    adjustment,
                    alpha: p.alpha,
                };
                adjust_pc_pvalues(&pc_cache[idx].1, &spec)?
            }
        };
        out.push(tally(&decision, &truth));
    }
    let nonnull = (0..truth.len()).filter(|&j| truth.pc_nonnull(j)).count();
    Ok((out, nonnull))
}

fn tally(decision: &DecisionResult<f64>, truth: &TruthAssignment) -> Counts {
    let mut c = Counts::default();
    for j in decision.rejected_indices() {
        c.rejections += 1;
        if truth.pc_nonnull(j) {
            c.true_rejections += 1;
        } else {
            c.false_rejections += 1;
        }
    }
    c
}

pub const METRICS_HEADER: &str = "scenario\tM\tn\tr\tpi0\tpi_rn\trho\tblock_size\tB\tmaster_seed\tmethod\talpha\t\
pfer_mean\tpfer_ci_low\tpfer_ci_high\tfdr_mean\tfdr_ci_low\tfdr_ci_high\trecall_mean\trecall_ci_low\trecall_ci_high";

/// TSV with one row per (scenario, procedure). Missing intervals are `NA`.
pub fn metrics_tsv(reports: &[MetricsReport]) -> String {
    let mut out = String::new();
    out.push_str(METRICS_HEADER);
    out.push('\n');
    for (idx, report) in reports.iter().enumerate() {
        let s = &report.scenario;
        for row in &report.rows {
            let _ = write!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                idx + 1,
                s.hypotheses,
                s.studies,
                s.level,
                s.pi0,
                s.pi_rn,
                s.rho,
                s.block_size,
                report.replications,
                report.master_seed,
                row.procedure.method,
                row.procedure.alpha
            );
            for e in [row.pfer, row.fdr, row.recall] {
                match e.ci95 {
                    Some((lo, hi)) => {
                        let _ = write!(out, "\t{}\t{}\t{}", e.mean, lo, hi);
                    }
                    None => {
                        let _ = write!(out, "\t{}\tNA\tNA", e.mean);
                    }
                }
            }
            out.push('\n');
        }
    }
    out
}
