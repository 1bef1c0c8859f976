use std::fmt::Write as _;

use adafilter::adafilter::{adafilter_bh, adafilter_bonferroni, compute_filter_select, curves, default_grid};
use adafilter::baselines::{adjust_pc_pvalues, pc_pvalues};
use adafilter::simlab::{default_procedures, metrics_tsv, parse_scenarios, run_panel, ProcedureSpec};
use adafilter::{Adjustment, DirectProcedureSpec, Method};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::ingest::ingest_csv;

/// What a command produced: the TSV contract and a human-oriented summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub tsv: String,
    pub summary: String,
}

pub const TEST_HEADER: &str = "id\tF\tS\tpc_pvalue\trejected\tuntestable";
pub const CURVE_HEADER: &str = "gamma\tv_hat\tfdp_hat";

fn capped(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_owned(), |v| v.min(1.0).to_string())
}

/// Runs one procedure on the input matrix.
pub fn cmd_test(config: &RunConfig) -> Result<Output, CliError> {
    let method = config.method()?.ok_or(CliError::MissingFlag("method"))?;
    let alpha = config.alpha.ok_or(CliError::MissingFlag("alpha"))?;
    let r = config.level()?;
    let table = ingest_csv(config.input()?)?;
    let stats = compute_filter_select(&table.matrix, r)?;
    let (decision, pc) = match method {
        Method::AdaFilterBonferroni => (adafilter_bonferroni(&stats, alpha)?, None),
        Method::AdaFilterBh => (adafilter_bh(&stats, alpha)?, None),
        Method::DirectBonferroni(combiner) | Method::DirectBh(combiner) => {
            let adjustment = match method {
                Method::DirectBonferroni(_) => Adjustment::Bonferroni,
                _ => Adjustment::Bh,
            };
            let pvalues = pc_pvalues(&table.matrix, r, combiner)?;
            let spec = DirectProcedureSpec {
                combiner,
                adjustment,
                alpha,
            };
            (adjust_pc_pvalues(&pvalues, &spec)?, Some(pvalues))
        }
    };

    let mut tsv = String::from(TEST_HEADER);
    tsv.push('\n');
    for (j, id) in table.ids.iter().enumerate() {
        let pc_value = pc.as_ref().and_then(|p| p[j]);
        let _ = writeln!(
            tsv,
            "{id}\t{}\t{}\t{}\t{}\t{}",
            capped(stats.filter(j)),
            capped(stats.select(j)),
            capped(pc_value),
            u8::from(decision.rejected[j]),
            u8::from(decision.untestable[j]),
        );
    }
    let mut summary = String::new();
    let _ = writeln!(summary, "method\t{}", decision.method);
    let _ = writeln!(summary, "alpha\t{alpha}");
    let _ = writeln!(summary, "gamma0\t{}", decision.gamma0);
    let m = decision.filtered_count.unwrap_or_else(|| match method {
        Method::AdaFilterBh => (0..stats.len())
            .filter(|&j| stats.filter(j).is_some_and(|f| f <= decision.gamma0))
            .count(),
        _ => stats.testable_count(),
    });
    let _ = writeln!(summary, "m\t{m}");
    let _ = writeln!(summary, "rejections\t{}", decision.rejection_count());
    Ok(Output { tsv, summary })
}

/// Runs every scenario in the scenario file and reports the metrics table.
pub fn cmd_simulate(config: &RunConfig) -> Result<Output, CliError> {
    let path = config.scenario.as_ref().ok_or(CliError::MissingFlag("scenario"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let mut scenarios = parse_scenarios(&text)?;
    let procedures = match config.method()? {
        Some(method) => {
            let alpha = config.alpha.ok_or(CliError::MissingFlag("alpha"))?;
            vec![ProcedureSpec::new(method, alpha)]
        }
        None => default_procedures(),
    };
    let threads = config.threads()?;
    let fallback = config.seed.unwrap_or_else(rand::random);
    let mut summary = String::new();
    for (idx, s) in scenarios.iter_mut().enumerate() {
        let seed = match config.seed {
            Some(seed) => seed,
            None => s.master_seed.unwrap_or(fallback),
        };
        s.master_seed = Some(seed);
        let _ = writeln!(summary, "scenario {}\tmaster_seed\t{seed}", idx + 1);
    }
    let reports = scenarios
        .iter()
        .map(|s| run_panel(s, &procedures, threads))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Output {
        tsv: metrics_tsv(&reports),
        summary,
    })
}

/// Evaluates the estimated V and FDP curves on the default breakpoint grid.
pub fn cmd_curve(config: &RunConfig) -> Result<Output, CliError> {
    let r = config.level()?;
    let table = ingest_csv(config.input()?)?;
    let stats = compute_filter_select(&table.matrix, r)?;
    let grid = default_grid(&stats, config.alpha);
    let curve = curves(&stats, &grid);
    let mut tsv = String::from(CURVE_HEADER);
    tsv.push('\n');
    for k in 0..curve.len() {
        let _ = writeln!(tsv, "{}\t{}\t{}", curve.gamma[k], curve.v_hat[k], curve.fdp_hat[k]);
    }
    let mut summary = format!("grid_points\t{}\n", curve.len());
    if let Some(alpha) = config.alpha {
        if stats.testable_count() > 0 {
            let _ = writeln!(
                summary,
                "gamma0_bonferroni\t{}",
                adafilter_bonferroni(&stats, alpha)?.gamma0
            );
            let _ = writeln!(summary, "gamma0_bh\t{}", adafilter_bh(&stats, alpha)?.gamma0);
        }
    }
    Ok(Output { tsv, summary })
}
