//! Simulation scenarios and their key-value file format.
//!
//! A scenario file is a list of `key = value` lines. Keys before the first
//! `[scenario]` header (or under an explicit `[defaults]` header) are shared;
//! each `[scenario]` block starts a new scenario that overrides them. A file
//! without `[scenario]` blocks describes a single scenario. `#` starts a
//! comment.
//!
//! | key                 | meaning                                            | default              |
//! |---------------------|----------------------------------------------------|----------------------|
//! | `M`                 | number of hypotheses                               | required             |
//! | `n`                 | number of studies                                  | required             |
//! | `r`                 | replicability level                                | required             |
//! | `pi0`               | probability of the global-null combination         | required             |
//! | `pi_rn`             | total probability of PC non-null combinations      | `0.01`               |
//! | `rho`               | within-block correlation of z-values               | `0`                  |
//! | `block_size`        | block size `b`, must divide `M`                    | `1`                  |
//! | `power_targets`     | four comma-separated detection powers              | `0.02,0.2,0.5,0.95`  |
//! | `calibration_alpha` | per-test level at which the powers are measured    | `0.05 / M`           |
//! | `replications`      | number of replications `B`                         | required             |
//! | `master_seed`       | 64-bit seed                                        | chosen at run time   |

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const DEFAULT_POWER_TARGETS: [f64; 4] = [0.02, 0.2, 0.5, 0.95];

/// The six `(n, r)` configurations of the reference simulation panel.
pub const DEFAULT_CONFIGURATIONS: [(usize, usize); 6] = [(2, 2), (4, 2), (8, 2), (4, 4), (8, 4), (8, 8)];

/// Largest study count supported (truth vectors are enumerated exhaustively).
pub const MAX_STUDIES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SimScenario {
    pub hypotheses: usize,
    pub studies: usize,
    pub level: usize,
    pub pi0: f64,
    pub pi_rn: f64,
    pub rho: f64,
    pub block_size: usize,
    pub power_targets: [f64; 4],
    /// `None` means `0.05 / hypotheses`.
    pub calibration_alpha: Option<f64>,
    pub replications: usize,
    pub master_seed: Option<u64>,
}

impl SimScenario {
    /// Independent-studies scenario with the reference defaults.
    pub fn new(hypotheses: usize, studies: usize, level: usize, pi0: f64, replications: usize) -> Self {
        Self {
            hypotheses,
            studies,
            level,
            pi0,
            pi_rn: 0.01,
            rho: 0.0,
            block_size: 1,
            power_targets: DEFAULT_POWER_TARGETS,
            calibration_alpha: None,
            replications,
            master_seed: None,
        }
    }

    pub fn with_dependence(mut self, rho: f64, block_size: usize) -> Self {
        self.rho = rho;
        self.block_size = block_size;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = Some(seed);
        self
    }

    pub fn effective_calibration_alpha(&self) -> f64 {
        self.calibration_alpha.unwrap_or(0.05 / self.hypotheses.max(1) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if self.hypotheses == 0 {
            return bad("M must be positive".into());
        }
        if self.studies < 2 || self.studies > MAX_STUDIES {
            return bad(format!("n must lie in 2..={MAX_STUDIES}, got {}", self.studies));
        }
        if self.level < 2 || self.level > self.studies {
            return bad(format!("r must lie in 2..=n, got r={} n={}", self.level, self.studies));
        }
        for (name, v) in [("pi0", self.pi0), ("pi_rn", self.pi_rn)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if self.pi0 + self.pi_rn > 1.0 + 1e-12 {
            return bad(format!("pi0 + pi_rn exceeds 1 ({} + {})", self.pi0, self.pi_rn));
        }
        if !(0.0..1.0).contains(&self.rho) {
            return bad(format!("rho must lie in [0, 1), got {}", self.rho));
        }
        if self.block_size == 0 || !self.hypotheses.is_multiple_of(self.block_size) {
            return bad(format!(
                "block_size {} does not divide M={}",
                self.block_size, self.hypotheses
            ));
        }
        let level = self.effective_calibration_alpha();
        if !(level > 0.0 && level < 1.0) {
            return bad(format!("calibration_alpha must lie in (0, 1), got {level}"));
        }
        for &p in &self.power_targets {
            if !(p > 0.0 && p < 1.0) {
                return bad(format!("power targets must lie in (0, 1), got {p}"));
            }
        }
        if self.replications == 0 {
            return bad("replications must be at least 1".into());
        }
        Ok(())
    }
}

/// The reference panel: six `(n, r)` configurations, `pi0` in {0.8, 0.98},
/// block sizes 100 and 1000 at `rho = 0.5`.
pub fn default_panel(hypotheses: usize, replications: usize, seed: u64) -> Vec<SimScenario> {
    let mut out = Vec::new();
    for &(n, r) in &DEFAULT_CONFIGURATIONS {
        for &pi0 in &[0.8, 0.98] {
            for &b in &[100, 1000] {
                out.push(
                    SimScenario::new(hypotheses, n, r, pi0, replications)
                        .with_dependence(0.5, b)
                        .with_seed(seed),
                );
            }
        }
    }
    out
}

/// Parses a scenario file. Every scenario is validated.
pub fn parse_scenarios(text: &str) -> Result<Vec<SimScenario>> {
    let mut defaults: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut blocks: Vec<BTreeMap<String, (usize, String)>> = Vec::new();
    let mut in_defaults = true;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[defaults]" => {
                if !blocks.is_empty() {
                    return Err(Error::InvalidScenario(format!(
                        "line {lineno}: [defaults] must precede every [scenario]"
                    )));
                }
                in_defaults = true;
                continue;
            }
            "[scenario]" => {
                blocks.push(BTreeMap::new());
                in_defaults = false;
                continue;
            }
            _ => {}
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidScenario(format!("line {lineno}: expected key = value")))?;
        let key = key.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::InvalidScenario(format!("line {lineno}: unknown key '{key}'")));
        }
        let target = if in_defaults {
            &mut defaults
        } else {
            blocks.last_mut().unwrap()
        };
        if target.insert(key.clone(), (lineno, value.trim().to_string())).is_some() {
            return Err(Error::InvalidScenario(format!("line {lineno}: duplicate key '{key}'")));
        }
    }
    if blocks.is_empty() {
        blocks.push(BTreeMap::new());
    }
    blocks
        .into_iter()
        .map(|block| {
            let mut merged = defaults.clone();
            merged.extend(block);
            let s = build(&merged)?;
            s.validate()?;
            Ok(s)
        })
        .collect()
}

const KEYS: [&str; 11] = [
    "M",
    "n",
    "r",
    "pi0",
    "pi_rn",
    "rho",
    "block_size",
    "power_targets",
    "calibration_alpha",
    "replications",
    "master_seed",
];

fn build(map: &BTreeMap<String, (usize, String)>) -> Result<SimScenario> {
    fn field<V: std::str::FromStr>(map: &BTreeMap<String, (usize, String)>, key: &str) -> Result<Option<V>> {
        match map.get(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::InvalidScenario(format!("line {line}: bad value '{v}' for {key}"))),
        }
    }
    let required = |key: &str| Error::InvalidScenario(format!("missing required key '{key}'"));
    let mut s = SimScenario::new(
        field(map, "M")?.ok_or_else(|| required("M"))?,
        field(map, "n")?.ok_or_else(|| required("n"))?,
        field(map, "r")?.ok_or_else(|| required("r"))?,
        field(map, "pi0")?.ok_or_else(|| required("pi0"))?,
        field(map, "replications")?.ok_or_else(|| required("replications"))?,
    );
    if let Some(v) = field(map, "pi_rn")? {
        s.pi_rn = v;
    }
    if let Some(v) = field(map, "rho")? {
        s.rho = v;
    }
    if let Some(v) = field(map, "block_size")? {
        s.block_size = v;
    }
    s.calibration_alpha = field(map, "calibration_alpha")?;
    s.master_seed = field(map, "master_seed")?;
    if let Some((line, v)) = map.get("power_targets") {
        let parsed: std::result::Result<Vec<f64>, _> = v.split(',').map(|t| t.trim().parse::<f64>()).collect();
        match parsed.ok().and_then(|p| <[f64; 4]>::try_from(p).ok()) {
            Some(p) => s.power_targets = p,
            None => {
                return Err(Error::InvalidScenario(format!(
                    "line {line}: power_targets needs four comma-separated numbers"
                )))
            }
        }
    }
    Ok(s)
}

/// Writes scenarios back in the file format, one `[scenario]` block each.
pub fn format_scenarios(scenarios: &[SimScenario]) -> String {
    let mut out = String::new();
    for s in scenarios {
        let _ = writeln!(out, "[scenario]");
        let _ = writeln!(out, "M = {}", s.hypotheses);
        let _ = writeln!(out, "n = {}", s.studies);
        let _ = writeln!(out, "r = {}", s.level);
        let _ = writeln!(out, "pi0 = {}", s.pi0);
        let _ = writeln!(out, "pi_rn = {}", s.pi_rn);
        let _ = writeln!(out, "rho = {}", s.rho);
        let _ = writeln!(out, "block_size = {}", s.block_size);
        let p = s.power_targets;
        let _ = writeln!(out, "power_targets = {},{},{},{}", p[0], p[1], p[2], p[3]);
        if let Some(a) = s.calibration_alpha {
            let _ = writeln!(out, "calibration_alpha = {a}");
        }
        let _ = writeln!(out, "replications = {}", s.replications);
        if let Some(seed) = s.master_seed {
            let _ = writeln!(out, "master_seed = {seed}");
        }
        out.push('\n');
    }
    out
}
