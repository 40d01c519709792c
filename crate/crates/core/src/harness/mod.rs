//! Verification harness: seeded trials, per-suite checks and reports.
//!
//! Each suite is a list of case groups. A group turns a trial RNG into a
//! [`TrialInputs`] record, and the suite evaluates records into
//! [`BoundReport`]s. Replay re-runs the evaluation on a stored record.

pub mod ensemble;
pub mod report;
mod suites;

use std::ops::RangeInclusive;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;

pub use ensemble::{generate, trial_rng, trial_seed, EnsembleKind, EnsembleSpec, TrialRng};
pub use report::{emit, parse_reports, BoundEntry, BoundReport, MatrixJson, OutputFormat, TrialInputs, Verdict};

use crate::error::{Error, Result};

/// Environment variable fixing the worker count; `0` or unset means automatic.
pub const THREADS_ENV: &str = "RADIUS_BOUNDS_THREADS";

pub const SUITES: [&str; 7] = [
    "numrad-chain",
    "spectral",
    "poly",
    "berezin",
    "oracle-selftest",
    "kronecker",
    "operator-corollaries",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub trials: usize,
    pub master_seed: u64,
    pub slack_rel: f64,
    /// Overrides the dimensions a suite draws from.
    pub dims: Option<Vec<usize>>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            master_seed: 0,
            slack_rel: 1e-8,
            dims: None,
            format: OutputFormat::Human,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::BadSpec("trials must be at least 1".into()));
        }
        if !(self.slack_rel.is_finite() && self.slack_rel >= 0.0) {
            return Err(Error::BadSpec(format!(
                "slack must be a finite nonnegative number, got {}",
                self.slack_rel
            )));
        }
        if let Some(dims) = &self.dims {
            if dims.is_empty() {
                return Err(Error::BadSpec("dimension list is empty".into()));
            }
            if let Some(d) = dims.iter().find(|d| !(1..=ensemble::MAX_DIM).contains(*d)) {
                return Err(Error::BadSpec(format!("dimension {d} outside [1, {}]", ensemble::MAX_DIM)));
            }
        }
        Ok(())
    }

    /// A dimension from the override list, or uniformly from `default`.
    /// Overrides below `default.start()` are raised to it.
    pub(crate) fn pick_dim(&self, rng: &mut TrialRng, default: RangeInclusive<usize>) -> usize {
        match &self.dims {
            Some(d) => d[rng.random_range(0..d.len())].max(*default.start()),
            None => rng.random_range(default),
        }
    }

    /// `trials / divisor`, at least one.
    pub(crate) fn share(&self, divisor: usize) -> usize {
        (self.trials / divisor).max(1)
    }
}

type MakeFn = fn(&mut TrialRng, usize, &RunConfig) -> Result<TrialInputs>;

/// `count` trials of one case family.
pub(crate) struct Group {
    pub kind: &'static str,
    pub count: usize,
    pub make: MakeFn,
}

impl Group {
    pub fn new(kind: &'static str, count: usize, make: MakeFn) -> Self {
        Self { kind, count, make }
    }
}

fn groups(suite: &str, cfg: &RunConfig) -> Result<Vec<Group>> {
    Ok(match suite {
        "numrad-chain" => suites::numrad_chain::groups(cfg),
        "spectral" => suites::spectral::groups(cfg),
        "poly" => suites::poly::groups(cfg),
        "berezin" => suites::berezin::groups(cfg),
        "oracle-selftest" => suites::selftest::groups(cfg),
        "kronecker" => suites::kronecker::groups(cfg),
        "operator-corollaries" => suites::corollaries::groups(cfg),
        _ => return Err(Error::UnknownSuite(suite.to_string())),
    })
}

/// Checks one stored trial and builds its report.
pub fn evaluate(inputs: &TrialInputs, slack_rel: f64) -> Result<BoundReport> {
    match inputs.suite.as_str() {
        "numrad-chain" => suites::numrad_chain::evaluate(inputs, slack_rel),
        "spectral" => suites::spectral::evaluate(inputs, slack_rel),
        "poly" => suites::poly::evaluate(inputs, slack_rel),
        "berezin" => suites::berezin::evaluate(inputs, slack_rel),
        "oracle-selftest" => suites::selftest::evaluate(inputs, slack_rel),
        "kronecker" => suites::kronecker::evaluate(inputs, slack_rel),
        "operator-corollaries" => suites::corollaries::evaluate(inputs, slack_rel),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

pub(crate) fn unknown_kind(inputs: &TrialInputs) -> Error {
    Error::BadSpec(format!("suite {} has no case kind `{}`", inputs.suite, inputs.kind))
}

/// Worker count from [`THREADS_ENV`]; `0` means automatic.
pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::BadSpec(format!("{THREADS_ENV} must be a nonnegative integer, got `{v}`"))),
        _ => Ok(0),
    }
}

/// Runs every trial of `suite` with the worker count from [`THREADS_ENV`].
pub fn run_suite(suite: &str, cfg: &RunConfig) -> Result<Vec<BoundReport>> {
    run_suite_on(suite, cfg, threads_from_env()?)
}

/// Runs every trial of `suite` on `threads` workers. Reports come back in
/// trial order whatever the scheduling, and trial `i` draws from
/// `trial_rng(master_seed, i)`.
pub fn run_suite_on(suite: &str, cfg: &RunConfig, threads: usize) -> Result<Vec<BoundReport>> {
    cfg.validate()?;
    let groups = groups(suite, cfg)?;
    let mut jobs = Vec::new();
    for g in &groups {
        for local in 0..g.count {
            jobs.push((g, local));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(index, (g, local))| {
                let mut rng = trial_rng(cfg.master_seed, index as u64);
                let mut inputs = (g.make)(&mut rng, *local, cfg)?;
                inputs.suite = suite.to_string();
                inputs.kind = g.kind.to_string();
                inputs.case_id = format!("{suite}/{}/{local}", g.kind);
                evaluate(&inputs, cfg.slack_rel).map_err(|e| Error::InTrial {
                    case_id: inputs.case_id.clone(),
                    source: Box::new(e),
                })
            })
            .collect()
    })
}

pub fn total_violations(reports: &[BoundReport]) -> usize {
    reports.iter().map(BoundReport::violations).sum()
}

/// Re-evaluates the trials stored in a file.
///
/// Accepts report JSON as written by `verify --format json` (only reports
/// carrying inputs are replayed), a single [`TrialInputs`] object, or an
/// array of them.
pub fn replay(path: &Path, slack_override: Option<f64>) -> Result<Vec<BoundReport>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    let mut cases = Vec::new();
    for item in items {
        if item.get("bounds").is_some() {
            let r: BoundReport = serde_json::from_value(item)?;
            if let Some(inputs) = r.inputs {
                cases.push((inputs, r.slack_used));
            }
        } else {
            let inputs: TrialInputs = serde_json::from_value(item)?;
            cases.push((inputs, RunConfig::default().slack_rel));
        }
    }
    cases
        .iter()
        .map(|(inputs, slack)| evaluate(inputs, slack_override.unwrap_or(*slack)))
        .collect()
}
