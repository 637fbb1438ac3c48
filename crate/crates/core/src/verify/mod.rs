//! Seeded verification campaigns over random states and parameter grids,
//! plus the deterministic tables behind the worked examples.
//!
//! Every trial draws its randomness from `trial_seed(seed, trial)`, so a
//! campaign gives identical results however rayon schedules it.

mod cases;
mod tables;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::KindRule;
use crate::measures::MeasureKind;
use crate::qstate::trial_seed;

pub use tables::{
    figure_rows, figure_spec, find_applicable_order, tightness_table, FigureRow, FigureSpec, TightnessRow,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemma1,
    Ckw,
    Lemma2,
    LadderConcurrence,
    LadderEof,
    LadderNegativity,
    LadderTsallis,
    LadderRenyi,
    PolygamyCoa,
    PolygamyNegativity,
    PolygamyEof,
    PolygamyTsallis,
    PolygamyRenyi,
    Superadditivity,
    Hierarchy,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Lemma1,
        Suite::Ckw,
        Suite::Lemma2,
        Suite::LadderConcurrence,
        Suite::LadderEof,
        Suite::LadderNegativity,
        Suite::LadderTsallis,
        Suite::LadderRenyi,
        Suite::PolygamyCoa,
        Suite::PolygamyNegativity,
        Suite::PolygamyEof,
        Suite::PolygamyTsallis,
        Suite::PolygamyRenyi,
        Suite::Superadditivity,
        Suite::Hierarchy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Ckw => "ckw",
            Suite::Lemma2 => "lemma2",
            Suite::LadderConcurrence => "ladder-concurrence",
            Suite::LadderEof => "ladder-eof",
            Suite::LadderNegativity => "ladder-negativity",
            Suite::LadderTsallis => "ladder-tsallis",
            Suite::LadderRenyi => "ladder-renyi",
            Suite::PolygamyCoa => "polygamy-coa",
            Suite::PolygamyNegativity => "polygamy-negativity",
            Suite::PolygamyEof => "polygamy-eof",
            Suite::PolygamyTsallis => "polygamy-tsallis",
            Suite::PolygamyRenyi => "polygamy-renyi",
            Suite::Superadditivity => "superadditivity",
            Suite::Hierarchy => "hierarchy",
        }
    }

    /// Measure kinds a state-based suite evaluates. `param` overrides the
    /// default Tsallis `q` / Rényi `α`.
    pub fn kinds(self, param: Option<f64>) -> Vec<MeasureKind> {
        use MeasureKind::*;
        match self {
            Suite::Lemma2 | Suite::LadderConcurrence => vec![Concurrence],
            Suite::LadderEof => vec![EoF],
            Suite::LadderNegativity => vec![Cren],
            Suite::LadderTsallis => vec![Tsallis(param.unwrap_or(2.0))],
            Suite::LadderRenyi => vec![Renyi(param.unwrap_or(2.0))],
            Suite::PolygamyCoa => vec![ConcurrenceAssist],
            Suite::PolygamyNegativity => vec![CrenAssist],
            Suite::PolygamyEof => vec![EoFAssist],
            Suite::PolygamyTsallis => vec![TsallisAssist(param.unwrap_or(1.5))],
            Suite::PolygamyRenyi => match param {
                Some(a) => vec![RenyiAssist(a)],
                None => {
                    let (lo, hi) = crate::measures::REOA_ALPHA;
                    [lo, 1.0 - 1e-3, 1.0 + 1e-3, hi].into_iter().map(RenyiAssist).collect()
                }
            },
            Suite::Hierarchy => vec![Concurrence, EoF, Cren, Tsallis(2.0), Renyi(2.0)],
            Suite::Lemma1 | Suite::Ckw | Suite::Superadditivity => Vec::new(),
        }
    }

    fn default_betas(self) -> Vec<f64> {
        match self {
            Suite::Lemma2 | Suite::LadderConcurrence | Suite::LadderNegativity => vec![2.0, 2.5, 3.0, 4.0],
            Suite::LadderEof => vec![std::f64::consts::SQRT_2, 2.0, 3.0],
            Suite::LadderTsallis | Suite::LadderRenyi => vec![1.0, 2.0, 3.0],
            Suite::PolygamyCoa | Suite::PolygamyNegativity => vec![0.5, 1.0, 1.5, 2.0],
            Suite::PolygamyEof | Suite::PolygamyTsallis | Suite::PolygamyRenyi => vec![0.25, 0.5, 0.75, 1.0],
            Suite::Hierarchy => vec![2.5, 3.0, 4.0],
            Suite::Lemma1 | Suite::Ckw | Suite::Superadditivity => vec![1.0],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub suite: Suite,
    pub trials: u64,
    pub seed: u64,
    /// Register size for state-based suites, `3..=6`.
    pub n_qubits: usize,
    /// Ignored by `lemma1`, `ckw` and `superadditivity`.
    pub beta_grid: Vec<f64>,
    /// Fixed `k` values; ladder suites add state-adapted values on top.
    pub k_grid: Vec<f64>,
    pub q_or_alpha: Option<f64>,
    /// Allowed violation margin; relative for `lemma1`, absolute elsewhere.
    pub tolerance: f64,
}

impl CampaignConfig {
    pub fn new(suite: Suite, trials: u64, seed: u64) -> Self {
        let (k_grid, tolerance) = match suite {
            Suite::Lemma1 => (vec![1.0], 1e-12),
            Suite::Hierarchy => (vec![0.2, 0.6, 1.0], 1e-12),
            _ => (vec![0.3, 0.6, 0.9, 1.0], 1e-9),
        };
        Self { suite, trials, seed, n_qubits: 3, beta_grid: suite.default_betas(), k_grid, q_or_alpha: None, tolerance }
    }

    pub fn with_qubits(mut self, n: usize) -> Self {
        self.n_qubits = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if !(3..=6).contains(&self.n_qubits) {
            return Err(Error::invalid(format!("n_qubits must lie in [3, 6], got {}", self.n_qubits)));
        }
        if self.suite == Suite::Lemma2 && self.n_qubits != 3 {
            return Err(Error::invalid("lemma2 is a three-qubit suite"));
        }
        if self.beta_grid.is_empty() || self.k_grid.is_empty() {
            return Err(Error::invalid("beta and k grids must be non-empty"));
        }
        if let Some(b) = self.beta_grid.iter().find(|b| !(b.is_finite() && **b >= 0.0)) {
            return Err(Error::invalid(format!("beta values must be non-negative, got {b}")));
        }
        if let Some(k) = self.k_grid.iter().find(|k| !(**k > 0.0 && **k <= 1.0)) {
            return Err(Error::invalid(format!("k values must lie in (0, 1], got {k}")));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(Error::invalid(format!("tolerance must be non-negative, got {}", self.tolerance)));
        }
        Ok(())
    }
}

/// The smallest-slack case of a campaign, stored in full precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub trial: u64,
    pub slack: f64,
    pub detail: String,
    /// `[re, im]` per basis amplitude; empty for scalar suites.
    pub amplitudes: Vec<[f64; 2]>,
    pub kind: Option<MeasureKind>,
    pub order: Vec<usize>,
    pub k: Option<f64>,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub config: CampaignConfig,
    pub checked: u64,
    pub applicable: u64,
    pub violations: u64,
    /// Smallest slack over applicable cases.
    pub worst_slack: Option<f64>,
    pub worst_case: Option<WorstCase>,
}

impl CampaignResult {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.applicable > 0
    }

    /// One-line human-readable summary.
    pub fn summary(&self) -> String {
        let worst = self.worst_slack.map_or("n/a".to_string(), |s| format!("{s:e}"));
        format!(
            "{} {}: n={} trials={} seed={} checked={} applicable={} violations={} worst_slack={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.config.suite,
            self.config.n_qubits,
            self.config.trials,
            self.config.seed,
            self.checked,
            self.applicable,
            self.violations,
            worst
        )
    }
}

/// Running counts for a slice of trials. Merging is associative, so
/// parallel reduction order does not affect the result.
#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    applicable: u64,
    violations: u64,
    worst: Option<WorstCase>,
}

impl Tally {
    fn skip(&mut self) {
        self.checked += 1;
    }

    /// Records an applicable case; `make` runs only when it is the new worst.
    fn record(&mut self, trial: u64, slack: f64, tolerance: f64, make: impl FnOnce() -> WorstCase) {
        self.checked += 1;
        self.applicable += 1;
        let slack = if slack.is_nan() { f64::NEG_INFINITY } else { slack };
        if slack < -tolerance {
            self.violations += 1;
        }
        if self.worst.as_ref().is_none_or(|w| slack < w.slack) {
            let mut w = make();
            w.trial = trial;
            w.slack = slack;
            self.worst = Some(w);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.applicable += other.applicable;
        self.violations += other.violations;
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => {
                let a_first = (a.slack, a.trial) <= (b.slack, b.trial);
                Some(if a_first { a } else { b })
            }
            (a, b) => a.or(b),
        };
        self
    }
}

fn scalar_case(detail: String) -> WorstCase {
    WorstCase {
        trial: 0,
        slack: 0.0,
        detail,
        amplitudes: Vec::new(),
        kind: None,
        order: Vec::new(),
        k: None,
        beta: None,
    }
}

fn trial_rng(cfg: &CampaignConfig, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, trial))
}

/// `(0, 1]`
fn unit_open_closed(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

fn lemma1_trial(cfg: &CampaignConfig, trial: u64) -> Result<Tally> {
    let mut rng = trial_rng(cfg, trial);
    let mut tally = Tally::default();
    let k = unit_open_closed(&mut rng);
    let t = k * rng.random::<f64>();
    let m = rng.random_range(1.0..=10.0);
    let (l, r) = crate::inequalities::lemma1_lower(t, k, m)?;
    tally.record(trial, (l - r) / r, cfg.tolerance, || scalar_case(format!("lower t={t:?} k={k:?} m={m:?}")));

    let k = unit_open_closed(&mut rng);
    let t = k * rng.random::<f64>();
    let n = rng.random::<f64>();
    let (l, r) = crate::inequalities::lemma1_upper(t, k, n)?;
    tally.record(trial, (r - l) / r, cfg.tolerance, || scalar_case(format!("upper t={t:?} k={k:?} n={n:?}")));
    Ok(tally)
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignResult> {
    cfg.validate()?;
    let kinds = cfg.suite.kinds(cfg.q_or_alpha);
    for kind in &kinds {
        let rule = KindRule::for_kind(*kind)?;
        if cfg.suite != Suite::Hierarchy {
            for &beta in &cfg.beta_grid {
                rule.check_beta(beta)?;
            }
        }
    }
    let mut tally = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Tally> {
            match cfg.suite {
                Suite::Lemma1 => lemma1_trial(cfg, trial),
                Suite::Superadditivity => cases::superadditivity_trial(cfg, trial),
                Suite::Ckw => cases::ckw_trial(cfg, trial),
                Suite::Hierarchy => cases::hierarchy_trial(cfg, &kinds, trial),
                _ => cases::ladder_trial(cfg, &kinds, trial),
            }
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    if cfg.suite == Suite::Superadditivity {
        tally = tally.merge(cases::superadditivity_grid(cfg)?);
    }
    Ok(CampaignResult {
        config: cfg.clone(),
        checked: tally.checked,
        applicable: tally.applicable,
        violations: tally.violations,
        worst_slack: tally.worst.as_ref().map(|w| w.slack),
        worst_case: tally.worst,
    })
}
