use std::f64::consts::{FRAC_PI_2, SQRT_2};

use itertools::Itertools;
use rand::Rng;

use super::{scalar_case, trial_rng, CampaignConfig, Tally, WorstCase};
use crate::error::Result;
use crate::inequalities::{
    prior_bound, profile, KindRule, LadderSpec, MonogamyReport, Pattern, PriorFamily, Profile, Split,
};
use crate::measures::{concurrence_pure, concurrence_two_qubit, eof_f, tsallis_g, MeasureKind};
use crate::qstate::{haar_random_pure, reduce_pure, trial_seed, Bipartition, PureState};

/// Margins added to the state-adapted `k` values.
const K_MARGINS: [f64; 2] = [0.0, 0.05];

/// Orders of `1..n` checked for a focus of qubit 0: all of them when there
/// are at most 24, otherwise just the natural one.
pub(super) fn orders(n: usize) -> Vec<Vec<usize>> {
    if n <= 5 {
        (1..n).permutations(n - 1).collect()
    } else {
        vec![(1..n).collect()]
    }
}

fn trial_state(cfg: &CampaignConfig, trial: u64) -> Result<PureState> {
    haar_random_pure(cfg.n_qubits, trial_seed(cfg.seed, trial))
}

fn amplitudes(psi: &PureState) -> Vec<[f64; 2]> {
    psi.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

fn report_case(psi: &PureState, r: &MonogamyReport) -> WorstCase {
    WorstCase {
        trial: 0,
        slack: 0.0,
        detail: format!("{} {:?} pattern {:?}", r.kind.label(), r.direction, r.pattern),
        amplitudes: amplitudes(psi),
        kind: Some(r.kind),
        order: r.order.clone(),
        k: Some(r.k),
        beta: Some(r.beta),
    }
}

/// The fixed grid plus the smallest `k` making the first and every
/// dominance condition hold, each with a few margins.
pub(super) fn k_values(prof: &Profile, rule: &KindRule, grid: &[f64]) -> Vec<f64> {
    let e = rule.condition_exponent;
    let ratios: Vec<f64> = prof.tails.iter().zip(&prof.values).map(|(t, v)| t.powf(e) / v.powf(e)).collect();
    let mut ks = grid.to_vec();
    let max = ratios.iter().copied().fold(f64::NAN, f64::max);
    for r in [ratios.first().copied().unwrap_or(f64::NAN), max] {
        if !r.is_finite() {
            continue;
        }
        for margin in K_MARGINS {
            let k = (r + margin).min(1.0);
            if k > 0.0 {
                ks.push(k);
            }
        }
    }
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    ks
}

fn spec(rule: &KindRule, k: f64, beta: f64) -> Result<LadderSpec> {
    LadderSpec::new(k, beta, rule.power, Split::Auto, rule.direction)
}

pub(super) fn ckw_trial(cfg: &CampaignConfig, trial: u64) -> Result<Tally> {
    let psi = trial_state(cfg, trial)?;
    let lhs = concurrence_pure(&psi, &Bipartition::single(0))?.powi(2);
    let mut sum = 0.0;
    for b in 1..cfg.n_qubits {
        sum += concurrence_two_qubit(&reduce_pure(&psi, &Bipartition::new(vec![0, b]))?)?.powi(2);
    }
    let mut tally = Tally::default();
    tally.record(trial, lhs - sum, cfg.tolerance, || WorstCase {
        detail: format!("C^2(A|rest)={lhs:?} sum C^2(AB_i)={sum:?}"),
        amplitudes: amplitudes(&psi),
        order: (1..cfg.n_qubits).collect(),
        ..scalar_case(String::new())
    });
    Ok(tally)
}

pub(super) fn ladder_trial(cfg: &CampaignConfig, kinds: &[MeasureKind], trial: u64) -> Result<Tally> {
    let psi = trial_state(cfg, trial)?;
    let mut tally = Tally::default();
    for order in orders(cfg.n_qubits) {
        for &kind in kinds {
            let prof = profile(&psi, 0, &order, kind)?;
            let rule = prof.rule()?;
            let ks = k_values(&prof, &rule, &cfg.k_grid);
            for &beta in &cfg.beta_grid {
                for &k in &ks {
                    let r = prof.report(&spec(&rule, k, beta)?)?;
                    if r.applicable {
                        tally.record(trial, r.slack, cfg.tolerance, || report_case(&psi, &r));
                    } else {
                        tally.skip();
                    }
                }
            }
        }
    }
    Ok(tally)
}

/// Applicable rows of one `(order, kind, β)` slice, checked for
/// `ours ≥ 2^p-1 ladder ≥ p ladder ≥ plain sum`, equality at `k = 1` and
/// monotonicity in `k` within a pattern.
pub(super) fn hierarchy_trial(cfg: &CampaignConfig, kinds: &[MeasureKind], trial: u64) -> Result<Tally> {
    let psi = trial_state(cfg, trial)?;
    let mut tally = Tally::default();
    for order in orders(cfg.n_qubits) {
        for &kind in kinds {
            let prof = profile(&psi, 0, &order, kind)?;
            let rule = prof.rule()?;
            let ks = k_values(&prof, &rule, &cfg.k_grid);
            for &beta in &cfg.beta_grid {
                if rule.check_beta(beta).is_err() || rule.power.exponent(beta) <= 1.0 + 1e-12 {
                    continue;
                }
                let mut rows: Vec<(MonogamyReport, Pattern, f64)> = Vec::new();
                for &k in &ks {
                    let r = prof.report(&spec(&rule, k, beta)?)?;
                    let Some(pattern) = r.pattern else {
                        tally.skip();
                        continue;
                    };
                    let bound = |family| prior_bound(&prof.values, beta, rule.power, family, pattern);
                    let two = bound(PriorFamily::PowerTwoLadder)?;
                    let half = bound(PriorFamily::HalfBetaLadder)?;
                    let plain = bound(PriorFamily::PlainSum)?;
                    let scale = r.rhs.abs().max(1.0);
                    let mut slack = (r.rhs - two).min(two - half).min(half - plain) / scale;
                    if k == 1.0 {
                        slack = slack.min((two - r.rhs) / scale);
                    }
                    rows.push((r, pattern, slack));
                }
                // ks ascending: a larger k must not give a larger bound
                for i in 0..rows.len() {
                    let mut slack = rows[i].2;
                    if let Some(prev) = rows[..i].iter().rev().find(|p| p.1 == rows[i].1) {
                        slack = slack.min((prev.0.rhs - rows[i].0.rhs) / prev.0.rhs.abs().max(1.0));
                    }
                    let r = &rows[i].0;
                    tally.record(trial, slack, cfg.tolerance, || report_case(&psi, r));
                }
            }
        }
    }
    Ok(tally)
}

fn record_scalar_checks(tally: &mut Tally, trial: u64, x: f64, y: f64, tol: f64) -> Result<()> {
    let s = (x * x + y * y).min(1.0);
    let f2 = |v: f64| -> Result<f64> { Ok(eof_f(v)?.powf(SQRT_2)) };
    let case = |name: &str| {
        let detail = format!("{name} x={x:?} y={y:?}");
        move || scalar_case(detail)
    };
    tally.record(trial, f2(s)? - f2(x * x)? - f2(y * y)?, tol, case("f^sqrt2 superadditivity"));
    for q in [2.0, 2.5, 3.0] {
        let g = |v| tsallis_g(q, v);
        tally.record(trial, g(s)? - g(x * x)? - g(y * y)?, tol, case(&format!("g_{q} superadditivity")));
    }
    for q in [1.5, 3.5] {
        let g = |v| tsallis_g(q, v);
        tally.record(trial, g(x)? + g(y)? - g(s.sqrt())?, tol, case(&format!("g_{q} subadditivity")));
    }
    Ok(())
}

/// Random points of the quarter disc `x, y ≥ 0, x² + y² ≤ 1`.
pub(super) fn superadditivity_trial(cfg: &CampaignConfig, trial: u64) -> Result<Tally> {
    let mut rng = trial_rng(cfg, trial);
    let radius = rng.random::<f64>().sqrt();
    let angle = rng.random::<f64>() * FRAC_PI_2;
    let mut tally = Tally::default();
    record_scalar_checks(&mut tally, trial, radius * angle.cos(), radius * angle.sin(), cfg.tolerance)?;
    Ok(tally)
}

/// The step-0.01 grid over the quarter disc.
pub(super) fn superadditivity_grid(cfg: &CampaignConfig) -> Result<Tally> {
    let mut tally = Tally::default();
    for i in 0..=100u64 {
        for j in 0..=100u64 {
            let (x, y) = (i as f64 / 100.0, j as f64 / 100.0);
            if x * x + y * y <= 1.0 + 1e-12 {
                record_scalar_checks(&mut tally, cfg.trials + i * 101 + j, x, y, cfg.tolerance)?;
            }
        }
    }
    Ok(tally)
}
