use std::f64::consts::SQRT_2;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::{prior_bound, profile, KindRule, LadderSpec, MonogamyReport, Pattern, PriorFamily, Split};
use crate::measures::MeasureKind;
use crate::qstate::{example_state, PureState, EXAMPLE_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub beta: f64,
    pub k: f64,
    pub our_rhs: f64,
    pub power_two_rhs: f64,
    pub half_beta_rhs: f64,
    pub plain_sum_rhs: f64,
    pub lhs: f64,
    pub applicable: bool,
}

/// Our ladder next to the three earlier bounds, one row per `(β, k)`.
/// Baselines share the ladder's pattern (all-dominant when none applies).
pub fn tightness_table(
    psi: &PureState,
    focus: usize,
    order: &[usize],
    kind: MeasureKind,
    beta_grid: &[f64],
    k_grid: &[f64],
) -> Result<Vec<TightnessRow>> {
    let prof = profile(psi, focus, order, kind)?;
    let rule = prof.rule()?;
    let mut rows = Vec::with_capacity(beta_grid.len() * k_grid.len());
    for &beta in beta_grid {
        for &k in k_grid {
            let r = prof.report(&LadderSpec::new(k, beta, rule.power, Split::Auto, rule.direction)?)?;
            let pattern = r.pattern.unwrap_or(Pattern::All);
            let bound = |family| prior_bound(&prof.values, beta, rule.power, family, pattern);
            rows.push(TightnessRow {
                beta,
                k,
                our_rhs: r.rhs,
                power_two_rhs: bound(PriorFamily::PowerTwoLadder)?,
                half_beta_rhs: bound(PriorFamily::HalfBetaLadder)?,
                plain_sum_rhs: bound(PriorFamily::PlainSum)?,
                lhs: r.lhs,
                applicable: r.applicable,
            });
        }
    }
    Ok(rows)
}

/// Kind, `k` set, β range start and comparison line of a figure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub number: u8,
    pub kind: MeasureKind,
    pub k_values: Vec<f64>,
    pub beta_min: f64,
    pub baseline: PriorFamily,
}

pub fn figure_spec(number: u8) -> Result<FigureSpec> {
    let wide = vec![0.5, 0.7, 0.9];
    let (kind, k_values, beta_min, baseline) = match number {
        1 => (MeasureKind::Concurrence, vec![0.6, 0.8], 2.0, PriorFamily::PowerTwoLadder),
        2 => (MeasureKind::EoF, wide, SQRT_2, PriorFamily::PowerTwoLadder),
        3 => (MeasureKind::Cren, vec![0.6, 0.8], 2.0, PriorFamily::PowerTwoLadder),
        4 => (MeasureKind::Tsallis(2.0), wide, 1.0, PriorFamily::PowerTwoLadder),
        5 => (MeasureKind::Renyi(2.0), wide, 1.0, PriorFamily::PlainSum),
        _ => return Err(Error::invalid(format!("figure number must be 1..=5, got {number}"))),
    };
    Ok(FigureSpec { number, kind, k_values, beta_min, baseline })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FigureRow {
    pub beta: f64,
    pub k: f64,
    pub our_rhs: f64,
    pub baseline_rhs: f64,
    pub lhs: f64,
}

/// Rows for one figure on the example state, grouped by `k`, with
/// `beta_steps` equal intervals from the figure's threshold to `beta_max`.
pub fn figure_rows(number: u8, beta_max: f64, beta_steps: usize) -> Result<Vec<FigureRow>> {
    let fig = figure_spec(number)?;
    if !(beta_max.is_finite() && beta_max > fig.beta_min) {
        return Err(Error::invalid(format!("beta_max must exceed {}, got {beta_max}", fig.beta_min)));
    }
    if beta_steps == 0 {
        return Err(Error::invalid("beta_steps must be at least 1"));
    }
    let betas: Vec<f64> =
        (0..=beta_steps).map(|i| fig.beta_min + (beta_max - fig.beta_min) * i as f64 / beta_steps as f64).collect();
    let psi = example_state();
    let prof = profile(&psi, 0, &EXAMPLE_ORDER, fig.kind)?;
    let rule = KindRule::for_kind(fig.kind)?;
    let mut rows = Vec::with_capacity(betas.len() * fig.k_values.len());
    for &k in &fig.k_values {
        for &beta in &betas {
            let r = prof.report(&LadderSpec::new(k, beta, rule.power, Split::Auto, rule.direction)?)?;
            let pattern = r.pattern.unwrap_or(Pattern::All);
            rows.push(FigureRow {
                beta,
                k,
                our_rhs: r.rhs,
                baseline_rhs: prior_bound(&prof.values, beta, rule.power, fig.baseline, pattern)?,
                lhs: r.lhs,
            });
        }
    }
    Ok(rows)
}

/// First order of the non-focus qubits, in lexicographic order, whose
/// report is applicable.
pub fn find_applicable_order(
    psi: &PureState,
    focus: usize,
    kind: MeasureKind,
    spec: &LadderSpec,
) -> Result<Option<MonogamyReport>> {
    let n = psi.n_qubits();
    if focus >= n {
        return Err(Error::invalid(format!("focus qubit {focus} out of range for {n} qubits")));
    }
    let others: Vec<usize> = (0..n).filter(|&q| q != focus).collect();
    for order in others.iter().copied().permutations(others.len()) {
        let r = profile(psi, focus, &order, kind)?.report(spec)?;
        if r.applicable {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
