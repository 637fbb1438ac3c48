use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::{
    check_pattern, condition_partition, ladder_from_factor, ConditionCheck, Direction, LadderSpec, Pattern, PowerMap,
    Split,
};
use crate::error::{Error, Result};
use crate::measures::{
    assistance_floor_2q, coa_two_qubit, concurrence_two_qubit, eof_f, measure_value, measure_value_2q, renyi_f,
    tsallis_g, MeasureKind, REOA_ALPHA,
};
use crate::qstate::{reduce_pure, Bipartition, PureState};

const RANGE_TOL: f64 = 1e-12;

/// Direction, exponent map, condition power and admissible β for one measure kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KindRule {
    pub kind: MeasureKind,
    pub direction: Direction,
    pub power: PowerMap,
    /// Power applied to terms and tails before comparing them.
    pub condition_exponent: f64,
    pub beta_min: f64,
    pub beta_max: f64,
}

impl KindRule {
    pub fn for_kind(kind: MeasureKind) -> Result<Self> {
        kind.validate()?;
        let unsupported = |what: String| Err(Error::unsupported(format!("{}: {what}", kind.label())));
        let mono = |power, condition_exponent, beta_min| KindRule {
            kind,
            direction: Direction::Monogamy,
            power,
            condition_exponent,
            beta_min,
            beta_max: f64::INFINITY,
        };
        let poly = |power, condition_exponent, beta_max| KindRule {
            kind,
            direction: Direction::Polygamy,
            power,
            condition_exponent,
            beta_min: 0.0,
            beta_max,
        };
        Ok(match kind {
            MeasureKind::Concurrence | MeasureKind::Cren => mono(PowerMap::HalfBeta, 2.0, 2.0),
            MeasureKind::EoF => mono(PowerMap::BetaOverSqrt2, SQRT_2, SQRT_2),
            MeasureKind::Tsallis(q) => {
                if !(2.0 - RANGE_TOL..=3.0 + RANGE_TOL).contains(&q) {
                    return unsupported(format!("monogamy ladder needs q in [2, 3], got {q}"));
                }
                mono(PowerMap::Identity, 1.0, 1.0)
            }
            MeasureKind::Renyi(a) => {
                if a < 2.0 - RANGE_TOL {
                    return unsupported(format!("monogamy ladder needs alpha >= 2, got {a}"));
                }
                mono(PowerMap::Identity, 1.0, 1.0)
            }
            MeasureKind::ConcurrenceAssist | MeasureKind::CrenAssist => poly(PowerMap::HalfBeta, 2.0, 2.0),
            MeasureKind::EoFAssist => poly(PowerMap::Identity, 1.0, 1.0),
            MeasureKind::TsallisAssist(q) => {
                let low = q > 1.0 && q <= 2.0 + RANGE_TOL;
                let high = (3.0 - RANGE_TOL..=4.0 + RANGE_TOL).contains(&q);
                if !(low || high) {
                    return unsupported(format!("polygamy ladder needs q in (1, 2] or [3, 4], got {q}"));
                }
                poly(PowerMap::Identity, 1.0, 1.0)
            }
            MeasureKind::RenyiAssist(a) => {
                let (lo, hi) = REOA_ALPHA;
                if !(lo - RANGE_TOL..=hi + RANGE_TOL).contains(&a) {
                    return unsupported(format!("polygamy ladder needs alpha in [{lo:.6}, {hi:.6}], got {a}"));
                }
                poly(PowerMap::Identity, 1.0, 1.0)
            }
        })
    }

    pub fn check_beta(&self, beta: f64) -> Result<()> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::invalid(format!("beta must be finite and non-negative, got {beta}")));
        }
        if self.direction == Direction::Polygamy && beta == 0.0 {
            return Err(Error::invalid("beta = 0 makes the polygamy relation degenerate"));
        }
        if beta < self.beta_min - RANGE_TOL || beta > self.beta_max + RANGE_TOL {
            return Err(Error::unsupported(format!(
                "{} ladder needs beta in [{}, {}], got {beta}",
                self.kind.label(),
                self.beta_min,
                self.beta_max
            )));
        }
        Ok(())
    }

    /// The kind's measure as a function of a squared (assisted) concurrence.
    pub fn from_squared_concurrence(&self, x: f64) -> Result<f64> {
        match self.kind.plain() {
            MeasureKind::Concurrence | MeasureKind::Cren => Ok(x.max(0.0).sqrt()),
            MeasureKind::EoF => eof_f(x),
            MeasureKind::Tsallis(q) => tsallis_g(q, x),
            MeasureKind::Renyi(a) => renyi_f(a, x.max(0.0).sqrt()),
            other => unreachable!("plain() returned {other:?}"),
        }
    }
}

/// Everything the ladder needs from a state: the focus-vs-rest value, the
/// two-qubit term values in the given order and the residual tails.
///
/// Tails come from the residual sums `R_i = Σ_{j>i} c_j²` of squared
/// pairwise concurrences (assisted concurrences for polygamy), capped at 1
/// and mapped through the kind's concurrence function. At three qubits they
/// equal the measure on the remaining two-qubit marginal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub kind: MeasureKind,
    pub focus: usize,
    pub order: Vec<usize>,
    /// Measure across `focus | rest`, before raising to β.
    pub lhs: f64,
    pub values: Vec<f64>,
    pub tails: Vec<f64>,
}

fn check_order(n: usize, focus: usize, order: &[usize]) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("need at least two qubits"));
    }
    if focus >= n {
        return Err(Error::invalid(format!("focus qubit {focus} out of range for {n} qubits")));
    }
    let mut seen = vec![false; n];
    seen[focus] = true;
    for &q in order {
        if q >= n || seen[q] {
            return Err(Error::invalid(format!(
                "order {order:?} must be a permutation of the qubits other than {focus}"
            )));
        }
        seen[q] = true;
    }
    if order.len() != n - 1 {
        return Err(Error::invalid(format!("order {order:?} must list all {} other qubits", n - 1)));
    }
    Ok(())
}

pub fn profile(psi: &PureState, focus: usize, order: &[usize], kind: MeasureKind) -> Result<Profile> {
    let rule = KindRule::for_kind(kind)?;
    check_order(psi.n_qubits(), focus, order)?;
    let assisted = kind.is_assistance();
    let lhs = measure_value(kind, psi, &Bipartition::single(focus))?;
    let mut values = Vec::with_capacity(order.len());
    let mut squares = Vec::with_capacity(order.len());
    for &b in order {
        let rho = reduce_pure(psi, &Bipartition::new(vec![focus, b]))?;
        let (c, v) = if assisted {
            (coa_two_qubit(&rho)?, assistance_floor_2q(kind, &rho)?)
        } else {
            (concurrence_two_qubit(&rho)?, measure_value_2q(kind, &rho)?)
        };
        squares.push(c * c);
        values.push(v);
    }
    let mut tails = vec![0.0; order.len().saturating_sub(1)];
    let mut residual = 0.0;
    for i in (0..tails.len()).rev() {
        residual += squares[i + 1];
        tails[i] = rule.from_squared_concurrence(residual.min(1.0))?;
    }
    Ok(Profile { kind, focus, order: order.to_vec(), lhs, values, tails })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    /// 1-based position in the party order.
    pub index: usize,
    pub value: f64,
    pub coefficient: f64,
    /// `coefficient · value^β`
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub kind: MeasureKind,
    pub direction: Direction,
    pub focus: usize,
    pub order: Vec<usize>,
    pub k: f64,
    pub beta: f64,
    pub exponent: f64,
    /// Pattern whose conditions hold; `None` when no pattern applies.
    pub pattern: Option<Pattern>,
    pub lhs_measure: f64,
    /// `lhs_measure^β`
    pub lhs: f64,
    pub terms: Vec<TermEntry>,
    pub rhs: f64,
    /// `lhs - rhs` for monogamy, `rhs - lhs` for polygamy.
    pub slack: f64,
    pub conditions: Vec<ConditionCheck>,
    pub applicable: bool,
}

impl Profile {
    pub fn rule(&self) -> Result<KindRule> {
        KindRule::for_kind(self.kind)
    }

    /// Builds the ladder report. When no pattern applies the coefficients
    /// follow the all-dominant layout and `applicable` is false.
    pub fn report(&self, spec: &LadderSpec) -> Result<MonogamyReport> {
        let rule = self.rule()?;
        if spec.power != rule.power || spec.direction != rule.direction {
            return Err(Error::unsupported(format!(
                "{} uses a {:?} ladder with {:?} exponent, spec asks for {:?} with {:?}",
                self.kind.label(),
                rule.direction,
                rule.power,
                spec.direction,
                spec.power
            )));
        }
        rule.check_beta(spec.beta)?;
        let e = rule.condition_exponent;
        let cond_values: Vec<f64> = self.values.iter().map(|v| v.powf(e)).collect();
        let cond_tails: Vec<f64> = self.tails.iter().map(|t| t.powf(e)).collect();
        let (pattern, conditions) = match spec.split {
            Split::Auto => {
                let p = condition_partition(&cond_values, &cond_tails, spec.k)?;
                (p.pattern, p.checks)
            }
            Split::All | Split::At(_) => {
                let wanted = if let Split::At(m) = spec.split { Pattern::Split(m) } else { Pattern::All };
                let checks = check_pattern(&cond_values, &cond_tails, spec.k, wanted)?;
                let ok = checks.iter().all(|c| c.satisfied);
                (ok.then_some(wanted), checks)
            }
        };
        let layout = match spec.split {
            Split::At(m) => Pattern::Split(m),
            _ => pattern.unwrap_or(Pattern::All),
        };
        let coefficients = ladder_from_factor(spec.factor()?, layout, self.values.len())?;
        let terms: Vec<TermEntry> = self
            .values
            .iter()
            .zip(&coefficients)
            .enumerate()
            .map(|(i, (&value, &coefficient))| TermEntry {
                index: i + 1,
                value,
                coefficient,
                contribution: coefficient * value.powf(spec.beta),
            })
            .collect();
        let rhs: f64 = terms.iter().map(|t| t.contribution).sum();
        let lhs = self.lhs.powf(spec.beta);
        let slack = match rule.direction {
            Direction::Monogamy => lhs - rhs,
            Direction::Polygamy => rhs - lhs,
        };
        Ok(MonogamyReport {
            kind: self.kind,
            direction: rule.direction,
            focus: self.focus,
            order: self.order.clone(),
            k: spec.k,
            beta: spec.beta,
            exponent: spec.exponent(),
            pattern,
            lhs_measure: self.lhs,
            lhs,
            terms,
            rhs,
            slack,
            conditions,
            applicable: pattern.is_some(),
        })
    }
}

pub fn monogamy_report(
    psi: &PureState,
    focus: usize,
    order: &[usize],
    kind: MeasureKind,
    spec: &LadderSpec,
) -> Result<MonogamyReport> {
    if kind.is_assistance() {
        return Err(Error::unsupported(format!("{} belongs to the polygamy family", kind.label())));
    }
    profile(psi, focus, order, kind)?.report(spec)
}

pub fn polygamy_report(
    psi: &PureState,
    focus: usize,
    order: &[usize],
    kind: MeasureKind,
    spec: &LadderSpec,
) -> Result<MonogamyReport> {
    if !kind.is_assistance() {
        return Err(Error::unsupported(format!("{} is not an assistance measure", kind.label())));
    }
    profile(psi, focus, order, kind)?.report(spec)
}

/// Earlier bounds the ladder is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PriorFamily {
    /// `Σ eᵢ^β`
    PlainSum,
    /// Ladder with factor `p`.
    HalfBetaLadder,
    /// Ladder with factor `2^p - 1`.
    PowerTwoLadder,
}

/// RHS of an earlier bound on the same terms, laid out by `pattern`.
pub fn prior_bound(values: &[f64], beta: f64, power: PowerMap, family: PriorFamily, pattern: Pattern) -> Result<f64> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid(format!("beta must be finite and non-negative, got {beta}")));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::invalid(format!("term values must be non-negative, got {v}")));
    }
    let p = power.exponent(beta);
    let factor = match family {
        PriorFamily::PlainSum => 1.0,
        PriorFamily::HalfBetaLadder => p,
        PriorFamily::PowerTwoLadder => super::coeff(1.0, p)?,
    };
    let coefficients = ladder_from_factor(factor, pattern, values.len())?;
    Ok(values.iter().zip(coefficients).map(|(v, c)| c * v.powf(beta)).sum())
}
