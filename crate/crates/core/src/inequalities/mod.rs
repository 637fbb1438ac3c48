//! The coefficient `h(k, p) = ((1+k)^p - 1)/k^p`, its scalar inequalities,
//! coefficient ladders and theorem-condition partitioning.
//!
//! A ladder multiplies the β-powered terms `e₁ … e_{N-1}` of a monogamy
//! (lower-bound) or polygamy (upper-bound) relation by powers of `h`:
//!
//! * all conditioned: `[h⁰, h¹, …, h^{N-2}]`
//! * split at `m`: `[h⁰, …, h^{m-1}, h^{m+1}, …, h^{m+1}, h^m]`
//!
//! where the split form applies when the first `m` terms dominate their
//! residual tails and the remaining ones are dominated by theirs.

mod report;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use report::{
    monogamy_report, polygamy_report, prior_bound, profile, KindRule, MonogamyReport, PriorFamily, Profile, TermEntry,
};

/// Slack on condition comparisons; boundary cases count as satisfied.
pub const CONDITION_TOL: f64 = 1e-12;

/// Absolute tolerance for asserting `slack ≥ 0`.
pub const SLACK_TOL: f64 = 1e-9;

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k <= 1.0) {
        return Err(Error::invalid(format!("k must lie in (0, 1], got {k}")));
    }
    Ok(())
}

/// `((1+k)^p - 1)/k^p`. Equals `2^p - 1` at `k = 1` and `1` at `p = 1`.
pub fn coeff(k: f64, p: f64) -> Result<f64> {
    check_k(k)?;
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::invalid(format!("exponent must be non-negative, got {p}")));
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    // (1+k)^p - 1 via exp_m1 keeps precision for small k·p
    Ok((p * k.ln_1p()).exp_m1() / k.powf(p))
}

fn check_lemma_domain(t: f64, k: f64) -> Result<()> {
    check_k(k)?;
    if !(0.0..=k).contains(&t) {
        return Err(Error::invalid(format!("t must lie in [0, k] = [0, {k}], got {t}")));
    }
    Ok(())
}

/// Both sides of `(1+t)^m ≥ 1 + h(k,m)·t^m` for `m ≥ 1`, `0 ≤ t ≤ k`.
pub fn lemma1_lower(t: f64, k: f64, m: f64) -> Result<(f64, f64)> {
    check_lemma_domain(t, k)?;
    if !(m >= 1.0 && m.is_finite()) {
        return Err(Error::invalid(format!("lower form needs m >= 1, got {m}")));
    }
    Ok(((1.0 + t).powf(m), 1.0 + coeff(k, m)? * t.powf(m)))
}

/// Both sides of `(1+t)^n ≤ 1 + h(k,n)·t^n` for `0 ≤ n ≤ 1`, `0 ≤ t ≤ k`.
pub fn lemma1_upper(t: f64, k: f64, n: f64) -> Result<(f64, f64)> {
    check_lemma_domain(t, k)?;
    if !(0.0..=1.0).contains(&n) {
        return Err(Error::invalid(format!("upper form needs 0 <= n <= 1, got {n}")));
    }
    Ok(((1.0 + t).powf(n), 1.0 + coeff(k, n)? * t.powf(n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `E^β(A|rest) ≥ Σ cᵢ Eᵢ^β`
    Monogamy,
    /// `E^β(A|rest) ≤ Σ cᵢ Eᵢ^β`
    Polygamy,
}

/// How β maps to the coefficient exponent `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PowerMap {
    /// `p = β` (EoA, Tsallis, Rényi and their assistance duals)
    Identity,
    /// `p = β/2` (concurrence, CREN, CoA)
    HalfBeta,
    /// `p = β/√2` (EoF)
    BetaOverSqrt2,
}

impl PowerMap {
    pub fn exponent(self, beta: f64) -> f64 {
        match self {
            PowerMap::Identity => beta,
            PowerMap::HalfBeta => beta / 2.0,
            PowerMap::BetaOverSqrt2 => beta / std::f64::consts::SQRT_2,
        }
    }
}

/// Requested conditioning pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    /// Pick the pattern from the measured values via [`condition_partition`].
    Auto,
    /// First `m` terms dominant, the rest subordinate (`1 ≤ m ≤ N-3`).
    At(usize),
    /// Every term dominant.
    All,
}

/// A resolved conditioning pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    Split(usize),
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub k: f64,
    pub beta: f64,
    pub power: PowerMap,
    pub split: Split,
    pub direction: Direction,
}

impl LadderSpec {
    pub fn new(k: f64, beta: f64, power: PowerMap, split: Split, direction: Direction) -> Result<Self> {
        check_k(k)?;
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::invalid(format!("beta must be non-negative, got {beta}")));
        }
        Ok(Self { k, beta, power, split, direction })
    }

    pub fn exponent(&self) -> f64 {
        self.power.exponent(self.beta)
    }

    /// `h(k, p(β))`.
    pub fn factor(&self) -> Result<f64> {
        coeff(self.k, self.exponent())
    }
}

fn check_split(m: usize, n_terms: usize) -> Result<()> {
    if m < 1 || m + 2 > n_terms {
        return Err(Error::invalid(format!("split index {m} must lie in [1, N-3] = [1, {}]", n_terms as i64 - 2)));
    }
    Ok(())
}

/// Powers of `factor` laid out by `pattern` for `n_terms = N-1` terms.
pub fn ladder_from_factor(factor: f64, pattern: Pattern, n_terms: usize) -> Result<Vec<f64>> {
    if n_terms == 0 {
        return Err(Error::invalid("a ladder needs at least one term"));
    }
    let exps: Vec<i32> = match pattern {
        Pattern::All => (0..n_terms as i32).collect(),
        Pattern::Split(m) => {
            check_split(m, n_terms)?;
            let m = m as i32;
            let n = n_terms as i32;
            (1..=n)
                .map(|i| match i {
                    i if i <= m => i - 1,
                    i if i < n => m + 1,
                    _ => m,
                })
                .collect()
        }
    };
    Ok(exps.into_iter().map(|e| factor.powi(e)).collect())
}

/// Ladder coefficients for an explicit `spec.split` (`All` or `At(m)`).
pub fn ladder_coefficients(spec: &LadderSpec, n_terms: usize) -> Result<Vec<f64>> {
    let pattern = match spec.split {
        Split::All => Pattern::All,
        Split::At(m) => Pattern::Split(m),
        Split::Auto => return Err(Error::invalid("ladder_coefficients needs an explicit split; resolve Auto first")),
    };
    ladder_from_factor(spec.factor()?, pattern, n_terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    /// `k·eᵢ ≥ tailᵢ`
    Dominant,
    /// `eⱼ ≤ k·tailⱼ`
    Subordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    /// 1-based term index.
    pub index: usize,
    pub kind: ConditionKind,
    pub satisfied: bool,
    pub lhs_value: f64,
    pub rhs_value: f64,
}

fn evaluate_condition(kind: ConditionKind, index: usize, value: f64, tail: f64, k: f64) -> ConditionCheck {
    let (lhs_value, rhs_value, satisfied) = match kind {
        ConditionKind::Dominant => (k * value, tail, k * value >= tail - CONDITION_TOL),
        ConditionKind::Subordinate => (value, k * tail, value <= k * tail + CONDITION_TOL),
    };
    ConditionCheck { index, kind, satisfied, lhs_value, rhs_value }
}

/// Outcome of [`condition_partition`]: the applicable pattern, if any, and the
/// per-index checks that pattern demands (the all-dominant checks when none applies).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub pattern: Option<Pattern>,
    pub checks: Vec<ConditionCheck>,
}

fn check_lengths(values: &[f64], tails: &[f64]) -> Result<()> {
    if values.is_empty() || tails.len() + 1 != values.len() {
        return Err(Error::invalid(format!(
            "expected {} residual tails for {} terms, got {}",
            values.len().saturating_sub(1),
            values.len(),
            tails.len()
        )));
    }
    Ok(())
}

/// The checks a given pattern requires. `values[i]` and `tails[i]` are already
/// raised to the power the theorem compares; `tails[i]` is the residual after term `i`.
pub fn check_pattern(values: &[f64], tails: &[f64], k: f64, pattern: Pattern) -> Result<Vec<ConditionCheck>> {
    check_k(k)?;
    check_lengths(values, tails)?;
    if let Pattern::Split(m) = pattern {
        check_split(m, values.len())?;
    }
    Ok(tails
        .iter()
        .enumerate()
        .map(|(i, &tail)| {
            let kind = match pattern {
                Pattern::Split(m) if i >= m => ConditionKind::Subordinate,
                _ => ConditionKind::Dominant,
            };
            evaluate_condition(kind, i + 1, values[i], tail, k)
        })
        .collect())
}

/// Finds the conditioning pattern the values satisfy: `All` when every index
/// is dominant, otherwise the largest split `m ∈ [1, N-3]`, otherwise none.
pub fn condition_partition(values: &[f64], tails: &[f64], k: f64) -> Result<Partition> {
    let dominant = check_pattern(values, tails, k, Pattern::All)?;
    let leading = dominant.iter().take_while(|c| c.satisfied).count();
    if leading == dominant.len() {
        return Ok(Partition { pattern: Some(Pattern::All), checks: dominant });
    }
    let max_split = leading.min(values.len().saturating_sub(2));
    for m in (1..=max_split).rev() {
        let checks = check_pattern(values, tails, k, Pattern::Split(m))?;
        if checks.iter().all(|c| c.satisfied) {
            return Ok(Partition { pattern: Some(Pattern::Split(m)), checks });
        }
    }
    Ok(Partition { pattern: None, checks: dominant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn coeff_examples() {
        for p in [0.0, 0.3, 1.0, 1.5, 2.0, 4.2] {
            assert_relative_eq!(coeff(1.0, p).unwrap(), 2f64.powf(p) - 1.0, max_relative = 1e-14);
        }
        for k in [0.01, 0.3, 0.6, 1.0] {
            assert_eq!(coeff(k, 1.0).unwrap(), 1.0);
        }
        // mpmath (30 digits): 2.20299101705486279391780202182
        assert_abs_diff_eq!(coeff(0.6, 1.5).unwrap(), 2.202991017054863, epsilon = 1e-14);
        assert_abs_diff_eq!(coeff(0.6, 2.0).unwrap(), 13.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn coeff_rejects_bad_k() {
        for k in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(coeff(k, 2.0), Err(Error::InvalidArgument(_))));
        }
        assert!(coeff(0.5, -1.0).is_err());
    }

    #[test]
    fn lemma1_lower_examples() {
        let (l, r) = lemma1_lower(0.0, 0.6, 2.5).unwrap();
        assert_eq!((l, r), (1.0, 1.0));
        let (l, r) = lemma1_lower(0.6, 0.6, 2.5).unwrap();
        assert_relative_eq!(l, r, max_relative = 1e-14);
        let (l, r) = lemma1_lower(0.3, 0.6, 2.0).unwrap();
        assert_abs_diff_eq!(l, 1.69, epsilon = 1e-14);
        assert_abs_diff_eq!(r, 1.39, epsilon = 1e-14);
        assert!(lemma1_lower(0.7, 0.6, 2.0).is_err());
        assert!(lemma1_lower(0.3, 0.6, 0.5).is_err());
    }

    #[test]
    fn lemma1_upper_examples() {
        for (t, k) in [(0.0, 0.4), (0.2, 0.4), (0.4, 1.0)] {
            let (l, r) = lemma1_upper(t, k, 1.0).unwrap();
            assert_relative_eq!(l, r, max_relative = 1e-15);
        }
        assert_eq!(lemma1_upper(0.0, 0.5, 0.3).unwrap(), (1.0, 1.0));
        let (l, r) = lemma1_upper(0.25, 0.5, 0.5).unwrap();
        assert_abs_diff_eq!(l, 1.118033988749895, epsilon = 1e-14);
        // mpmath: 1.15891862259789112236
        assert_abs_diff_eq!(r, 1.158918622597891, epsilon = 1e-14);
        assert!(lemma1_upper(0.25, 0.5, 1.5).is_err());
    }

    #[test]
    fn ladder_patterns() {
        assert_eq!(ladder_from_factor(1.0, Pattern::All, 4).unwrap(), vec![1.0; 4]);
        // symbolic h = 3 makes exponents readable: [h⁰, h¹, h³, h³, h²]
        assert_eq!(ladder_from_factor(3.0, Pattern::Split(2), 5).unwrap(), vec![1.0, 3.0, 27.0, 27.0, 9.0]);
        assert_eq!(ladder_from_factor(3.0, Pattern::Split(1), 3).unwrap(), vec![1.0, 9.0, 3.0]);
        assert_eq!(ladder_from_factor(3.0, Pattern::All, 1).unwrap(), vec![1.0]);
        assert!(ladder_from_factor(3.0, Pattern::Split(3), 4).is_err());
        assert!(ladder_from_factor(3.0, Pattern::Split(0), 4).is_err());
        assert!(ladder_from_factor(3.0, Pattern::Split(1), 2).is_err());

        let spec = LadderSpec::new(1.0, 2.0, PowerMap::HalfBeta, Split::All, Direction::Monogamy).unwrap();
        assert_eq!(ladder_coefficients(&spec, 3).unwrap(), vec![1.0, 1.0, 1.0]);
        let auto = LadderSpec { split: Split::Auto, ..spec };
        assert!(ladder_coefficients(&auto, 3).is_err());
    }

    #[test]
    fn partition_examples() {
        // all dominant
        let p = condition_partition(&[1.0, 0.8, 0.5], &[0.5, 0.3], 0.9).unwrap();
        assert_eq!(p.pattern, Some(Pattern::All));
        // N = 4: dominant at 1, subordinate at 2
        let p = condition_partition(&[1.0, 0.1, 0.5], &[0.6, 0.5], 0.8).unwrap();
        assert_eq!(p.pattern, Some(Pattern::Split(1)));
        assert_eq!(p.checks[1].kind, ConditionKind::Subordinate);
        assert!(p.checks.iter().all(|c| c.satisfied));
        // nothing works
        let p = condition_partition(&[0.1, 0.1, 0.5], &[0.6, 0.5], 0.8).unwrap();
        assert_eq!(p.pattern, None);
        assert!(!p.checks[0].satisfied);
        // N = 3 has no split form
        let p = condition_partition(&[0.1, 0.5], &[0.5], 0.8).unwrap();
        assert_eq!(p.pattern, None);
        assert!(condition_partition(&[0.1, 0.5], &[0.5, 0.1], 0.8).is_err());
    }

    #[test]
    fn example_state_satisfies_tripartite_condition() {
        // C²_AC = 1/4 ≤ 0.6·C²_AB = 0.3
        let p = condition_partition(&[0.5, 0.25], &[0.25], 0.6).unwrap();
        assert_eq!(p.pattern, Some(Pattern::All));
        assert_abs_diff_eq!(p.checks[0].lhs_value, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn largest_split_is_chosen() {
        // k = 1 and equal values make both conditions hold everywhere except where All fails
        let values = [1.0, 1.0, 1.0, 0.1, 1.0];
        let tails = [1.0, 1.0, 1.0, 1.0];
        let p = condition_partition(&values, &tails, 1.0).unwrap();
        assert_eq!(p.pattern, Some(Pattern::Split(3)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn coeff_dominates_power_of_two(k in 1e-3f64..=1.0, p in 1.0f64..8.0) {
                prop_assert!(coeff(k, p).unwrap() >= p.exp2() - 1.0 - 1e-12 * p.exp2());
            }

            #[test]
            fn coeff_below_power_of_two_for_small_p(k in 1e-3f64..=1.0, p in 0.0f64..=1.0) {
                prop_assert!(coeff(k, p).unwrap() <= p.exp2() - 1.0 + 1e-12);
            }

            #[test]
            fn coeff_nonincreasing_in_k(k in 1e-3f64..0.999, dk in 1e-4f64..1e-1, p in 1.0f64..8.0) {
                let k2 = (k + dk).min(1.0);
                let (a, b) = (coeff(k, p).unwrap(), coeff(k2, p).unwrap());
                prop_assert!(b <= a * (1.0 + 1e-12));
            }

            #[test]
            fn lemma1_lower_holds(k in 1e-3f64..=1.0, frac in 0.0f64..=1.0, m in 1.0f64..10.0) {
                let (l, r) = lemma1_lower(frac * k, k, m).unwrap();
                prop_assert!(l >= r * (1.0 - 1e-12));
            }

            #[test]
            fn lemma1_upper_holds(k in 1e-3f64..=1.0, frac in 0.0f64..=1.0, n in 0.0f64..=1.0) {
                let (l, r) = lemma1_upper(frac * k, k, n).unwrap();
                prop_assert!(l <= r * (1.0 + 1e-12));
            }
        }
    }
}
