//! Entanglement measures for pure bipartitions and two-qubit mixed states,
//! plus the scalar functions `f`, `g_q` and `f_α` linking them to concurrence.
//!
//! All entropies are in bits; `0·log 0 = 0`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{
    partial_transpose, psd_factor, reduced_spectrum, singular_values, trace_norm, Bipartition, CMatrix, DensityMatrix,
    PureState,
};

/// Inputs to the scalar functions may stray outside `[0, 1]` by this much.
pub const DOMAIN_TOL: f64 = 1e-12;

/// `q` range on which `T_q(ρ) = g_q(C²(ρ))` holds for two-qubit mixed states.
pub const TSALLIS_CLOSED_FORM_Q: (f64, f64) = (0.697_224_362_268_005_2, 4.302_775_637_731_995);

/// `α` range on which Rényi entanglement of assistance is polygamous.
pub const REOA_ALPHA: (f64, f64) = (0.822_875_655_532_295_2, 1.302_775_637_731_994_6);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum MeasureKind {
    Concurrence,
    ConcurrenceAssist,
    #[serde(rename = "eof")]
    EoF,
    #[serde(rename = "eof-assist")]
    EoFAssist,
    Cren,
    CrenAssist,
    Tsallis(f64),
    TsallisAssist(f64),
    Renyi(f64),
    RenyiAssist(f64),
}

impl MeasureKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MeasureKind::Tsallis(q) | MeasureKind::TsallisAssist(q) => check_order("Tsallis q", q),
            MeasureKind::Renyi(a) | MeasureKind::RenyiAssist(a) => check_order("Rényi alpha", a),
            _ => Ok(()),
        }
    }

    pub fn is_assistance(&self) -> bool {
        matches!(
            self,
            MeasureKind::ConcurrenceAssist
                | MeasureKind::EoFAssist
                | MeasureKind::CrenAssist
                | MeasureKind::TsallisAssist(_)
                | MeasureKind::RenyiAssist(_)
        )
    }

    /// The measure an assistance kind is dual to; plain kinds map to themselves.
    pub fn plain(&self) -> MeasureKind {
        match *self {
            MeasureKind::ConcurrenceAssist => MeasureKind::Concurrence,
            MeasureKind::EoFAssist => MeasureKind::EoF,
            MeasureKind::CrenAssist => MeasureKind::Cren,
            MeasureKind::TsallisAssist(q) => MeasureKind::Tsallis(q),
            MeasureKind::RenyiAssist(a) => MeasureKind::Renyi(a),
            other => other,
        }
    }

    /// Short label such as `tsallis(q=2)`.
    pub fn label(&self) -> String {
        match *self {
            MeasureKind::Concurrence => "concurrence".into(),
            MeasureKind::ConcurrenceAssist => "concurrence-assist".into(),
            MeasureKind::EoF => "eof".into(),
            MeasureKind::EoFAssist => "eof-assist".into(),
            MeasureKind::Cren => "cren".into(),
            MeasureKind::CrenAssist => "cren-assist".into(),
            MeasureKind::Tsallis(q) => format!("tsallis(q={q})"),
            MeasureKind::TsallisAssist(q) => format!("tsallis-assist(q={q})"),
            MeasureKind::Renyi(a) => format!("renyi(alpha={a})"),
            MeasureKind::RenyiAssist(a) => format!("renyi-assist(alpha={a})"),
        }
    }
}

fn check_order(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) || (v - 1.0).abs() < 1e-12 {
        return Err(Error::invalid(format!("{name} must be positive and different from 1, got {v}")));
    }
    Ok(())
}

fn unit_interval(name: &str, x: f64) -> Result<f64> {
    if !x.is_finite() || !(-DOMAIN_TOL..=1.0 + DOMAIN_TOL).contains(&x) {
        return Err(Error::invalid(format!("{name}: argument {x} outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// `(1 - √(1-x))/2` without cancellation for small `x`.
fn lower_root(x: f64) -> f64 {
    x / (2.0 * (1.0 + (1.0 - x).sqrt()))
}

fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// `H(p) = -p log₂ p - (1-p) log₂(1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    -xlog2x(p) - xlog2x(1.0 - p)
}

/// Von Neumann entropy (bits) of a spectrum.
pub fn von_neumann(spectrum: &[f64]) -> f64 {
    -spectrum.iter().map(|&m| xlog2x(m.max(0.0))).sum::<f64>()
}

/// `√(2(1 - tr ρ_A²))`.
pub fn concurrence_pure(psi: &PureState, b: &Bipartition) -> Result<f64> {
    let purity: f64 = reduced_spectrum(psi, b)?.iter().map(|m| m * m).sum();
    Ok((2.0 * (1.0 - purity)).max(0.0).sqrt())
}

fn require_two_qubit(rho: &DensityMatrix, what: &str) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::invalid(format!("{what} requires a 4x4 density matrix, got {}", rho.dim())));
    }
    Ok(())
}

/// The Wootters values `λ₁ ≥ … ≥ λ₄`: square roots of the eigenvalues of
/// `ρ (σy⊗σy) ρ* (σy⊗σy)`.
///
/// Computed as the singular values of `W† Ỹ W*` with `ρ = W W†`, which avoids
/// square roots of eigenvalues sitting at rounding level.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubit(rho, "wootters_lambdas")?;
    let w = psd_factor(rho.matrix());
    let flip = Matrix4::new(
        0.0, 0.0, 0.0, -1.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0,
    )
    .map(|v| Complex64::new(v, 0.0));
    let flip = CMatrix::from_iterator(4, 4, flip.iter().copied());
    let w_tilde = flip * w.conjugate();
    let s = singular_values(&(w.adjoint() * w_tilde));
    Ok([s[0], s[1], s[2], s[3]])
}

/// `max(0, λ₁ - λ₂ - λ₃ - λ₄)`.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Concurrence of assistance, `λ₁ + λ₂ + λ₃ + λ₄`.
pub fn coa_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(wootters_lambdas(rho)?.iter().sum::<f64>().min(1.0))
}

/// `‖ρ^{T_A}‖ - 1` (no factor 1/2).
pub fn negativity_mixed(rho: &DensityMatrix, n_qubits: usize, b: &Bipartition) -> Result<f64> {
    let pt = partial_transpose(rho, n_qubits, b)?;
    Ok((trace_norm(&pt)? - 1.0).max(0.0))
}

/// `(tr √ρ_A)² - 1`.
pub fn negativity_pure(psi: &PureState, b: &Bipartition) -> Result<f64> {
    let s: f64 = reduced_spectrum(psi, b)?.iter().map(|m| m.sqrt()).sum();
    Ok((s * s - 1.0).max(0.0))
}

/// `f(x) = H((1 + √(1-x))/2)`.
pub fn eof_f(x: f64) -> Result<f64> {
    let x = unit_interval("eof_f", x)?;
    Ok(binary_entropy(lower_root(x)))
}

pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence_two_qubit(rho)?;
    eof_f((c * c).min(1.0))
}

/// Von Neumann entropy of the reduction onto `b`.
pub fn entropy_pure(psi: &PureState, b: &Bipartition) -> Result<f64> {
    Ok(von_neumann(&reduced_spectrum(psi, b)?))
}

/// `g_q(x) = [1 - ((1+√(1-x))/2)^q - ((1-√(1-x))/2)^q] / (q-1)`.
pub fn tsallis_g(q: f64, x: f64) -> Result<f64> {
    check_order("Tsallis q", q)?;
    let x = unit_interval("tsallis_g", x)?;
    let lo = lower_root(x);
    // 1 - (1-lo)^q, evaluated stably for small lo
    let one_minus_hi_q = -(q * (-lo).ln_1p()).exp_m1();
    Ok((one_minus_hi_q - lo.powf(q)) / (q - 1.0))
}

/// `(1 - Σ μᵢ^q)/(q - 1)` over the reduction spectrum.
pub fn tsallis_pure(q: f64, psi: &PureState, b: &Bipartition) -> Result<f64> {
    check_order("Tsallis q", q)?;
    let s: f64 = reduced_spectrum(psi, b)?.iter().filter(|m| **m > 0.0).map(|m| m.powf(q)).sum();
    Ok((1.0 - s) / (q - 1.0))
}

/// `f_α(x) = log₂[((1-√(1-x²))/2)^α + ((1+√(1-x²))/2)^α] / (1-α)`, with `x` the concurrence.
pub fn renyi_f(alpha: f64, x: f64) -> Result<f64> {
    check_order("Rényi alpha", alpha)?;
    let x = unit_interval("renyi_f", x)?;
    let lo = lower_root(x * x);
    let hi = 1.0 - lo;
    Ok((lo.powf(alpha) + hi.powf(alpha)).log2() / (1.0 - alpha))
}

/// `log₂(tr ρ_A^α)/(1-α)`.
pub fn renyi_pure(alpha: f64, psi: &PureState, b: &Bipartition) -> Result<f64> {
    check_order("Rényi alpha", alpha)?;
    let s: f64 = reduced_spectrum(psi, b)?.iter().filter(|m| **m > 0.0).map(|m| m.powf(alpha)).sum();
    Ok(s.log2() / (1.0 - alpha))
}

/// Any measure on a pure bipartition. Assistance kinds coincide with their
/// plain counterparts on pure states.
pub fn measure_value(kind: MeasureKind, psi: &PureState, b: &Bipartition) -> Result<f64> {
    kind.validate()?;
    match kind.plain() {
        MeasureKind::Concurrence => concurrence_pure(psi, b),
        MeasureKind::EoF => entropy_pure(psi, b),
        MeasureKind::Cren => negativity_pure(psi, b),
        MeasureKind::Tsallis(q) => tsallis_pure(q, psi, b),
        MeasureKind::Renyi(a) => renyi_pure(a, psi, b),
        other => unreachable!("plain() returned {other:?}"),
    }
}

/// Closed-form value on a two-qubit mixed state.
pub fn measure_value_2q(kind: MeasureKind, rho: &DensityMatrix) -> Result<f64> {
    kind.validate()?;
    require_two_qubit(rho, "measure_value_2q")?;
    match kind {
        MeasureKind::Concurrence | MeasureKind::Cren => concurrence_two_qubit(rho),
        MeasureKind::ConcurrenceAssist | MeasureKind::CrenAssist => coa_two_qubit(rho),
        MeasureKind::EoF => eof_two_qubit(rho),
        MeasureKind::Tsallis(q) => {
            let (lo, hi) = TSALLIS_CLOSED_FORM_Q;
            if !(lo..=hi).contains(&q) {
                return Err(Error::unsupported(format!(
                    "two-qubit Tsallis closed form needs q in [{lo:.6}, {hi:.6}], got {q}"
                )));
            }
            let c = concurrence_two_qubit(rho)?;
            tsallis_g(q, (c * c).min(1.0))
        }
        MeasureKind::Renyi(a) => renyi_f(a, concurrence_two_qubit(rho)?.min(1.0)),
        MeasureKind::EoFAssist | MeasureKind::TsallisAssist(_) | MeasureKind::RenyiAssist(_) => {
            Err(Error::unsupported(format!("{} has no closed form on mixed two-qubit states", kind.label())))
        }
    }
}

/// Lower bound on an assistance measure of a two-qubit state obtained by
/// applying the measure's concurrence function to the concurrence of assistance.
///
/// Exact for CoA and its negativity dual. For EoA, TEoA and REoA the bound
/// holds because the concurrence function is convex on the supported ranges
/// (`q ∈ [1, 4]`, `α ∈ REOA_ALPHA`); on rank-one inputs it is exact.
pub fn assistance_floor_2q(kind: MeasureKind, rho: &DensityMatrix) -> Result<f64> {
    kind.validate()?;
    require_two_qubit(rho, "assistance_floor_2q")?;
    match kind {
        MeasureKind::ConcurrenceAssist | MeasureKind::CrenAssist => coa_two_qubit(rho),
        MeasureKind::EoFAssist => {
            let ca = coa_two_qubit(rho)?;
            eof_f(ca * ca)
        }
        MeasureKind::TsallisAssist(q) => {
            if !(1.0..=4.0).contains(&q) {
                return Err(Error::unsupported(format!("TEoA floor needs q in [1, 4], got {q}")));
            }
            let ca = coa_two_qubit(rho)?;
            tsallis_g(q, ca * ca)
        }
        MeasureKind::RenyiAssist(a) => {
            let (lo, hi) = REOA_ALPHA;
            if !(lo..=hi).contains(&a) {
                return Err(Error::unsupported(format!("REoA floor needs alpha in [{lo:.6}, {hi:.6}], got {a}")));
            }
            renyi_f(a, coa_two_qubit(rho)?)
        }
        plain => Err(Error::unsupported(format!("{} is not an assistance measure", plain.label()))),
    }
}
