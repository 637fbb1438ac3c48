//! Qubit-register states: pure amplitude vectors, density matrices,
//! reductions, partial transposes and state constructors.
//!
//! Index convention: qubit 0 is the most significant bit of a basis index.

mod linalg;
mod random;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linalg::{eig_hermitian, singular_values, trace, trace_norm, CMatrix, HERMITIAN_TOL, PSD_TOL};
pub(crate) use linalg::{hermitian_deviation, psd_factor};
pub use random::{haar_random_mixed, haar_random_pure, haar_random_pure_with, trial_seed};

/// Largest register the dense representation supports.
pub const MAX_QUBITS: usize = 12;

/// Tolerance on `‖ψ‖ = 1`.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance on the Hermiticity and unit trace of a [`DensityMatrix`].
pub const DENSITY_TOL: f64 = 1e-12;

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::invalid(format!("dimension {dim} is not a power of two >= 2")));
    }
    let n = dim.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::invalid(format!("{n} qubits exceeds the supported maximum of {MAX_QUBITS}")));
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps a unit-norm amplitude vector whose length is `2^n`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Rescales a non-zero amplitude vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        let norm = norm(&amplitudes);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid("cannot normalize a zero or non-finite vector"));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS || index >= 1 << n_qubits {
            return Err(Error::invalid(format!("basis state {index} on {n_qubits} qubits")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `self ⊗ other`; `self` occupies the leading qubits.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::invalid(format!("{n} qubits exceeds the supported maximum of {MAX_QUBITS}")));
        }
        let amplitudes = self.amplitudes.iter().flat_map(|a| other.amplitudes.iter().map(move |b| a * b)).collect();
        Ok(PureState { n_qubits: n, amplitudes })
    }

    /// The projector `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        let d = self.dim();
        let psi = &self.amplitudes;
        let matrix = CMatrix::from_fn(d, d, |i, j| psi[i] * psi[j].conj());
        DensityMatrix { n_qubits: self.n_qubits, matrix }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and numerical positivity.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::invalid("density matrix must be square"));
        }
        let n_qubits = qubits_for_dim(matrix.nrows())?;
        let dev = hermitian_deviation(&matrix);
        if dev > DENSITY_TOL {
            return Err(Error::invalid(format!("density matrix not Hermitian (deviation {dev:e})")));
        }
        let tr = trace(&matrix);
        if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::invalid(format!("density matrix trace {tr} differs from 1")));
        }
        let min_eig = eig_hermitian(&matrix)?.last().copied().unwrap_or(0.0);
        if min_eig < -PSD_TOL {
            return Err(Error::invalid(format!("density matrix has eigenvalue {min_eig:e} < 0")));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// Internal constructor for matrices that are density matrices by construction.
    pub(crate) fn from_parts(n_qubits: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), 1 << n_qubits);
        Self { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues, descending, with values in `[-PSD_TOL, 0)` clamped to zero.
    pub fn spectrum(&self) -> Vec<f64> {
        clamp_spectrum(eig_hermitian(&self.matrix).expect("density matrix is Hermitian"))
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::invalid(format!("{n} qubits exceeds the supported maximum of {MAX_QUBITS}")));
        }
        Ok(DensityMatrix { n_qubits: n, matrix: self.matrix.kronecker(&other.matrix) })
    }
}

pub(crate) fn clamp_spectrum(mut values: Vec<f64>) -> Vec<f64> {
    values.iter_mut().for_each(|v| *v = v.max(0.0));
    values
}

/// The qubits forming side A of a bipartition; the complement forms side B.
/// Order matters: `keep[0]` becomes the most significant qubit of reductions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    keep: Vec<usize>,
}

impl Bipartition {
    pub fn new(keep: Vec<usize>) -> Self {
        Self { keep }
    }

    pub fn single(qubit: usize) -> Self {
        Self { keep: vec![qubit] }
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.keep.is_empty() || self.keep.len() >= n_qubits {
            return Err(Error::invalid(format!(
                "bipartition {:?} must be a non-empty proper subset of {n_qubits} qubits",
                self.keep
            )));
        }
        let mut seen = vec![false; n_qubits];
        for &q in &self.keep {
            if q >= n_qubits {
                return Err(Error::invalid(format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::invalid(format!("qubit {q} repeated in bipartition")));
            }
        }
        Ok(())
    }

    /// Qubits not in `keep`, ascending.
    pub fn complement(&self, n_qubits: usize) -> Vec<usize> {
        (0..n_qubits).filter(|q| !self.keep.contains(q)).collect()
    }
}

/// Full-register index bits for every basis index of the sub-register `qubits`.
fn scatter_table(qubits: &[usize], n_qubits: usize) -> Vec<usize> {
    let len = qubits.len();
    (0..1usize << len)
        .map(|sub| {
            qubits.iter().enumerate().fold(0usize, |acc, (t, &q)| {
                let bit = (sub >> (len - 1 - t)) & 1;
                acc | (bit << (n_qubits - 1 - q))
            })
        })
        .collect()
}

fn check_register(rho: &DensityMatrix, n_qubits: usize) -> Result<()> {
    if rho.n_qubits != n_qubits {
        return Err(Error::invalid(format!("matrix of dimension {} does not match {n_qubits} qubits", rho.dim())));
    }
    Ok(())
}

/// Reduced density matrix on `keep.keep()`, in that qubit order.
pub fn partial_trace(rho: &DensityMatrix, n_qubits: usize, keep: &Bipartition) -> Result<DensityMatrix> {
    check_register(rho, n_qubits)?;
    keep.validate(n_qubits)?;
    let kept = scatter_table(keep.keep(), n_qubits);
    let rest = scatter_table(&keep.complement(n_qubits), n_qubits);
    let m = &rho.matrix;
    let out =
        CMatrix::from_fn(kept.len(), kept.len(), |i, j| rest.iter().map(|&r| m[(kept[i] | r, kept[j] | r)]).sum());
    Ok(DensityMatrix::from_parts(keep.keep().len(), out))
}

/// `ρ^{T_S}` for the qubit set `S = transposed.keep()`.
pub fn partial_transpose(rho: &DensityMatrix, n_qubits: usize, transposed: &Bipartition) -> Result<CMatrix> {
    check_register(rho, n_qubits)?;
    transposed.validate(n_qubits)?;
    let mask = transposed.keep().iter().fold(0usize, |acc, &q| acc | (1 << (n_qubits - 1 - q)));
    let d = rho.dim();
    let m = &rho.matrix;
    Ok(CMatrix::from_fn(d, d, |a, b| {
        // swap the masked bits of the row and column index
        let src_row = (a & !mask) | (b & mask);
        let src_col = (b & !mask) | (a & mask);
        m[(src_row, src_col)]
    }))
}

/// Amplitudes of `psi` arranged as a `2^|keep| × 2^|rest|` matrix.
fn coefficient_matrix(psi: &PureState, keep: &Bipartition) -> Result<CMatrix> {
    let n = psi.n_qubits;
    keep.validate(n)?;
    let kept = scatter_table(keep.keep(), n);
    let rest = scatter_table(&keep.complement(n), n);
    let amps = &psi.amplitudes;
    Ok(CMatrix::from_fn(kept.len(), rest.len(), |i, r| amps[kept[i] | rest[r]]))
}

/// `tr_B |ψ⟩⟨ψ|` computed from the coefficient matrix without forming the projector.
pub fn reduce_pure(psi: &PureState, keep: &Bipartition) -> Result<DensityMatrix> {
    let m = coefficient_matrix(psi, keep)?;
    Ok(DensityMatrix::from_parts(keep.keep().len(), &m * m.adjoint()))
}

/// Spectrum of the reduction of `psi` onto `keep`, descending and clamped at zero.
///
/// Only the `min(dim A, dim B)` possibly non-zero eigenvalues are returned;
/// both sides of a pure bipartition share them.
pub fn reduced_spectrum(psi: &PureState, keep: &Bipartition) -> Result<Vec<f64>> {
    let m = coefficient_matrix(psi, keep)?;
    let gram = if m.nrows() <= m.ncols() { &m * m.adjoint() } else { m.adjoint() * &m };
    Ok(clamp_spectrum(eig_hermitian(&gram)?))
}

/// Parameters of `λ0|000⟩ + λ1 e^{iφ}|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtParams {
    lambda: [f64; 5],
    phi: f64,
}

impl SchmidtParams {
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if lambda.iter().any(|l| !l.is_finite() || *l < 0.0) || !phi.is_finite() {
            return Err(Error::invalid(format!("Schmidt coefficients {lambda:?} must be finite and non-negative")));
        }
        let total: f64 = lambda.iter().map(|l| l * l).sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("Schmidt coefficients square-sum to {total}, not 1")));
        }
        Ok(Self { lambda, phi: phi.rem_euclid(std::f64::consts::TAU) })
    }

    pub fn lambda(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// The three-qubit state in generalized Schmidt form.
pub fn schmidt_state(p: &SchmidtParams) -> Result<PureState> {
    let [l0, l1, l2, l3, l4] = p.lambda;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0b000] = Complex64::new(l0, 0.0);
    amps[0b100] = Complex64::from_polar(l1, p.phi);
    amps[0b101] = Complex64::new(l2, 0.0);
    amps[0b110] = Complex64::new(l3, 0.0);
    amps[0b111] = Complex64::new(l4, 0.0);
    PureState::new(amps)
}

/// Party order `[B, C]` for [`example_state`] with focus qubit 0.
///
/// `C(ρ_AB) = 2λ0λ2` holds when B is the qubit carrying the last ket symbol,
/// i.e. qubit 2; C is qubit 1.
pub const EXAMPLE_ORDER: [usize; 2] = [2, 1];

/// `λ0 = λ3 = 1/2, λ2 = √2/2`: the state all the worked examples use.
pub fn example_state() -> PureState {
    let p = SchmidtParams::new([0.5, 0.0, std::f64::consts::FRAC_1_SQRT_2, 0.5, 0.0], 0.0)
        .expect("canonical parameters are normalized");
    schmidt_state(&p).expect("canonical parameters are normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> PureState {
        PureState::new(vec![c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]).unwrap()
    }

    fn assert_matrix_eq(a: &CMatrix, b: &CMatrix, tol: f64) {
        assert_eq!(a.shape(), b.shape());
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).norm() <= tol, "{a} != {b}");
        }
    }

    #[test]
    fn pure_state_validation() {
        assert!(PureState::new(vec![c(1.0), c(0.0), c(0.0)]).is_err());
        assert!(PureState::new(vec![c(1.0), c(1.0)]).is_err());
        assert!(PureState::new(vec![c(1.0)]).is_err());
        assert!(PureState::normalized(vec![c(0.0), c(0.0)]).is_err());
        let s = PureState::normalized(vec![c(3.0), c(4.0)]).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[1].re, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn density_matrix_validation() {
        let not_unit = CMatrix::identity(2, 2);
        assert!(DensityMatrix::new(not_unit).is_err());
        let negative = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(DensityMatrix::new(negative).is_err());
        let ok = CMatrix::identity(4, 4).unscale(4.0);
        assert!(DensityMatrix::new(ok).is_ok());
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(vec![]).validate(2).is_err());
        assert!(Bipartition::new(vec![0, 1]).validate(2).is_err());
        assert!(Bipartition::new(vec![2]).validate(2).is_err());
        assert!(Bipartition::new(vec![0, 0]).validate(3).is_err());
        assert_eq!(Bipartition::new(vec![2, 0]).complement(4), vec![1, 3]);
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let rho = partial_trace(&bell().density(), 2, &Bipartition::single(0)).unwrap();
        assert_matrix_eq(rho.matrix(), &CMatrix::identity(2, 2).unscale(2.0), 1e-15);
    }

    #[test]
    fn example_state_marginal_on_a() {
        // oracle: a(i) = Σ_{jk} |ψ_{ijk}|²; the only off-diagonal term couples
        // |0⟩_A with |1⟩_A through matching BC indices, and ψ_{0,bc} ≠ 0 only for bc = 00
        // while ψ_{1,00} = λ1 = 0.
        let psi = example_state();
        let amps = psi.amplitudes();
        let mut oracle = CMatrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                for bc in 0..4 {
                    oracle[(a, b)] += amps[a * 4 + bc] * amps[b * 4 + bc].conj();
                }
            }
        }
        let expected = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.25), c(0.75)]));
        assert_matrix_eq(&oracle, &expected, 1e-15);
        let rho = partial_trace(&psi.density(), 3, &Bipartition::single(0)).unwrap();
        assert_matrix_eq(rho.matrix(), &expected, 1e-15);
        let fast = reduce_pure(&psi, &Bipartition::single(0)).unwrap();
        assert_matrix_eq(fast.matrix(), &expected, 1e-15);
    }

    #[test]
    fn product_state_reduces_to_factor() {
        let zero = PureState::basis(1, 0).unwrap();
        let plus = PureState::new(vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap();
        let psi = zero.tensor(&plus).unwrap();
        let rho = partial_trace(&psi.density(), 2, &Bipartition::single(1)).unwrap();
        assert_matrix_eq(rho.matrix(), plus.density().matrix(), 1e-15);
    }

    #[test]
    fn partial_trace_respects_keep_order() {
        // |01⟩ keeping (1, 0) must give |10⟩⟨10|
        let psi = PureState::basis(2, 0b01).unwrap();
        let rho =
            partial_trace(&PureState::basis(3, 0b010).unwrap().density(), 3, &Bipartition::new(vec![1, 0])).unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0b10, 0b10)].re, 1.0);
        let swapped =
            reduce_pure(&psi.tensor(&PureState::basis(1, 0).unwrap()).unwrap(), &Bipartition::new(vec![1, 0])).unwrap();
        assert_abs_diff_eq!(swapped.matrix()[(0b10, 0b10)].re, 1.0);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = bell().density();
        assert!(partial_trace(&rho, 3, &Bipartition::single(0)).is_err());
        assert!(partial_trace(&rho, 2, &Bipartition::single(5)).is_err());
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        // oracle: explicit block transpose of the 4×4 projector
        let rho = bell().density();
        let m = rho.matrix();
        let mut oracle = CMatrix::zeros(4, 4);
        for (a0, b0) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for i in 0..2 {
                for j in 0..2 {
                    oracle[(b0 * 2 + i, a0 * 2 + j)] = m[(a0 * 2 + i, b0 * 2 + j)];
                }
            }
        }
        let pt = partial_transpose(&rho, 2, &Bipartition::single(0)).unwrap();
        assert_matrix_eq(&pt, &oracle, 0.0);
        let e = eig_hermitian(&pt).unwrap();
        for (got, want) in e.iter().zip([0.5, 0.5, 0.5, -0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn partial_transpose_of_product_and_diagonal() {
        let a = PureState::new(vec![c(0.6), Complex64::new(0.0, 0.8)]).unwrap().density();
        let b = PureState::new(vec![c(FRAC_1_SQRT_2), Complex64::new(0.5, 0.5)]).unwrap().density();
        let prod = a.tensor(&b).unwrap();
        let pt = partial_transpose(&prod, 2, &Bipartition::single(0)).unwrap();
        let expected = a.matrix().transpose().kronecker(b.matrix());
        assert_matrix_eq(&pt, &expected, 1e-15);
        assert!(eig_hermitian(&pt).unwrap().iter().all(|v| *v > -1e-14));

        let diag = DensityMatrix::new(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(0.1),
            c(0.2),
            c(0.3),
            c(0.4),
        ])))
        .unwrap();
        let pt = partial_transpose(&diag, 2, &Bipartition::single(1)).unwrap();
        assert_matrix_eq(&pt, diag.matrix(), 0.0);
    }

    #[test]
    fn schmidt_state_examples() {
        let ghz =
            schmidt_state(&SchmidtParams::new([FRAC_1_SQRT_2, 0.0, 0.0, 0.0, FRAC_1_SQRT_2], 0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(ghz.amplitudes()[0].re, FRAC_1_SQRT_2);
        assert_abs_diff_eq!(ghz.amplitudes()[7].re, FRAC_1_SQRT_2);
        let zero = schmidt_state(&SchmidtParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 1.0).unwrap()).unwrap();
        assert_eq!(zero, PureState::basis(3, 0).unwrap());
        let ex = example_state();
        let expected = [0.5, 0.0, 0.0, 0.0, 0.0, FRAC_1_SQRT_2, 0.5, 0.0];
        for (a, e) in ex.amplitudes().iter().zip(expected) {
            assert_abs_diff_eq!(a.re, e);
            assert_eq!(a.im, 0.0);
        }
        assert!(SchmidtParams::new([0.5, 0.5, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(SchmidtParams::new([-1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn phase_enters_only_the_100_amplitude() {
        let p = SchmidtParams::new([0.6, 0.8, 0.0, 0.0, 0.0], std::f64::consts::FRAC_PI_2).unwrap();
        let psi = schmidt_state(&p).unwrap();
        assert_abs_diff_eq!(psi.amplitudes()[4].im, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.amplitudes()[4].re, 0.0, epsilon = 1e-15);
    }
}
