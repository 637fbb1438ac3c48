//! Dense complex linear algebra helpers. Eigen- and singular-value work is
//! delegated to `nalgebra`; everything here returns spectra only.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Elementwise Hermiticity tolerance accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Negative eigenvalues down to this value are treated as rounding noise.
pub const PSD_TOL: f64 = 1e-10;

pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn require_square(m: &CMatrix, what: &str) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::invalid(format!("{what}: matrix is {}x{}, expected square", m.nrows(), m.ncols())));
    }
    Ok(())
}

fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).unscale(2.0)
}

/// All eigenvalues of a Hermitian matrix, in descending order.
pub fn eig_hermitian(m: &CMatrix) -> Result<Vec<f64>> {
    require_square(m, "eig_hermitian")?;
    let dev = hermitian_deviation(m);
    if dev > HERMITIAN_TOL {
        return Err(Error::invalid(format!("eig_hermitian: matrix deviates from Hermitian by {dev:e}")));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = SymmetricEigen::new(hermitize(m)).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Returns `W = V·diag(√μ)` with `m = W W†`, negative eigenvalues clamped to zero.
/// The caller guarantees `m` is Hermitian.
pub(crate) fn psd_factor(m: &CMatrix) -> CMatrix {
    let eig = SymmetricEigen::new(hermitize(m));
    let mut w = eig.eigenvectors;
    for (j, mu) in eig.eigenvalues.iter().enumerate() {
        let s = mu.max(0.0).sqrt();
        w.column_mut(j).scale_mut(s);
    }
    w
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Sum of singular values, `tr √(M M†)`.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    require_square(m, "trace_norm")?;
    if hermitian_deviation(m) <= 1e-12 {
        // |eigenvalues| coincide with singular values for Hermitian input
        return Ok(eig_hermitian(m)?.iter().map(|v| v.abs()).sum());
    }
    Ok(singular_values(m).iter().sum())
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eig_of_diagonal_is_sorted_descending() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0), c(1.0), c(2.0)]));
        assert_eq!(eig_hermitian(&m).unwrap(), vec![3.0, 2.0, 1.0]);
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.25), c(0.75)]));
        let e = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(e[0], 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(e[1], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn eig_of_pauli_x() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let e = eig_hermitian(&m).unwrap();
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e[1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::InvalidArgument(_))));
        let rect = CMatrix::zeros(2, 3);
        assert!(eig_hermitian(&rect).is_err());
    }

    #[test]
    fn trace_norm_examples() {
        assert_abs_diff_eq!(trace_norm(&CMatrix::identity(5, 5)).unwrap(), 5.0, epsilon = 1e-12);
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5), c(0.5), c(0.5), c(-0.5)]));
        assert_abs_diff_eq!(trace_norm(&d).unwrap(), 2.0, epsilon = 1e-12);
        assert!(trace_norm(&CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn trace_norm_of_nilpotent_uses_singular_values() {
        // [[0,1],[0,0]] has eigenvalues 0,0 but one unit singular value
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert_abs_diff_eq!(trace_norm(&m).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn psd_factor_reconstructs() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.7), Complex64::new(0.1, 0.2), Complex64::new(0.1, -0.2), c(0.3)]);
        let w = psd_factor(&m);
        let back = &w * w.adjoint();
        for (a, b) in back.iter().zip(m.iter()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-14);
        }
    }
}
