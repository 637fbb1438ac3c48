//! Independent oracles for closed forms: concurrence of assistance against
//! sampled pure-state decompositions.

use monogamy_core::measures::coa_two_qubit;
use monogamy_core::qstate::{haar_random_mixed, CMatrix, DensityMatrix};
use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Columns `√μ_j v_j` spanning every decomposition of `rho`.
fn weighted_eigenvectors(rho: &DensityMatrix) -> CMatrix {
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let mut w = eig.eigenvectors;
    for (j, mu) in eig.eigenvalues.iter().enumerate() {
        w.column_mut(j).scale_mut(mu.max(0.0).sqrt());
    }
    w
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

/// Matrix with orthonormal columns from the QR factor.
fn isometry(m: CMatrix) -> CMatrix {
    m.qr().q()
}

/// `Σ_i p_i C(ψ_i)` for the ensemble `ψ̃_i = Σ_j U_ij w_j`, using
/// `p C(ψ) = 2|ψ̃₁ψ̃₂ - ψ̃₀ψ̃₃|` for unnormalized `ψ̃ = √p ψ`.
fn average_concurrence(w: &CMatrix, u: &CMatrix) -> f64 {
    let states = w * u.transpose();
    (0..states.ncols())
        .map(|i| {
            let s = states.column(i);
            2.0 * (s[1] * s[2] - s[0] * s[3]).norm()
        })
        .sum()
}

/// Best average concurrence found by random restarts and local hill climbing.
fn sampled_coa(rho: &DensityMatrix, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = weighted_eigenvectors(rho);
    let mut best_sample = 0.0_f64;
    let mut best = 0.0_f64;
    for _ in 0..20 {
        let ensemble = 6;
        let mut u = isometry(gaussian(&mut rng, ensemble, 4));
        let mut value = average_concurrence(&w, &u);
        best_sample = best_sample.max(value);
        let mut step = 0.3;
        for _ in 0..3000 {
            let candidate = isometry(&u + gaussian(&mut rng, ensemble, 4).scale(step));
            let v = average_concurrence(&w, &candidate);
            best_sample = best_sample.max(v);
            if v > value {
                value = v;
                u = candidate;
            } else {
                step = (step * 0.995).max(1e-4);
            }
        }
        best = best.max(value);
    }
    (best_sample, best)
}

#[test]
fn coa_of_maximally_mixed_state_is_one() {
    let rho = DensityMatrix::new(CMatrix::identity(4, 4).unscale(4.0)).unwrap();
    let closed = coa_two_qubit(&rho).unwrap();
    assert!((closed - 1.0).abs() < 1e-12);
    let (sampled, optimized) = sampled_coa(&rho, 1);
    assert!(sampled <= closed + 1e-12, "sampled {sampled} exceeds {closed}");
    assert!(optimized >= closed - 1e-3, "optimized {optimized} below {closed}");
}

#[test]
fn coa_closed_form_matches_sampled_maximum() {
    for seed in 0..4 {
        let rho = haar_random_mixed(2, 2, seed).unwrap();
        let closed = coa_two_qubit(&rho).unwrap();
        let (sampled, optimized) = sampled_coa(&rho, 100 + seed);
        assert!(sampled <= closed + 1e-12, "seed {seed}: sampled {sampled} exceeds {closed}");
        assert!(optimized >= closed - 1e-3, "seed {seed}: optimized {optimized} below {closed}");
    }
}
