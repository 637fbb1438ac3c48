use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{partial_trace, Bipartition, DensityMatrix, PureState, MAX_QUBITS};
use crate::error::{Error, Result};

/// Haar-distributed pure state from a normalized complex Gaussian vector.
pub fn haar_random_pure_with<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> Result<PureState> {
    if !(1..=MAX_QUBITS).contains(&n_qubits) {
        return Err(Error::invalid(format!("n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")));
    }
    let amps: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::normalized(amps)
}

/// Deterministic for a fixed `seed`.
pub fn haar_random_pure(n_qubits: usize, seed: u64) -> Result<PureState> {
    haar_random_pure_with(&mut ChaCha8Rng::seed_from_u64(seed), n_qubits)
}

/// Mixed state obtained by tracing `ancillas` qubits out of a Haar-random pure state.
pub fn haar_random_mixed(n_qubits: usize, ancillas: usize, seed: u64) -> Result<DensityMatrix> {
    if ancillas == 0 {
        return Ok(haar_random_pure(n_qubits, seed)?.density());
    }
    let total = n_qubits + ancillas;
    let psi = haar_random_pure(total, seed)?;
    partial_trace(&psi.density(), total, &Bipartition::new((0..n_qubits).collect()))
}

/// Per-trial seed derived from `(campaign seed, trial index)` with a SplitMix64 step,
/// so results do not depend on execution order.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
