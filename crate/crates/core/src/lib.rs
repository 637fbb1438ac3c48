//! Closed-form multiqubit entanglement measures and the k-parameterized
//! monogamy/polygamy bound ladders built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`qstate`] | dense states, reductions, partial transposes, spectra |
//! | [`measures`] | concurrence, EoF, negativity, Tsallis-q, Rényi-α |
//! | [`inequalities`] | coefficient `((1+k)^p-1)/k^p`, condition partitioning, reports |
//! | [`verify`] | seeded verification campaigns and tightness tables |
//!
//! Qubit 0 is the most significant bit of a computational-basis index, so
//! `|q0 q1 … q(n-1)⟩` maps to index `q0·2^(n-1) + … + q(n-1)`.
//!
//! ```
//! use monogamy_core::qstate::{schmidt_state, Bipartition, SchmidtParams};
//! use monogamy_core::measures::concurrence_pure;
//!
//! let half_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
//! let params = SchmidtParams::new([0.5, 0.0, half_sqrt2, 0.5, 0.0], 0.0).unwrap();
//! let psi = schmidt_state(&params).unwrap();
//! let c = concurrence_pure(&psi, &Bipartition::new(vec![0])).unwrap();
//! assert!((c - 3f64.sqrt() / 2.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod inequalities;
pub mod measures;
pub mod qstate;
pub mod verify;

pub use error::{Error, Result};
