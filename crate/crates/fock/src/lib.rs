//! Brute-force oracle: exact evolution of the four-mode Raman Hamiltonian
//! on a truncated Fock space.
//!
//! The state is a dense amplitude tensor indexed `[n_L][n_S][n_A][n_V]`.
//! Evolution runs in the lab frame with fixed-step RK4 and Richardson step
//! doubling; moments are rotated into the interaction picture before they
//! are compared with the second-order model.

pub mod counting;
pub mod evolve;
pub mod moments;
pub mod state;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("cutoff {cutoff} for mode {mode} leaves norm deficit {deficit:.3e}; try cutoff {suggested}")]
    Cutoff { mode: &'static str, cutoff: usize, deficit: f64, suggested: usize },
    #[error("truncation leakage {0:.3e} exceeds 1e-6; raise the cutoffs")]
    Leakage(f64),
    #[error("integration did not converge: {0}")]
    Integration(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error(transparent)]
    Model(#[from] raman_nc::ModelError),
}

pub type Result<T> = std::result::Result<T, OracleError>;

pub use counting::joint_counting;
pub use evolve::{evolve, evolve_ensemble, evolve_fixed, EvolutionReport, EvolveOptions};
pub use moments::{extract_moments, MomentReport, OracleCoefficients};
pub use state::{prepare_initial, Cutoffs, Ensemble, FockState, PrepareOptions};
pub use verify::{verify_short_time, verify_targets, ConvergencePoint, ConvergenceReport, OracleRun, OracleTarget, VerifyOptions, VerifyOutput};
