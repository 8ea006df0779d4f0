//! Second-order short-time Gaussian model of four-mode Raman scattering
//! (pump L, Stokes S, anti-Stokes A, phonon V).
//!
//! [`model`] builds the characteristic-function coefficients, [`witnesses`]
//! evaluates nonclassicality criteria from them, [`catalog`] holds the
//! scenario-specific closed forms and [`distributions`] the count and
//! quasi-intensity statistics.

pub mod catalog;
pub mod distributions;
pub mod error;
pub mod model;
pub mod scenario;
pub mod series;
pub mod witnesses;

pub use error::{ModelError, Result};
pub use model::{
    chaotic_coefficients, coefficients, coherent_coefficients, cross_variance, normal_variance, GaussianCoefficients,
    MeanAmplitudes, ModeId, ModePair, PhononInput, Picture, ScenarioParams,
};
pub use witnesses::{Sign, WitnessId, WitnessKind, WitnessValue};
