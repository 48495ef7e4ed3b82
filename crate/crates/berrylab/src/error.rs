//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while building systems or running methods.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The level splitting must be strictly positive.
    #[error("degenerate levels: epsilon2 - epsilon1 = {gap:e}, need a strictly positive gap")]
    DegenerateLevels { gap: f64 },

    /// A parameter that must be finite was NaN or infinite.
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    /// Angular frequencies must be positive and finite.
    #[error("invalid angular frequency {omega:e}, need omega > 0")]
    InvalidFrequency { omega: f64 },

    /// A method was asked to run on fewer samples than it can resolve.
    #[error("{method} needs at least {min} samples, got {got}")]
    TooFewSamples {
        method: &'static str,
        min: usize,
        got: usize,
    },

    /// Composite quadrature and the strided Wilson refinement need an even count.
    #[error("{method} needs an even sample count, got {got}")]
    OddSamples { method: &'static str, got: usize },

    /// The propagator refuses to run with an unresolvably coarse grid.
    #[error("propagation needs at least {min} steps, got {got}")]
    TooFewSteps { min: usize, got: usize },

    /// The phase-integral density came out NaN or infinite.
    #[error("non-finite integrand at t = {t:e}")]
    NonFiniteIntegrand { t: f64 },

    /// Consecutive loop eigenstates were nearly orthogonal: the loop is
    /// undersampled for how fast it moves.
    #[error(
        "eigenstate overlap modulus {modulus:e} at sample {index} is below 1e-8; \
         increase the sample count"
    )]
    ZeroOverlap { index: usize, modulus: f64 },

    /// The integrator lost more norm than a trustworthy run allows.
    #[error("norm defect {defect:e} after propagation exceeds 1e-6; increase the step count")]
    NormDrift { defect: f64 },

    /// The equivalent-field path passed through the origin, so its unit-sphere
    /// projection is undefined.
    #[error("field magnitude {magnitude:e} at sample {index} too small to project onto the sphere")]
    OriginOnPath { index: usize, magnitude: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
