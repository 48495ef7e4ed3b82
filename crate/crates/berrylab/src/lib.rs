//! Numerical laboratory for the geometric phases of a dipole-coupled two-level
//! system.
//!
//! A non-degenerate two-level system (gap `Δε = ε₂ − ε₁ > 0`) couples to a
//! periodic classical electric field `E(t)` through a fixed real dipole vector
//! `d₁₂`, in the electric dipole approximation and natural units (`ħ = c = 1`).
//! After removing the trivial mean-energy shift, the only drive that matters is
//! the complex scalar `D(t) = d₁₂ · E(t)` sitting on the off-diagonal of
//!
//! ```text
//!         ⎛ −Δε/2   D*(t) ⎞
//! H'(t) = ⎜               ⎟
//!         ⎝  D(t)   +Δε/2 ⎠
//! ```
//!
//! The crate provides closed-form instantaneous eigensystems of `H'(t)` and
//! four independent routes to the geometric (Berry) phase accumulated by each
//! eigenstate branch over one drive period:
//!
//! * [`berryphase::berry_phase_analytic`] — quadrature of the loop integral
//!   `γ_l = ½ ∮ Im(D̄ Ḋ) / F_l dt`,
//! * [`berryphase::berry_phase_wilson`] — a gauge-invariant discrete loop of
//!   eigenvector overlaps,
//! * [`propagator::propagate`] — direct integration of the time-dependent
//!   Schrödinger equation with the dynamical phase subtracted,
//! * [`spinmap::solid_angle`] — the spin-1/2 picture: the drive maps onto a
//!   precessing magnetic field whose unit-sphere path subtends a solid angle
//!   `Ω` with `γ_l ≡ −l·Ω/2 (mod 2π)`.
//!
//! All four report the loop phase in one fixed orientation convention: the
//! positive-frequency monochromatic drive `E₀ e^{−i(ωt+φ₀)}` gives the upper
//! branch `γ₊ = −π|D₀|²/F₊ < 0`. Real periodic fields of any shape give zero
//! geometric phase on both branches; positive- and negative-frequency drives
//! give phases of opposite sign.

pub mod berryphase;
pub mod eigensystem;
pub mod error;
pub mod fields;
pub mod model;
pub mod phase;
pub mod propagator;
pub mod spinmap;

pub use berryphase::{
    berry_phase_analytic, berry_phase_wilson, connection_decomposition, BerryPhaseResult,
    ConnectionSample, Method,
};
pub use eigensystem::{eigenvalues, eigenvector, Branch, Eigensystem};
pub use error::{Error, Result};
pub use fields::{DriveSample, FieldSpec, FourierTerm};
pub use model::{HamiltonianMatrix, TwoLevelParams};
pub use propagator::{propagate, PropagationRun};
pub use spinmap::{map_to_field, solid_angle, EquivalentField, SolidAngleResult};

pub use num_complex::Complex64;
