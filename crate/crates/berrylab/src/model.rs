//! Physical parameters of the two-level system and the shifted Hamiltonian.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Energies of the two bare levels and the fixed real dipole vector coupling
/// them, in natural units.
///
/// The basis is chosen so that the dipole matrix element is real, and the
/// levels are strictly non-degenerate: `epsilon1 < epsilon2`. Both are enforced
/// at construction; values are immutable afterwards, so every downstream
/// computation can assume a positive gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    epsilon1: f64,
    epsilon2: f64,
    d12: [f64; 3],
}

impl TwoLevelParams {
    /// Build from the two level energies and the real dipole vector.
    pub fn new(epsilon1: f64, epsilon2: f64, d12: [f64; 3]) -> Result<Self> {
        if !epsilon1.is_finite() || !epsilon2.is_finite() {
            return Err(Error::NonFinite {
                what: "level energy",
            });
        }
        if d12.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                what: "dipole vector component",
            });
        }
        let gap = epsilon2 - epsilon1;
        if !(gap > 0.0) {
            return Err(Error::DegenerateLevels { gap });
        }
        Ok(Self {
            epsilon1,
            epsilon2,
            d12,
        })
    }

    /// Build a gap-centred system: levels at `∓ delta_epsilon / 2`.
    ///
    /// All shifted-frame quantities depend on the energies only through the
    /// gap, so this is the usual entry point.
    pub fn from_gap(delta_epsilon: f64, d12: [f64; 3]) -> Result<Self> {
        if !delta_epsilon.is_finite() {
            return Err(Error::NonFinite {
                what: "level splitting",
            });
        }
        Self::new(-0.5 * delta_epsilon, 0.5 * delta_epsilon, d12)
    }

    pub fn epsilon1(&self) -> f64 {
        self.epsilon1
    }

    pub fn epsilon2(&self) -> f64 {
        self.epsilon2
    }

    pub fn d12(&self) -> [f64; 3] {
        self.d12
    }

    /// Level splitting `Δε = ε₂ − ε₁ > 0`.
    pub fn delta_epsilon(&self) -> f64 {
        self.epsilon2 - self.epsilon1
    }

    /// Half the splitting, the diagonal scale of the shifted Hamiltonian.
    pub fn half_gap(&self) -> f64 {
        0.5 * self.delta_epsilon()
    }

    /// The scalar drive `D = d₁₂ · E` for a field value `E`.
    ///
    /// A plain dot product, no conjugation: the dipole vector is real by the
    /// basis choice. Field components transverse to `d₁₂` drop out here, which
    /// is why two fields with equal projection on `d₁₂` produce identical
    /// physics.
    pub fn drive_value(&self, field_value: [C64; 3]) -> C64 {
        self.d12[0] * field_value[0] + self.d12[1] * field_value[1] + self.d12[2] * field_value[2]
    }

    /// The shifted Hamiltonian `H'` for a drive value `d`.
    pub fn hamiltonian(&self, drive: C64) -> HamiltonianMatrix {
        HamiltonianMatrix {
            half_gap: self.half_gap(),
            drive,
        }
    }
}

/// The traceless 2×2 Hamiltonian `[[−Δε/2, d*], [d, +Δε/2]]`.
///
/// Stored as the half-gap and the drive value, so Hermiticity, the real
/// diagonal and the zero trace hold exactly by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianMatrix {
    half_gap: f64,
    drive: C64,
}

impl HamiltonianMatrix {
    /// Half the level splitting sitting on the diagonal.
    pub fn half_gap(&self) -> f64 {
        self.half_gap
    }

    /// The off-diagonal drive value (row 1, column 0 entry).
    pub fn drive(&self) -> C64 {
        self.drive
    }

    /// Matrix entry, row-major with `row, col` in `{0, 1}`.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        match (row, col) {
            (0, 0) => C64::new(-self.half_gap, 0.0),
            (0, 1) => self.drive.conj(),
            (1, 0) => self.drive,
            (1, 1) => C64::new(self.half_gap, 0.0),
            _ => panic!("2x2 matrix index out of range: ({row}, {col})"),
        }
    }

    /// The full matrix as a row-major array.
    pub fn entries(&self) -> [[C64; 2]; 2] {
        [
            [self.entry(0, 0), self.entry(0, 1)],
            [self.entry(1, 0), self.entry(1, 1)],
        ]
    }

    /// Exactly zero by construction; kept for self-checks.
    pub fn trace(&self) -> C64 {
        self.entry(0, 0) + self.entry(1, 1)
    }

    /// Apply to a two-component state.
    pub fn apply(&self, psi: [C64; 2]) -> [C64; 2] {
        [
            -self.half_gap * psi[0] + self.drive.conj() * psi[1],
            self.drive * psi[0] + self.half_gap * psi[1],
        ]
    }
}
