//! Closed-form instantaneous eigenvalues and eigenvectors of the shifted
//! Hamiltonian, per branch `l = ±1`.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::model::TwoLevelParams;

/// Below `|d| < SINGULAR_DRIVE_FACTOR · Δε` the upper-branch eigenvector is
/// the decoupled limit `(0, 1)`: both closed-form factors vanish there and the
/// drive carries no usable phase.
const SINGULAR_DRIVE_FACTOR: f64 = 1e-14;

/// Label of an instantaneous energy branch.
///
/// Branches are identified by the sign of their eigenvalue, never by sorting,
/// so they stay continuous across parameter sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `l = −1`, eigenvalue `−√((Δε/2)² + |D|²)`.
    Lower,
    /// `l = +1`, eigenvalue `+√((Δε/2)² + |D|²)`.
    Upper,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Lower, Branch::Upper];

    /// The branch sign `l` as a float.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Lower => -1.0,
            Branch::Upper => 1.0,
        }
    }

    pub fn from_sign(sign: i32) -> Option<Branch> {
        match sign {
            -1 => Some(Branch::Lower),
            1 => Some(Branch::Upper),
            _ => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Lower => write!(f, "-1"),
            Branch::Upper => write!(f, "+1"),
        }
    }
}

/// One instantaneous eigenpair of the shifted Hamiltonian.
///
/// The gauge is fixed by writing the first component real and non-negative:
/// `W_l = (u, v)` with `u = √A_l` and `v = l · d / √(2 F_l)`, where
///
/// ```text
/// A_l = 1/2 − l (Δε/4) / √((Δε/2)² + |d|²)
/// F_l = (Δε/2)² + |d|² − l (Δε/2) √((Δε/2)² + |d|²)
/// ```
///
/// so that all phase information sits in `v`, which for a drive
/// `d = |d| e^{iφ}` reads `|v| e^{iφ}` on the upper branch.
#[derive(Debug, Clone, Copy)]
pub struct Eigensystem {
    pub branch: Branch,
    /// Instantaneous eigenvalue `l √((Δε/2)² + |d|²)`.
    pub lambda: f64,
    /// Weight `A_l` of the first component, in `[0, 1]`.
    pub a: f64,
    /// Normalization factor `F_l ≥ 0` of the second component.
    pub f: f64,
    /// First eigenvector component, real and non-negative.
    pub u: f64,
    /// Second eigenvector component, carries the drive phase.
    pub v: C64,
}

impl Eigensystem {
    /// The eigenvector as a two-component state.
    pub fn state(&self) -> [C64; 2] {
        [C64::new(self.u, 0.0), self.v]
    }
}

/// Radius `√((Δε/2)² + |d|²)` of the instantaneous spectrum: the two
/// eigenvalues sit at `±radius`, so the gap never closes while `Δε > 0`.
pub(crate) fn radius(half_gap: f64, drive_modulus: f64) -> f64 {
    half_gap.hypot(drive_modulus)
}

/// Normalization factor `F_l`, evaluated in cancellation-free form.
///
/// The textbook expression `r² − l (Δε/2) r` loses all digits on the upper
/// branch for `|d| ≪ Δε`; multiplying through by the conjugate gives
/// `F₊ = r |d|² / (r + Δε/2)`, exact in the same limit.
pub(crate) fn normalizer(half_gap: f64, drive_norm_sqr: f64, branch: Branch) -> f64 {
    let r = radius(half_gap, drive_norm_sqr.sqrt());
    match branch {
        Branch::Lower => r * (r + half_gap),
        Branch::Upper => r * drive_norm_sqr / (r + half_gap),
    }
}

/// Both instantaneous eigenvalues, returned as `(λ₋, λ₊) = (−r, +r)`.
pub fn eigenvalues(params: &TwoLevelParams, drive: C64) -> (f64, f64) {
    let r = radius(params.half_gap(), drive.norm());
    (-r, r)
}

/// The instantaneous eigenpair of the requested branch.
///
/// Away from `d = 0` the residual `‖H' W − λ W‖` is at machine level. At the
/// upper-branch singular point (see [`SINGULAR_DRIVE_FACTOR`]) the returned
/// limit vector `(0, 1)` is the exact eigenvector of the decoupled
/// Hamiltonian.
pub fn eigenvector(params: &TwoLevelParams, drive: C64, branch: Branch) -> Eigensystem {
    let half_gap = params.half_gap();
    let dm = drive.norm();
    let r = radius(half_gap, dm);
    match branch {
        Branch::Lower => {
            let a = (r + half_gap) / (2.0 * r);
            let f = r * (r + half_gap);
            Eigensystem {
                branch,
                lambda: -r,
                a,
                f,
                u: a.sqrt(),
                v: -drive / (2.0 * f).sqrt(),
            }
        }
        Branch::Upper => {
            if dm < SINGULAR_DRIVE_FACTOR * params.delta_epsilon() {
                return Eigensystem {
                    branch,
                    lambda: r,
                    a: 0.0,
                    f: 0.0,
                    u: 0.0,
                    v: C64::new(1.0, 0.0),
                };
            }
            let m = dm * dm;
            let a = m / (2.0 * r * (r + half_gap));
            let f = r * m / (r + half_gap);
            Eigensystem {
                branch,
                lambda: r,
                a,
                f,
                u: a.sqrt(),
                // d / √(2 F₊) with F₊ in the stable form above.
                v: drive * ((r + half_gap) / (2.0 * r * m)).sqrt(),
            }
        }
    }
}
