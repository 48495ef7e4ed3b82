//! Map onto the spin-1/2 magnetic picture: the drive becomes a precessing
//! effective field, and the geometric phase becomes a solid angle.
//!
//! Writing the shifted Hamiltonian in Pauli matrices gives `μ σ⃗·B⃗(t)` with
//! `B = (Re D, Im D, −Δε/2)/μ`: a field with a constant negative
//! z-component whose transverse part carries the drive. Real drives keep
//! `B_y = 0`, so the field moves along a line in the (x, z) plane and the
//! unit-sphere path encloses no area; complex drives sweep a genuine cone.

use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::model::TwoLevelParams;

const MIN_PATH_SAMPLES: usize = 64;
const MIN_FIELD_MAGNITUDE: f64 = 1e-12;

/// One sample of the equivalent magnetic field, in units where the effective
/// moment `μ` multiplies the Pauli vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentField {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
    /// The effective moment the components were scaled by.
    pub mu: f64,
}

impl EquivalentField {
    /// `|B|`; equals `λ₊/μ` at every instant.
    pub fn magnitude(&self) -> f64 {
        self.bz.hypot(self.bx.hypot(self.by))
    }
}

/// Signed solid angle of the closed equivalent-field path.
#[derive(Debug, Clone, Copy)]
pub struct SolidAngleResult {
    /// Signed spherical area enclosed by the unit-field path, in steradians.
    ///
    /// Orientation convention: the loop phase of branch `l` satisfies
    /// `γ_l ≡ −l·Ω/2 (mod 2π)`, which makes Ω negative for the
    /// positive-frequency drive (azimuth decreasing in time). The polygon sum
    /// returns the principal enclosed area; the cone formula `±2π(1−cosθ)`
    /// agrees with it modulo 4π.
    pub omega_solid: f64,
    /// `B_z/|B|` at `t = 0`: the cone half-angle cosine for constant-modulus
    /// drives, always negative since `B_z < 0`.
    pub cos_theta: f64,
}

/// The equivalent field at one instant: `(Re D, Im D, −Δε/2)/μ`.
///
/// `mu` must be positive; it cancels out of every geometric quantity and is
/// kept only to preserve the magnetic form of the Hamiltonian.
pub fn map_to_field(
    spec: &FieldSpec,
    params: &TwoLevelParams,
    mu: f64,
    t: f64,
) -> EquivalentField {
    assert!(mu > 0.0, "effective moment must be positive");
    let d = spec.drive(params, t).value;
    EquivalentField {
        bx: d.re / mu,
        by: d.im / mu,
        bz: -params.half_gap() / mu,
        mu,
    }
}

/// Signed solid angle subtended at the origin by the closed path `B(t)`,
/// `t ∈ [0, T]`, from `samples` uniform path points.
///
/// The path is projected onto the unit sphere and fanned into spherical
/// triangles from the first sample; each triangle contributes its l'Huilier
/// excess, signed by the orientation of its vertex triple. Degenerate paths
/// (real drives, constant drives) enclose no area and return zero without
/// special-casing. Since `B_z < 0` the whole path sits in an open hemisphere,
/// so the fan decomposition is unambiguous.
pub fn solid_angle(
    spec: &FieldSpec,
    params: &TwoLevelParams,
    mu: f64,
    samples: usize,
) -> Result<SolidAngleResult> {
    assert!(mu > 0.0, "effective moment must be positive");
    if samples < MIN_PATH_SAMPLES {
        return Err(Error::TooFewSamples {
            method: "solid angle",
            min: MIN_PATH_SAMPLES,
            got: samples,
        });
    }
    let period = spec.period();
    let h = period / samples as f64;
    let mut path = Vec::with_capacity(samples);
    for k in 0..samples {
        let b = map_to_field(spec, params, mu, k as f64 * h);
        let magnitude = b.magnitude();
        if magnitude < MIN_FIELD_MAGNITUDE {
            return Err(Error::OriginOnPath {
                index: k,
                magnitude,
            });
        }
        path.push([b.bx / magnitude, b.by / magnitude, b.bz / magnitude]);
    }

    let anchor = path[0];
    let mut area = 0.0;
    for k in 1..samples - 1 {
        area += signed_excess(anchor, path[k], path[k + 1]);
    }
    // Flip to the loop-phase orientation: γ_l ≡ −l·Ω/2 with the
    // positive-frequency anchor fixing the sign.
    let omega_solid = -area;

    let b0 = map_to_field(spec, params, mu, 0.0);
    Ok(SolidAngleResult {
        omega_solid,
        cos_theta: b0.bz / b0.magnitude(),
    })
}

/// Signed spherical excess of the triangle `(p, q, r)` on the unit sphere:
/// l'Huilier's formula for the magnitude, the sign of the vertex triple
/// product for the orientation.
fn signed_excess(p: [f64; 3], q: [f64; 3], r: [f64; 3]) -> f64 {
    let a = arc(q, r);
    let b = arc(p, r);
    let c = arc(p, q);
    let s = 0.5 * (a + b + c);
    let product = (0.5 * s).tan()
        * (0.5 * (s - a)).tan()
        * (0.5 * (s - b)).tan()
        * (0.5 * (s - c)).tan();
    // Roundoff can push a degenerate triangle's product slightly negative.
    let excess = 4.0 * product.max(0.0).sqrt().atan();
    let orientation = dot(p, cross(q, r));
    if orientation == 0.0 {
        0.0
    } else {
        excess.copysign(orientation)
    }
}

/// Arc length between two unit vectors, robust near 0 and π.
fn arc(x: [f64; 3], y: [f64; 3]) -> f64 {
    norm(cross(x, y)).atan2(dot(x, y))
}

fn dot(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn cross(x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    [
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ]
}

fn norm(x: [f64; 3]) -> f64 {
    dot(x, x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystem::radius;
    use approx::assert_relative_eq;
    use num_complex::Complex64 as C64;

    fn params_x() -> TwoLevelParams {
        TwoLevelParams::from_gap(1.0, [1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn real_drive_has_no_transverse_y_component() {
        let p = params_x();
        let f = FieldSpec::real_cosine([0.7, 0.0, 0.0], 0.5, 0.2).unwrap();
        for k in 0..20 {
            let b = map_to_field(&f, &p, 1.0, 0.37 * k as f64);
            assert_eq!(b.by, 0.0);
            assert_eq!(b.bz, -0.5);
        }
    }

    #[test]
    fn anchor_field_sample_at_time_zero() {
        let p = params_x();
        let f = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], 0.3, 0.0).unwrap();
        let b = map_to_field(&f, &p, 1.0, 0.0);
        assert_relative_eq!(b.bx, 0.5, epsilon = 1e-15);
        assert_eq!(b.by, 0.0);
        assert_eq!(b.bz, -0.5);
    }

    #[test]
    fn zero_drive_leaves_the_field_on_the_negative_z_axis() {
        let p = TwoLevelParams::from_gap(1.0, [0.0, 0.0, 1.0]).unwrap();
        let f = FieldSpec::real_cosine([1.0, 0.0, 0.0], 1.0, 0.0).unwrap();
        let b = map_to_field(&f, &p, 2.0, 0.4);
        assert_eq!((b.bx, b.by), (0.0, 0.0));
        assert_eq!(b.bz, -0.25);
    }

    #[test]
    fn field_magnitude_tracks_the_upper_eigenvalue() {
        let p = params_x();
        let f = FieldSpec::monochromatic_minus([0.8, 0.0, 0.0], 0.4, 1.1).unwrap();
        for k in 0..15 {
            let t = 0.9 * k as f64;
            let b = map_to_field(&f, &p, 1.7, t);
            let lam = radius(p.half_gap(), f.drive(&p, t).modulus);
            assert_relative_eq!(b.magnitude(), lam / 1.7, epsilon = 1e-14);
        }
    }

    #[test]
    fn real_cosine_path_encloses_no_area() {
        let p = params_x();
        let f = FieldSpec::real_cosine([0.9, 0.0, 0.0], 1.0, 0.3).unwrap();
        let result = solid_angle(&f, &p, 1.0, 512).unwrap();
        assert!(result.omega_solid.abs() < 1e-8);
    }

    #[test]
    fn constant_drive_is_a_single_point() {
        let p = params_x();
        let c = [C64::new(0.3, 0.6), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let f = FieldSpec::fourier(
            1.0,
            0.0,
            vec![crate::fields::FourierTerm { n: 0, coefficient: c }],
        )
        .unwrap();
        let result = solid_angle(&f, &p, 1.0, 128).unwrap();
        assert_eq!(result.omega_solid, 0.0);
    }

    #[test]
    fn plus_drive_anchor_cone() {
        // cosθ = −(Δε/2)/λ₊ = −1/√2; enclosed area −2π(1+cosθ), frozen.
        let p = params_x();
        let f = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], 0.2, 0.0).unwrap();
        let result = solid_angle(&f, &p, 1.0, 4096).unwrap();
        assert_relative_eq!(result.cos_theta, -0.7071067811865475, epsilon = 1e-14);
        assert_relative_eq!(result.omega_solid, -1.8403023690212206, epsilon = 1e-6);
        assert!(result.omega_solid < 0.0);
    }

    #[test]
    fn solid_angle_is_mu_invariant() {
        let p = params_x();
        let f = FieldSpec::monochromatic_minus([0.4, 0.0, 0.0], 0.2, 0.9).unwrap();
        let a = solid_angle(&f, &p, 1.0, 1024).unwrap();
        let b = solid_angle(&f, &p, 7.3, 1024).unwrap();
        assert!((a.omega_solid - b.omega_solid).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples_is_rejected() {
        let p = params_x();
        let f = FieldSpec::real_cosine([1.0, 0.0, 0.0], 1.0, 0.0).unwrap();
        assert!(matches!(
            solid_angle(&f, &p, 1.0, 32),
            Err(Error::TooFewSamples { .. })
        ));
    }
}
