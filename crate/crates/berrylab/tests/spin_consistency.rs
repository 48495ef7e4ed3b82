//! The spin-1/2 cross-check: the loop phase of each branch equals minus half
//! the signed solid angle of the equivalent-field path, modulo 2π.

use berrylab::phase::{circular_distance, principal};
use berrylab::{berry_phase_analytic, map_to_field, solid_angle, Branch, FieldSpec, TwoLevelParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn loop_phase_is_minus_half_the_signed_solid_angle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50_11D);
    for _ in 0..8 {
        let gap = rng.random_range(0.2..4.0);
        // Keep the cone off the equator so the polygon bias stays below the
        // comparison tolerance at 4096 samples.
        let d0 = gap * rng.random_range(0.05..0.45);
        let omega = rng.random_range(0.005..0.1);
        let phi0 = rng.random_range(-3.1..3.1);
        let mu = rng.random_range(0.5..2.0);
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        for positive in [true, false] {
            let amp = [d0, 0.0, 0.0];
            let spec = if positive {
                FieldSpec::monochromatic_plus(amp, omega, phi0).unwrap()
            } else {
                FieldSpec::monochromatic_minus(amp, omega, phi0).unwrap()
            };
            let cone = solid_angle(&spec, &params, mu, 4096).unwrap();
            for branch in Branch::BOTH {
                let gamma = berry_phase_analytic(&spec, &params, branch, 256)
                    .unwrap()
                    .gamma;
                let from_cone = -branch.sign() * cone.omega_solid / 2.0;
                let defect = circular_distance(principal(gamma), principal(from_cone));
                assert!(
                    defect < 1e-6,
                    "gap={gap} d0={d0} positive={positive} {branch}: defect {defect:e}"
                );
            }
        }
    }
}

#[test]
fn anchor_solid_angle_against_the_cone_formula() {
    // Two representations of the same oriented cone: the polygon sum returns
    // the enclosed principal area −2π(1+cosθ), which equals the textbook
    // 2π(1−cosθ) modulo 4π.
    let params = TwoLevelParams::from_gap(1.0, [1.0, 0.0, 0.0]).unwrap();
    let spec = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], 0.05, 0.0).unwrap();
    let cone = solid_angle(&spec, &params, 1.0, 8192).unwrap();
    let cos_theta = cone.cos_theta;
    let enclosed = -2.0 * std::f64::consts::PI * (1.0 + cos_theta);
    assert!((cone.omega_solid - enclosed).abs() < 1e-6);
    let complement = 2.0 * std::f64::consts::PI * (1.0 - cos_theta);
    let four_pi = 4.0 * std::f64::consts::PI;
    assert!(((cone.omega_solid - complement).rem_euclid(four_pi)).min(
        four_pi - (cone.omega_solid - complement).rem_euclid(four_pi)
    ) < 1e-6);
}

#[test]
fn equivalent_field_magnitude_matches_the_eigenvalue_everywhere() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0);
    let params = TwoLevelParams::from_gap(1.4, [0.7, 0.1, -0.4]).unwrap();
    let spec = FieldSpec::real_fourier(
        0.6,
        0.1,
        &[(1, [0.4, 0.0, 0.0], [0.0, 0.2, 0.0]), (4, [0.0, 0.1, 0.3], [0.2, 0.0, 0.0])],
    )
    .unwrap();
    for _ in 0..50 {
        let t = rng.random_range(0.0..spec.period());
        let mu = rng.random_range(0.3..3.0);
        let b = map_to_field(&spec, &params, mu, t);
        let (_, lambda_plus) =
            berrylab::eigenvalues(&params, spec.drive(&params, t).value);
        assert!((b.magnitude() - lambda_plus / mu).abs() < 1e-12 * lambda_plus);
    }
}

#[test]
fn random_real_drives_project_to_zero_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1A7);
    for _ in 0..10 {
        let gap = rng.random_range(0.3..3.0);
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        let modes: Vec<(u32, [f64; 3], [f64; 3])> = (1..=rng.random_range(1..=5u32))
            .map(|n| {
                (
                    n,
                    [rng.random_range(-1.0..1.0), 0.0, 0.0],
                    [rng.random_range(-1.0..1.0), 0.0, 0.0],
                )
            })
            .collect();
        let spec = FieldSpec::real_fourier(rng.random_range(0.05..1.0), 0.0, &modes).unwrap();
        let cone = solid_angle(&spec, &params, 1.0, 2048).unwrap();
        assert!(cone.omega_solid.abs() < 1e-8, "area {:e}", cone.omega_solid);
    }
}
