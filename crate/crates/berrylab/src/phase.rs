//! Small helpers for angles that live on the circle.

use std::f64::consts::{PI, TAU};

/// Reduce an angle to the principal interval `(−π, π]`.
pub fn principal(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    principal(a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_maps_into_half_open_interval() {
        assert_eq!(principal(0.0), 0.0);
        assert_eq!(principal(PI), PI);
        assert_eq!(principal(-PI), PI);
        assert!((principal(3.0 * PI) - PI).abs() < 1e-15);
        assert!((principal(-5.363034122668976) - 0.920151184510610).abs() < 1e-12);
        for k in -4..=4 {
            let x = 0.7 + TAU * k as f64;
            assert!((principal(x) - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn circular_distance_ignores_winding() {
        assert!(circular_distance(0.1, 0.1 + TAU) < 1e-15);
        assert!((circular_distance(PI - 0.05, -PI + 0.05) - 0.1).abs() < 1e-12);
    }
}
