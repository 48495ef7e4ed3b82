//! Property tests for the closed-form eigensystem against algebraic
//! invariants and an independent dense Hermitian solver.

use berrylab::{eigenvalues, eigenvector, Branch, Complex64 as C64, TwoLevelParams};
use nalgebra::{Complex, Matrix2};
use proptest::prelude::*;

fn dense_eigen(params: &TwoLevelParams, drive: C64) -> (f64, f64, [C64; 2], [C64; 2]) {
    let a = params.half_gap();
    let m = Matrix2::new(
        Complex::new(-a, 0.0),
        Complex::new(drive.re, -drive.im),
        Complex::new(drive.re, drive.im),
        Complex::new(a, 0.0),
    );
    let eig = m.symmetric_eigen();
    let (lo, hi) = if eig.eigenvalues[0] <= eig.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let column = |j: usize| -> [C64; 2] {
        [
            C64::new(eig.eigenvectors[(0, j)].re, eig.eigenvectors[(0, j)].im),
            C64::new(eig.eigenvectors[(1, j)].re, eig.eigenvectors[(1, j)].im),
        ]
    };
    (
        eig.eigenvalues[lo],
        eig.eigenvalues[hi],
        column(lo),
        column(hi),
    )
}

fn inner(x: [C64; 2], y: [C64; 2]) -> C64 {
    x[0].conj() * y[0] + x[1].conj() * y[1]
}

/// Distance between two unit vectors after aligning global phase.
fn distance_up_to_phase(x: [C64; 2], y: [C64; 2]) -> f64 {
    let overlap = inner(x, y);
    if overlap.norm() == 0.0 {
        return 2.0;
    }
    let aligned = [
        x[0] * overlap / overlap.norm(),
        x[1] * overlap / overlap.norm(),
    ];
    ((aligned[0] - y[0]).norm_sqr() + (aligned[1] - y[1]).norm_sqr()).sqrt()
}

fn gap_strategy() -> impl Strategy<Value = f64> {
    (-2.0f64..1.0).prop_map(|e| 10f64.powf(e))
}

fn drive_strategy() -> impl Strategy<Value = C64> {
    ((-5.0f64..5.0), (-5.0f64..5.0)).prop_map(|(re, im)| C64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normalization_and_identity(gap in gap_strategy(), d in drive_strategy()) {
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        prop_assume!(d.norm() > 1e-12 * gap);
        for branch in Branch::BOTH {
            let w = eigenvector(&params, d, branch);
            let norm = w.u * w.u + w.v.norm_sqr();
            prop_assert!((norm - 1.0).abs() < 1e-12, "norm defect {:e}", norm - 1.0);
            let identity = w.a + d.norm_sqr() / (2.0 * w.f);
            prop_assert!((identity - 1.0).abs() < 1e-12, "identity defect {:e}", identity - 1.0);
            prop_assert!((0.0..=1.0).contains(&w.a));
            prop_assert!(w.f >= 0.0);
            prop_assert!(w.u >= 0.0);
        }
    }

    #[test]
    fn orthogonality_and_residual(gap in gap_strategy(), d in drive_strategy()) {
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        let lower = eigenvector(&params, d, Branch::Lower);
        let upper = eigenvector(&params, d, Branch::Upper);
        prop_assert!(inner(lower.state(), upper.state()).norm() < 1e-12);

        let h = params.hamiltonian(d);
        let scale = params.half_gap().max(d.norm());
        for w in [&lower, &upper] {
            let hw = h.apply(w.state());
            let expect = w.state().map(|c| w.lambda * c);
            let residual =
                ((hw[0] - expect[0]).norm_sqr() + (hw[1] - expect[1]).norm_sqr()).sqrt();
            prop_assert!(residual <= 1e-12 * scale, "residual {residual:e} at scale {scale:e}");
        }
    }

    #[test]
    fn gap_never_closes(gap in gap_strategy(), d in drive_strategy()) {
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        let (lo, hi) = eigenvalues(&params, d);
        prop_assert!(hi > 0.0 && lo < 0.0);
        prop_assert!(hi - lo >= params.delta_epsilon());
    }

    #[test]
    fn agrees_with_dense_solver(gap in gap_strategy(), d in drive_strategy()) {
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        let (lo, hi) = eigenvalues(&params, d);
        let (dense_lo, dense_hi, dense_lower, dense_upper) = dense_eigen(&params, d);
        prop_assert!((lo - dense_lo).abs() <= 1e-13 * params.half_gap().max(d.norm()).max(1.0));
        prop_assert!((hi - dense_hi).abs() <= 1e-13 * params.half_gap().max(d.norm()).max(1.0));

        prop_assume!(d.norm() > 1e-10 * gap);
        let lower = eigenvector(&params, d, Branch::Lower);
        let upper = eigenvector(&params, d, Branch::Upper);
        prop_assert!(distance_up_to_phase(dense_lower, lower.state()) < 1e-11);
        prop_assert!(distance_up_to_phase(dense_upper, upper.state()) < 1e-11);
    }

    #[test]
    fn hamiltonian_is_hermitian_for_every_drive(gap in gap_strategy(), d in drive_strategy()) {
        let params = TwoLevelParams::from_gap(gap, [1.0, 0.0, 0.0]).unwrap();
        let h = params.hamiltonian(d);
        prop_assert_eq!(h.entry(0, 1), h.entry(1, 0).conj());
        prop_assert_eq!(h.entry(0, 0).im, 0.0);
        prop_assert_eq!(h.entry(1, 1).im, 0.0);
        prop_assert_eq!(h.trace(), C64::new(0.0, 0.0));
    }
}
