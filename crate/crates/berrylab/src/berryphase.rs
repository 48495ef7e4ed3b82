//! Geometric phase of one eigenstate branch around one drive period, by the
//! closed-form loop integral and by a gauge-invariant discrete Wilson loop.
//!
//! Both methods report the loop phase in the same orientation convention,
//! fixed by the positive-frequency anchor `γ₊ = −π|D₀|²/F₊` (see the crate
//! docs). The analytic value is the unreduced integral; the Wilson loop can
//! only resolve the principal value in `(−π, π]`, so comparisons between the
//! two must reduce the analytic value first.

use num_complex::Complex64 as C64;
use std::f64::consts::{PI, TAU};

use crate::eigensystem::{self, eigenvector, Branch};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::model::TwoLevelParams;
use crate::phase::circular_distance;

/// Which route produced a [`BerryPhaseResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    AnalyticQuadrature,
    WilsonLoop,
}

/// A geometric phase measurement.
#[derive(Debug, Clone, Copy)]
pub struct BerryPhaseResult {
    pub branch: Branch,
    /// The phase, in radians. Unreduced for the quadrature method, principal
    /// value in `(−π, π]` for the Wilson loop.
    pub gamma: f64,
    pub method: Method,
    /// Samples (quadrature panels or loop points) requested.
    pub samples: usize,
    /// Richardson-style estimate from one grid refinement.
    pub error_estimate: f64,
}

/// The Berry-connection density at one instant, split into the piece that is
/// a perfect time derivative (and so integrates to zero over the loop) and
/// the geometric piece that survives.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionSample {
    /// `d/dt [A_l/2 + |D|²/(4 F_l)]`: the conservative part. Identically zero
    /// by the normalization identity `A_l + |D|²/(2 F_l) = 1`; evaluated here
    /// from the two independent closed forms so the cancellation is measured,
    /// not assumed.
    pub gradient_part: f64,
    /// `Im(D̄ Ḋ)/F_l`, equal to `|D|² φ̇ / F_l` wherever the polar phase is
    /// defined, but smooth through zeros of a real drive.
    pub geometric_part: f64,
}

const MIN_QUADRATURE_PANELS: usize = 16;
const MIN_LOOP_SAMPLES: usize = 64;
const MIN_OVERLAP_MODULUS: f64 = 1e-8;

/// Geometric phase by composite-Simpson quadrature of
/// `γ_l = ½ ∮ Im(D̄ Ḋ)/F_l dt` over one period.
///
/// The integrand is smooth and periodic, so Simpson converges spectrally; the
/// error estimate compares the `n`-panel and `2n`-panel sums and the returned
/// value is the refined one. The result is the unreduced loop integral:
/// phases beyond `(−π, π]` are physical here.
pub fn berry_phase_analytic(
    spec: &FieldSpec,
    params: &TwoLevelParams,
    branch: Branch,
    samples: usize,
) -> Result<BerryPhaseResult> {
    if samples < MIN_QUADRATURE_PANELS {
        return Err(Error::TooFewSamples {
            method: "analytic quadrature",
            min: MIN_QUADRATURE_PANELS,
            got: samples,
        });
    }
    if samples % 2 != 0 {
        return Err(Error::OddSamples {
            method: "analytic quadrature",
            got: samples,
        });
    }
    let coarse = simpson_loop(spec, params, branch, samples)?;
    let fine = simpson_loop(spec, params, branch, 2 * samples)?;
    Ok(BerryPhaseResult {
        branch,
        gamma: 0.5 * fine,
        method: Method::AnalyticQuadrature,
        samples,
        error_estimate: 0.5 * (fine - coarse).abs() / 15.0,
    })
}

/// Composite Simpson of the connection density over `[0, T]`.
fn simpson_loop(
    spec: &FieldSpec,
    params: &TwoLevelParams,
    branch: Branch,
    panels: usize,
) -> Result<f64> {
    let period = spec.period();
    let h = period / panels as f64;
    let eval = |k: usize| -> Result<f64> {
        let t = k as f64 * h;
        let density = geometric_density(spec, params, branch, t);
        if !density.is_finite() {
            return Err(Error::NonFiniteIntegrand { t });
        }
        Ok(density)
    };
    let mut sum = eval(0)? + eval(panels)?;
    for k in 1..panels {
        sum += if k % 2 == 1 { 4.0 } else { 2.0 } * eval(k)?;
    }
    Ok(sum * h / 3.0)
}

/// `Im(D̄ Ḋ)/F_l` at time `t`.
///
/// A real drive gives an imaginary part that is exactly zero, which also
/// covers the only point where `F₊` can vanish: `|Im(D̄ Ḋ)| ≤ |D||Ḋ|`, so the
/// numerator vanishes with the drive and the limit value is zero.
fn geometric_density(spec: &FieldSpec, params: &TwoLevelParams, branch: Branch, t: f64) -> f64 {
    let s = spec.drive(params, t);
    let numerator = (s.value.conj() * s.derivative).im;
    if numerator == 0.0 {
        return 0.0;
    }
    numerator / eigensystem::normalizer(params.half_gap(), s.value.norm_sqr(), branch)
}

/// Geometric phase from the discrete loop of eigenvector overlaps,
/// `γ = arg Π_k ⟨W_l(t_k) | W_l(t_{k+1 mod N})⟩` over `t_k = k T / N`.
///
/// Gauge invariant by construction: a per-sample phase twirl telescopes away
/// around the closed loop. The product's argument is the principal value in
/// `(−π, π]`; the error estimate compares against the half-resolution loop
/// over every second sample.
pub fn berry_phase_wilson(
    spec: &FieldSpec,
    params: &TwoLevelParams,
    branch: Branch,
    samples: usize,
) -> Result<BerryPhaseResult> {
    if samples < MIN_LOOP_SAMPLES {
        return Err(Error::TooFewSamples {
            method: "wilson loop",
            min: MIN_LOOP_SAMPLES,
            got: samples,
        });
    }
    if samples % 2 != 0 {
        return Err(Error::OddSamples {
            method: "wilson loop",
            got: samples,
        });
    }
    let period = spec.period();
    let h = period / samples as f64;
    let states: Vec<(f64, C64)> = (0..samples)
        .map(|k| {
            let d = spec.drive(params, k as f64 * h).value;
            let w = eigenvector(params, d, branch);
            (w.u, w.v)
        })
        .collect();
    let gamma = loop_phase(states.iter())?;
    let coarse = loop_phase(states.iter().step_by(2))?;
    Ok(BerryPhaseResult {
        branch,
        gamma,
        method: Method::WilsonLoop,
        samples,
        error_estimate: circular_distance(gamma, coarse) / 3.0,
    })
}

/// Accumulate the closed-loop overlap product and return its argument in
/// `(−π, π]`.
fn loop_phase<'a, I>(states: I) -> Result<f64>
where
    I: Iterator<Item = &'a (f64, C64)> + Clone,
{
    let mut product = C64::new(1.0, 0.0);
    let first = states.clone().next().expect("loop needs samples");
    let mut prev = first;
    let mut index = 0usize;
    for state in states.skip(1).chain(std::iter::once(first)) {
        let overlap = prev.0 * state.0 + prev.1.conj() * state.1;
        let modulus = overlap.norm();
        if modulus < MIN_OVERLAP_MODULUS {
            return Err(Error::ZeroOverlap { index, modulus });
        }
        product *= overlap;
        prev = state;
        index += 1;
    }
    let gamma = product.arg();
    Ok(if gamma <= -PI { gamma + TAU } else { gamma })
}

/// Split the Berry-connection density at time `t` into its conservative and
/// geometric parts.
pub fn connection_decomposition(
    spec: &FieldSpec,
    params: &TwoLevelParams,
    branch: Branch,
    t: f64,
) -> ConnectionSample {
    let s = spec.drive(params, t);
    let half_gap = params.half_gap();
    let m = s.value.norm_sqr();
    let m_dot = 2.0 * (s.value.conj() * s.derivative).re;
    let r = eigensystem::radius(half_gap, s.modulus);
    let r_dot = m_dot / (2.0 * r);

    // d/dt [A_l / 2] and d/dt [|D|²/(4 F_l)], each from its own
    // cancellation-free closed form:
    //   A₊/2 = m / (4 r (r+a))          |D|²/(4F₊) = (r+a)/(4r) = 1/4 + a/(4r)
    //   A₋/2 = (r+a)/(4r)               |D|²/(4F₋) = (r−a)/(4r) = 1/4 − a/(4r)
    let (grad_first, grad_second) = match branch {
        Branch::Upper => {
            let rpa = r + half_gap;
            let d_a_half = m_dot / (4.0 * r * rpa)
                - m * r_dot * (2.0 * r + half_gap) / (4.0 * r * r * rpa * rpa);
            let d_ratio = -half_gap * r_dot / (4.0 * r * r);
            (d_a_half, d_ratio)
        }
        Branch::Lower => {
            let d_a_half = -half_gap * r_dot / (4.0 * r * r);
            let d_ratio = half_gap * r_dot / (4.0 * r * r);
            (d_a_half, d_ratio)
        }
    };

    ConnectionSample {
        gradient_part: grad_first + grad_second,
        geometric_part: geometric_density(spec, params, branch, t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params_x() -> TwoLevelParams {
        TwoLevelParams::from_gap(1.0, [1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn quadrature_rejects_bad_sample_counts() {
        let f = FieldSpec::real_cosine([1.0, 0.0, 0.0], 1.0, 0.0).unwrap();
        assert!(matches!(
            berry_phase_analytic(&f, &params_x(), Branch::Upper, 8),
            Err(Error::TooFewSamples { .. })
        ));
        assert!(matches!(
            berry_phase_analytic(&f, &params_x(), Branch::Upper, 17),
            Err(Error::OddSamples { .. })
        ));
        assert!(matches!(
            berry_phase_wilson(&f, &params_x(), Branch::Upper, 32),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn real_cosine_gives_exactly_zero_analytic_phase() {
        let f = FieldSpec::real_cosine([0.8, 0.0, 0.0], 0.5, 0.3).unwrap();
        for branch in Branch::BOTH {
            let r = berry_phase_analytic(&f, &params_x(), branch, 64).unwrap();
            assert_eq!(r.gamma, 0.0);
            assert_eq!(r.error_estimate, 0.0);
        }
    }

    #[test]
    fn constant_drive_wilson_loop_is_exactly_zero() {
        let c = [C64::new(0.4, 0.2), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let f = FieldSpec::fourier(
            1.0,
            0.0,
            vec![crate::fields::FourierTerm { n: 0, coefficient: c }],
        )
        .unwrap();
        for branch in Branch::BOTH {
            let r = berry_phase_wilson(&f, &params_x(), branch, 128).unwrap();
            assert_eq!(r.gamma, 0.0);
        }
    }

    #[test]
    fn plus_drive_upper_branch_matches_the_closed_form() {
        // |D₀| = 0.5, Δε = 1: γ₊ = −π |D₀|²/F₊ = −5.363034122668975,
        // frozen from the closed form; ω-independent.
        let p = params_x();
        for &omega in &[0.01, 0.37, 2.0] {
            let f = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], omega, 0.0).unwrap();
            let r = berry_phase_analytic(&f, &p, Branch::Upper, 64).unwrap();
            assert_relative_eq!(r.gamma, -5.363034122668975, epsilon = 1e-12);
        }
    }

    #[test]
    fn minus_drive_flips_the_sign_exactly() {
        let p = params_x();
        let plus = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], 0.2, 0.7).unwrap();
        let minus = FieldSpec::monochromatic_minus([0.5, 0.0, 0.0], 0.2, 0.7).unwrap();
        for branch in Branch::BOTH {
            let gp = berry_phase_analytic(&plus, &p, branch, 128).unwrap().gamma;
            let gm = berry_phase_analytic(&minus, &p, branch, 128).unwrap().gamma;
            assert!((gp + gm).abs() < 1e-12, "gp + gm = {:e}", gp + gm);
        }
    }

    #[test]
    fn wilson_reports_the_principal_value_of_the_analytic_phase() {
        let p = params_x();
        let f = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], 0.1, 0.0).unwrap();
        let analytic = berry_phase_analytic(&f, &p, Branch::Upper, 256).unwrap();
        let wilson = berry_phase_wilson(&f, &p, Branch::Upper, 4096).unwrap();
        assert!(circular_distance(wilson.gamma, analytic.gamma) < 1e-5);
        assert!(wilson.gamma > -PI && wilson.gamma <= PI);
        // Frozen principal value of −5.363034122668975.
        assert_relative_eq!(wilson.gamma, 0.920151184510611, epsilon = 1e-5);
    }

    #[test]
    fn connection_split_for_real_drive_is_purely_conservative() {
        let p = params_x();
        let f = FieldSpec::real_cosine([0.9, 0.0, 0.0], 1.0, 0.1).unwrap();
        for &t in &[0.0, 0.4, 1.1, 3.0] {
            let c = connection_decomposition(&f, &p, Branch::Lower, t);
            assert_eq!(c.geometric_part, 0.0);
        }
    }

    #[test]
    fn connection_geometric_part_is_constant_for_monochromatic_drive() {
        // Im(D̄Ḋ)/F₊ = −ω |D₀|²/F₊ = −ω · 1.7071067811865475 for the anchor.
        let p = params_x();
        let omega = 0.3;
        let f = FieldSpec::monochromatic_plus([0.5, 0.0, 0.0], omega, 0.0).unwrap();
        for &t in &[0.0, 1.3, 5.2] {
            let c = connection_decomposition(&f, &p, Branch::Upper, t);
            assert_relative_eq!(
                c.geometric_part,
                -omega * 1.7071067811865475,
                epsilon = 1e-13
            );
            // Constant |D| means the conservative density vanishes pointwise.
            assert!(c.gradient_part.abs() < 1e-15);
        }
    }

    #[test]
    fn connection_geometric_part_vanishes_with_the_drive_on_the_lower_branch() {
        let p = params_x();
        let f = FieldSpec::monochromatic_plus([1e-9, 0.0, 0.0], 0.5, 0.0).unwrap();
        let c = connection_decomposition(&f, &p, Branch::Lower, 0.7);
        assert!(c.geometric_part.abs() < 1e-17);
    }

    #[test]
    fn gradient_part_cancels_pointwise_for_varying_real_drive() {
        let p = params_x();
        let f = FieldSpec::real_cosine([0.8, 0.0, 0.0], 0.7, 0.2).unwrap();
        for k in 0..40 {
            let t = 0.25 * k as f64;
            for branch in Branch::BOTH {
                let c = connection_decomposition(&f, &p, branch, t);
                assert!(c.gradient_part.abs() < 1e-13, "t={t}: {:e}", c.gradient_part);
            }
        }
    }
}
