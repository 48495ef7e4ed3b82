//! Periodic classical electric fields and the scalar drive they induce,
//! with exact analytic time derivatives.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::TwoLevelParams;

/// A periodic, possibly complex, classical electric field `E(t)`.
///
/// Every kind carries a fundamental angular frequency `ω > 0`, a constant
/// phase offset `φ₀` and closed-form derivatives; the period is always
/// `T = 2π/ω`. The two purely real kinds and real-paired Fourier series
/// evaluate with an identically zero imaginary part, so "real field" is exact
/// in floating point, not approximate.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    /// Positive-frequency component `E₀ e^{−i(ωt+φ₀)}` (the rotating-wave
    /// effective field).
    MonochromaticPlus(Monochromatic),
    /// Negative-frequency component `E₀ e^{+i(ωt+φ₀)}`.
    MonochromaticMinus(Monochromatic),
    /// Real cosine `E₀ cos(ωt+φ₀)`.
    RealCosine(Monochromatic),
    /// Sum of both monochromatic components, `2 E₀ cos(ωt+φ₀)`, real.
    Superposition(Monochromatic),
    /// Harmonic series `Σ_n c_n e^{−i n (ωt+φ₀)}` over integer harmonics of
    /// the fundamental.
    Fourier(FourierField),
}

/// Shared payload of the single-harmonic kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monochromatic {
    amplitude: [f64; 3],
    omega: f64,
    phi0: f64,
}

/// One harmonic of a Fourier field: index `n` (may be negative or zero) and a
/// complex vector coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierTerm {
    pub n: i32,
    pub coefficient: [C64; 3],
}

/// Canonicalized Fourier series.
///
/// Construction merges duplicate harmonics and detects conjugate pairing
/// `c_{−n} = c_n*`; a paired series is stored in an explicitly real
/// cos/sin form and evaluates with zero imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierField {
    omega: f64,
    phi0: f64,
    terms: Vec<FourierTerm>,
    real_modes: Option<Vec<RealMode>>,
}

/// `cos_amp · cos(nχ) + sin_amp · sin(nχ)` for one non-negative harmonic.
#[derive(Debug, Clone, Copy, PartialEq)]
struct RealMode {
    n: u32,
    cos_amp: [f64; 3],
    sin_amp: [f64; 3],
}

/// One evaluation of the scalar drive `D(t) = d₁₂ · E(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSample {
    /// `D(t)`.
    pub value: C64,
    /// Exact analytic `dD/dt`.
    pub derivative: C64,
    /// `|D(t)|`.
    pub modulus: f64,
    /// Polar phase of `D(t)` in `(−π, π]`, or `None` at an exact zero where
    /// no phase exists. Consumers that need a smooth phase density should use
    /// `Im(D̄ Ḋ)`, which never requires unwrapping.
    pub phase: Option<f64>,
}

fn check_mono(amplitude: [f64; 3], omega: f64, phi0: f64) -> Result<Monochromatic> {
    if amplitude.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite {
            what: "field amplitude component",
        });
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidFrequency { omega });
    }
    if !phi0.is_finite() {
        return Err(Error::NonFinite {
            what: "field phase offset",
        });
    }
    Ok(Monochromatic {
        amplitude,
        omega,
        phi0,
    })
}

impl FieldSpec {
    pub fn monochromatic_plus(amplitude: [f64; 3], omega: f64, phi0: f64) -> Result<Self> {
        Ok(Self::MonochromaticPlus(check_mono(amplitude, omega, phi0)?))
    }

    pub fn monochromatic_minus(amplitude: [f64; 3], omega: f64, phi0: f64) -> Result<Self> {
        Ok(Self::MonochromaticMinus(check_mono(amplitude, omega, phi0)?))
    }

    pub fn real_cosine(amplitude: [f64; 3], omega: f64, phi0: f64) -> Result<Self> {
        Ok(Self::RealCosine(check_mono(amplitude, omega, phi0)?))
    }

    pub fn superposition(amplitude: [f64; 3], omega: f64, phi0: f64) -> Result<Self> {
        Ok(Self::Superposition(check_mono(amplitude, omega, phi0)?))
    }

    /// A general harmonic series over the fundamental `ω`.
    pub fn fourier(omega: f64, phi0: f64, terms: Vec<FourierTerm>) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidFrequency { omega });
        }
        if !phi0.is_finite() {
            return Err(Error::NonFinite {
                what: "field phase offset",
            });
        }
        for term in &terms {
            if term
                .coefficient
                .iter()
                .any(|c| !c.re.is_finite() || !c.im.is_finite())
            {
                return Err(Error::NonFinite {
                    what: "fourier coefficient",
                });
            }
        }
        let mut merged: Vec<FourierTerm> = Vec::new();
        for term in terms {
            match merged.iter_mut().find(|t| t.n == term.n) {
                Some(t) => {
                    for (acc, c) in t.coefficient.iter_mut().zip(term.coefficient) {
                        *acc += c;
                    }
                }
                None => merged.push(term),
            }
        }
        merged.sort_by_key(|t| t.n);
        let real_modes = detect_real_modes(&merged);
        Ok(Self::Fourier(FourierField {
            omega,
            phi0,
            terms: merged,
            real_modes,
        }))
    }

    /// A manifestly real Fourier field
    /// `Σ_n cos_amp_n cos(n(ωt+φ₀)) + sin_amp_n sin(n(ωt+φ₀))`.
    ///
    /// Stored as the equivalent conjugate-paired harmonic series, which the
    /// canonicalizer recognizes, so evaluation is exactly real.
    pub fn real_fourier(omega: f64, phi0: f64, modes: &[(u32, [f64; 3], [f64; 3])]) -> Result<Self> {
        let mut terms = Vec::new();
        for &(n, cos_amp, sin_amp) in modes {
            if n == 0 {
                terms.push(FourierTerm {
                    n: 0,
                    coefficient: cos_amp.map(|c| C64::new(c, 0.0)),
                });
                continue;
            }
            // c cos(nχ) + s sin(nχ)  =  ((c + i s)/2) e^{−inχ}  +  conj.
            let coefficient = [
                C64::new(0.5 * cos_amp[0], 0.5 * sin_amp[0]),
                C64::new(0.5 * cos_amp[1], 0.5 * sin_amp[1]),
                C64::new(0.5 * cos_amp[2], 0.5 * sin_amp[2]),
            ];
            terms.push(FourierTerm {
                n: n as i32,
                coefficient,
            });
            terms.push(FourierTerm {
                n: -(n as i32),
                coefficient: coefficient.map(|c| c.conj()),
            });
        }
        Self::fourier(omega, phi0, terms)
    }

    /// Fundamental angular frequency.
    pub fn omega(&self) -> f64 {
        match self {
            Self::MonochromaticPlus(m)
            | Self::MonochromaticMinus(m)
            | Self::RealCosine(m)
            | Self::Superposition(m) => m.omega,
            Self::Fourier(f) => f.omega,
        }
    }

    /// Constant phase offset.
    pub fn phi0(&self) -> f64 {
        match self {
            Self::MonochromaticPlus(m)
            | Self::MonochromaticMinus(m)
            | Self::RealCosine(m)
            | Self::Superposition(m) => m.phi0,
            Self::Fourier(f) => f.phi0,
        }
    }

    /// Fundamental period `T = 2π/ω`.
    pub fn period(&self) -> f64 {
        TAU / self.omega()
    }

    /// Whether `E(t)` is real for all `t`, exactly.
    pub fn is_real(&self) -> bool {
        match self {
            Self::RealCosine(_) | Self::Superposition(_) => true,
            Self::MonochromaticPlus(_) | Self::MonochromaticMinus(_) => false,
            Self::Fourier(f) => f.real_modes.is_some(),
        }
    }

    /// A copy with the fundamental frequency replaced, everything else kept.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidFrequency { omega });
        }
        let mut spec = self.clone();
        match &mut spec {
            Self::MonochromaticPlus(m)
            | Self::MonochromaticMinus(m)
            | Self::RealCosine(m)
            | Self::Superposition(m) => m.omega = omega,
            Self::Fourier(f) => f.omega = omega,
        }
        Ok(spec)
    }

    /// Field value `E(t)`.
    pub fn eval(&self, t: f64) -> [C64; 3] {
        self.eval_both(t).0
    }

    /// Analytic derivative `dE/dt`.
    pub fn eval_derivative(&self, t: f64) -> [C64; 3] {
        self.eval_both(t).1
    }

    fn eval_both(&self, t: f64) -> ([C64; 3], [C64; 3]) {
        match self {
            Self::MonochromaticPlus(m) => {
                let chi = m.omega * t + m.phi0;
                let rot = C64::new(chi.cos(), -chi.sin());
                let value = m.amplitude.map(|a| a * rot);
                (value, value.map(|v| v * C64::new(0.0, -m.omega)))
            }
            Self::MonochromaticMinus(m) => {
                let chi = m.omega * t + m.phi0;
                let rot = C64::new(chi.cos(), chi.sin());
                let value = m.amplitude.map(|a| a * rot);
                (value, value.map(|v| v * C64::new(0.0, m.omega)))
            }
            Self::RealCosine(m) => {
                let chi = m.omega * t + m.phi0;
                let (sin, cos) = chi.sin_cos();
                (
                    m.amplitude.map(|a| C64::new(a * cos, 0.0)),
                    m.amplitude.map(|a| C64::new(-a * m.omega * sin, 0.0)),
                )
            }
            Self::Superposition(m) => {
                let chi = m.omega * t + m.phi0;
                let (sin, cos) = chi.sin_cos();
                (
                    m.amplitude.map(|a| C64::new(2.0 * a * cos, 0.0)),
                    m.amplitude.map(|a| C64::new(-2.0 * a * m.omega * sin, 0.0)),
                )
            }
            Self::Fourier(f) => f.eval_both(t),
        }
    }

    /// The scalar drive `D(t) = d₁₂ · E(t)` together with its exact
    /// derivative, modulus and polar phase.
    pub fn drive(&self, params: &TwoLevelParams, t: f64) -> DriveSample {
        let (e, edot) = self.eval_both(t);
        let value = params.drive_value(e);
        let derivative = params.drive_value(edot);
        let modulus = value.norm();
        let phase = (modulus > 0.0).then(|| value.arg());
        DriveSample {
            value,
            derivative,
            modulus,
            phase,
        }
    }
}

impl FourierField {
    pub fn terms(&self) -> &[FourierTerm] {
        &self.terms
    }

    fn eval_both(&self, t: f64) -> ([C64; 3], [C64; 3]) {
        let chi = self.omega * t + self.phi0;
        let zero = [C64::new(0.0, 0.0); 3];
        let (mut value, mut deriv) = (zero, zero);
        if let Some(modes) = &self.real_modes {
            for mode in modes {
                let n = mode.n as f64;
                let (sin, cos) = (n * chi).sin_cos();
                let rate = n * self.omega;
                for i in 0..3 {
                    value[i].re += mode.cos_amp[i] * cos + mode.sin_amp[i] * sin;
                    deriv[i].re += rate * (mode.sin_amp[i] * cos - mode.cos_amp[i] * sin);
                }
            }
        } else {
            for term in &self.terms {
                let n = term.n as f64;
                let rot = C64::new((n * chi).cos(), -(n * chi).sin());
                let rate = C64::new(0.0, -n * self.omega);
                for i in 0..3 {
                    let v = term.coefficient[i] * rot;
                    value[i] += v;
                    deriv[i] += v * rate;
                }
            }
        }
        (value, deriv)
    }
}

/// Recognize a conjugate-paired series: every harmonic `n > 0` must have a
/// partner at `−n` with the exactly conjugate coefficient, and any `n = 0`
/// term must be real. Pairing is checked bit-exactly: fields built through
/// [`FieldSpec::real_fourier`] (or any constructor that conjugates
/// componentwise) qualify.
fn detect_real_modes(terms: &[FourierTerm]) -> Option<Vec<RealMode>> {
    let mut modes = Vec::new();
    for term in terms {
        if term.n < 0 {
            // Consumed by its positive partner if one exists.
            continue;
        }
        if term.n == 0 {
            if term.coefficient.iter().any(|c| c.im != 0.0) {
                return None;
            }
            modes.push(RealMode {
                n: 0,
                cos_amp: term.coefficient.map(|c| c.re),
                sin_amp: [0.0; 3],
            });
            continue;
        }
        let partner = terms.iter().find(|t| t.n == -term.n)?;
        let conjugate = term
            .coefficient
            .iter()
            .zip(partner.coefficient.iter())
            .all(|(c, p)| p.re == c.re && p.im == -c.im);
        if !conjugate {
            return None;
        }
        modes.push(RealMode {
            n: term.n as u32,
            cos_amp: term.coefficient.map(|c| 2.0 * c.re),
            sin_amp: term.coefficient.map(|c| 2.0 * c.im),
        });
    }
    // Any negative harmonic without a positive partner breaks the pairing.
    for term in terms {
        if term.n < 0 && !terms.iter().any(|t| t.n == -term.n) {
            return None;
        }
    }
    Some(modes)
}
