//! Experiment configuration: TOML schema, validation and translation into
//! library types.
//!
//! A config file has exactly three tables:
//!
//! ```toml
//! [system]
//! delta_epsilon = 1.0          # level splitting, > 0
//! d12 = [1.0, 0.0, 0.0]        # real dipole vector
//!
//! [field]
//! kind = "monochromatic_plus"  # monochromatic_minus | real_cosine |
//!                              # superposition | fourier
//! amplitude = [0.5, 0.0, 0.0]  # E0 (unused for kind = "fourier")
//! omega = 0.01                 # fundamental angular frequency, > 0
//! phi0 = 0.0                   # constant phase offset
//! # fourier_terms = [{ n = 1, re = [0.5, 0, 0], im = [0, 0, 0] }, ...]
//!
//! [run]
//! method = "all"               # analytic | wilson | propagate | solid_angle | all
//! branch = "both"              # 1 | -1 | "both"
//! samples = 4096               # N, required by analytic/wilson/solid_angle
//! steps = 200000               # M, required by propagate
//! rho = 1000.0                 # adiabaticity T·Δε/2π; replaces omega when set
//! # mu = 1.0                   # effective moment for the spin map
//! # sweep = [{ path = "run.rho", values = [250, 500, 1000, 2000] }]
//! ```

use std::fmt;

use berrylab::{FieldSpec, FourierTerm, TwoLevelParams};
use berrylab::Complex64 as C64;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A fully parsed experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub system: SystemConfig,
    pub field: FieldConfig,
    pub run: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub delta_epsilon: f64,
    pub d12: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub kind: FieldKind,
    #[serde(default)]
    pub amplitude: [f64; 3],
    pub omega: f64,
    #[serde(default)]
    pub phi0: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fourier_terms: Vec<FourierTermConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    MonochromaticPlus,
    MonochromaticMinus,
    RealCosine,
    Superposition,
    Fourier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierTermConfig {
    pub n: i32,
    #[serde(default)]
    pub re: [f64; 3],
    #[serde(default)]
    pub im: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub method: MethodSel,
    pub branch: BranchSel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<SweepConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodSel {
    Analytic,
    Wilson,
    Propagate,
    SolidAngle,
    All,
}

impl MethodSel {
    pub fn wants_analytic(self) -> bool {
        matches!(self, Self::Analytic | Self::All)
    }
    pub fn wants_wilson(self) -> bool {
        matches!(self, Self::Wilson | Self::All)
    }
    pub fn wants_propagate(self) -> bool {
        matches!(self, Self::Propagate | Self::All)
    }
    pub fn wants_solid_angle(self) -> bool {
        matches!(self, Self::SolidAngle | Self::All)
    }
}

/// Branch selection: a single branch by its sign, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSel {
    Lower,
    Upper,
    Both,
}

impl BranchSel {
    pub fn branches(self) -> Vec<berrylab::Branch> {
        match self {
            Self::Lower => vec![berrylab::Branch::Lower],
            Self::Upper => vec![berrylab::Branch::Upper],
            Self::Both => vec![berrylab::Branch::Lower, berrylab::Branch::Upper],
        }
    }
}

impl Serialize for BranchSel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Lower => serializer.serialize_i64(-1),
            Self::Upper => serializer.serialize_i64(1),
            Self::Both => serializer.serialize_str("both"),
        }
    }
}

impl<'de> Deserialize<'de> for BranchSel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct BranchVisitor;
        impl Visitor<'_> for BranchVisitor {
            type Value = BranchSel;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "1, -1, \"+1\", \"-1\" or \"both\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BranchSel, E> {
                match v {
                    1 => Ok(BranchSel::Upper),
                    -1 => Ok(BranchSel::Lower),
                    _ => Err(E::custom(format!("branch must be 1 or -1, got {v}"))),
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<BranchSel, E> {
                match v {
                    "both" => Ok(BranchSel::Both),
                    "+1" | "1" | "upper" => Ok(BranchSel::Upper),
                    "-1" | "lower" => Ok(BranchSel::Lower),
                    _ => Err(E::custom(format!("unrecognized branch {v:?}"))),
                }
            }
        }
        deserializer.deserialize_any(BranchVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Dotted path of the swept parameter; see [`SWEEPABLE_PATHS`].
    pub path: String,
    pub values: Vec<f64>,
}

/// Parameters a sweep may address.
pub const SWEEPABLE_PATHS: [&str; 7] = [
    "system.delta_epsilon",
    "field.omega",
    "field.phi0",
    "field.amplitude.x",
    "field.amplitude.y",
    "field.amplitude.z",
    "run.rho",
];

/// A validation failure, carrying the config path it refers to.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn new(path: &str, message: impl Into<String>) -> Self {
        Self {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Parse a config from TOML text and validate it.
pub fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let config: ExperimentConfig =
        toml::from_str(text).map_err(|e| ConfigError::new("<toml>", e.to_string()))?;
    validate(&config)?;
    Ok(config)
}

/// Check every cross-field requirement the schema cannot express.
pub fn validate(config: &ExperimentConfig) -> Result<(), ConfigError> {
    let system = &config.system;
    if !system.delta_epsilon.is_finite() || system.delta_epsilon <= 0.0 {
        return Err(ConfigError::new(
            "system.delta_epsilon",
            "must be finite and > 0",
        ));
    }
    if system.d12.iter().any(|c| !c.is_finite()) {
        return Err(ConfigError::new("system.d12", "components must be finite"));
    }

    let field = &config.field;
    if !field.omega.is_finite() || field.omega <= 0.0 {
        return Err(ConfigError::new("field.omega", "must be finite and > 0"));
    }
    if !field.phi0.is_finite() {
        return Err(ConfigError::new("field.phi0", "must be finite"));
    }
    if field.amplitude.iter().any(|c| !c.is_finite()) {
        return Err(ConfigError::new(
            "field.amplitude",
            "components must be finite",
        ));
    }
    match field.kind {
        FieldKind::Fourier => {
            if field.fourier_terms.is_empty() {
                return Err(ConfigError::new(
                    "field.fourier_terms",
                    "kind = \"fourier\" needs at least one term",
                ));
            }
            for (i, term) in field.fourier_terms.iter().enumerate() {
                if term.re.iter().chain(term.im.iter()).any(|c| !c.is_finite()) {
                    return Err(ConfigError::new(
                        &format!("field.fourier_terms[{i}]"),
                        "coefficients must be finite",
                    ));
                }
            }
        }
        _ => {
            if !field.fourier_terms.is_empty() {
                return Err(ConfigError::new(
                    "field.fourier_terms",
                    "only valid with kind = \"fourier\"",
                ));
            }
        }
    }

    let run = &config.run;
    let method = run.method;
    if method.wants_analytic() || method.wants_wilson() || method.wants_solid_angle() {
        match run.samples {
            None => {
                return Err(ConfigError::new(
                    "run.samples",
                    format!("required by method {:?}", method),
                ));
            }
            Some(n) if n < 64 || n % 2 != 0 => {
                return Err(ConfigError::new(
                    "run.samples",
                    "need an even sample count of at least 64",
                ));
            }
            _ => {}
        }
    }
    if method.wants_propagate() {
        match run.steps {
            None => {
                return Err(ConfigError::new(
                    "run.steps",
                    format!("required by method {:?}", method),
                ));
            }
            Some(m) if m < 1000 => {
                return Err(ConfigError::new("run.steps", "need at least 1000 steps"));
            }
            _ => {}
        }
        if run.rho.is_none() {
            return Err(ConfigError::new(
                "run.rho",
                format!("required by method {:?}", method),
            ));
        }
    }
    if let Some(rho) = run.rho {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(ConfigError::new("run.rho", "must be finite and > 0"));
        }
    }
    if let Some(mu) = run.mu {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(ConfigError::new("run.mu", "must be finite and > 0"));
        }
    }
    for (i, sweep) in run.sweep.iter().enumerate() {
        let path = format!("run.sweep[{i}]");
        if !SWEEPABLE_PATHS.contains(&sweep.path.as_str()) {
            return Err(ConfigError::new(
                &path,
                format!(
                    "unknown sweep path {:?}; valid paths: {}",
                    sweep.path,
                    SWEEPABLE_PATHS.join(", ")
                ),
            ));
        }
        if sweep.values.is_empty() {
            return Err(ConfigError::new(&path, "sweep values must be non-empty"));
        }
        if sweep.values.iter().any(|v| !v.is_finite()) {
            return Err(ConfigError::new(&path, "sweep values must be finite"));
        }
    }
    Ok(())
}

/// Overwrite one swept parameter in place.
pub fn apply_sweep_value(
    config: &mut ExperimentConfig,
    path: &str,
    value: f64,
) -> Result<(), ConfigError> {
    match path {
        "system.delta_epsilon" => config.system.delta_epsilon = value,
        "field.omega" => config.field.omega = value,
        "field.phi0" => config.field.phi0 = value,
        "field.amplitude.x" => config.field.amplitude[0] = value,
        "field.amplitude.y" => config.field.amplitude[1] = value,
        "field.amplitude.z" => config.field.amplitude[2] = value,
        "run.rho" => config.run.rho = Some(value),
        _ => {
            return Err(ConfigError::new(
                "run.sweep",
                format!("unknown sweep path {path:?}"),
            ));
        }
    }
    Ok(())
}

/// Expand the sweep tables into the cartesian product of per-point configs.
/// A config without sweeps expands to itself. Sweep tables are cleared in the
/// expanded points so each echo describes exactly one run.
pub fn expand_sweeps(config: &ExperimentConfig) -> Result<Vec<ExperimentConfig>, ConfigError> {
    let mut points = vec![{
        let mut base = config.clone();
        base.run.sweep.clear();
        base
    }];
    for sweep in &config.run.sweep {
        let mut next = Vec::with_capacity(points.len() * sweep.values.len());
        for point in &points {
            for &value in &sweep.values {
                let mut expanded = point.clone();
                apply_sweep_value(&mut expanded, &sweep.path, value)?;
                next.push(expanded);
            }
        }
        points = next;
    }
    for point in &mut points {
        validate(point)?;
    }
    Ok(points)
}

/// The library-side system for a validated config.
pub fn build_params(config: &ExperimentConfig) -> Result<TwoLevelParams, ConfigError> {
    TwoLevelParams::from_gap(config.system.delta_epsilon, config.system.d12)
        .map_err(|e| ConfigError::new("system", e.to_string()))
}

/// The library-side field for a validated config.
///
/// When `run.rho` is set it defines the drive speed: the fundamental
/// frequency is replaced by `Δε/ρ` so that `T·Δε/2π = ρ` exactly.
pub fn build_field(config: &ExperimentConfig) -> Result<FieldSpec, ConfigError> {
    let field = &config.field;
    let omega = match config.run.rho {
        Some(rho) => config.system.delta_epsilon / rho,
        None => field.omega,
    };
    let spec = match field.kind {
        FieldKind::MonochromaticPlus => {
            FieldSpec::monochromatic_plus(field.amplitude, omega, field.phi0)
        }
        FieldKind::MonochromaticMinus => {
            FieldSpec::monochromatic_minus(field.amplitude, omega, field.phi0)
        }
        FieldKind::RealCosine => FieldSpec::real_cosine(field.amplitude, omega, field.phi0),
        FieldKind::Superposition => FieldSpec::superposition(field.amplitude, omega, field.phi0),
        FieldKind::Fourier => {
            let terms = field
                .fourier_terms
                .iter()
                .map(|t| FourierTerm {
                    n: t.n,
                    coefficient: [
                        C64::new(t.re[0], t.im[0]),
                        C64::new(t.re[1], t.im[1]),
                        C64::new(t.re[2], t.im[2]),
                    ],
                })
                .collect();
            FieldSpec::fourier(omega, field.phi0, terms)
        }
    };
    spec.map_err(|e| ConfigError::new("field", e.to_string()))
}

/// The effective fundamental frequency of a per-point config (after any
/// `rho` override).
pub fn effective_omega(config: &ExperimentConfig) -> f64 {
    match config.run.rho {
        Some(rho) => config.system.delta_epsilon / rho,
        None => config.field.omega,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANCHOR: &str = r#"
[system]
delta_epsilon = 1.0
d12 = [1.0, 0.0, 0.0]

[field]
kind = "monochromatic_plus"
amplitude = [0.5, 0.0, 0.0]
omega = 0.01

[run]
method = "analytic"
branch = "both"
samples = 4096
"#;

    #[test]
    fn parses_and_validates_the_anchor() {
        let cfg = parse(ANCHOR).unwrap();
        assert_eq!(cfg.field.kind, FieldKind::MonochromaticPlus);
        assert_eq!(cfg.run.branch, BranchSel::Both);
        assert_eq!(cfg.run.samples, Some(4096));
        assert_eq!(cfg.field.phi0, 0.0);
    }

    #[test]
    fn round_trip_is_idempotent() {
        let cfg = parse(ANCHOR).unwrap();
        let text = toml::to_string(&cfg).unwrap();
        let again = parse(&text).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn branch_accepts_integers_and_strings() {
        for (snippet, expect) in [
            ("branch = 1", BranchSel::Upper),
            ("branch = -1", BranchSel::Lower),
            ("branch = \"both\"", BranchSel::Both),
            ("branch = \"-1\"", BranchSel::Lower),
        ] {
            let text = ANCHOR.replace("branch = \"both\"", snippet);
            assert_eq!(parse(&text).unwrap().run.branch, expect);
        }
    }

    #[test]
    fn method_requirements_are_enforced() {
        let missing_samples = ANCHOR.replace("samples = 4096", "");
        let err = parse(&missing_samples).unwrap_err();
        assert_eq!(err.path, "run.samples");

        let propagate = ANCHOR.replace("method = \"analytic\"", "method = \"propagate\"");
        let err = parse(&propagate).unwrap_err();
        assert_eq!(err.path, "run.steps");

        let odd = ANCHOR.replace("samples = 4096", "samples = 4097");
        assert!(parse(&odd).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = format!("{ANCHOR}\n[extra]\nx = 1\n");
        assert!(parse(&text).is_err());
    }

    #[test]
    fn sweep_paths_are_checked() {
        let text = format!(
            "{ANCHOR}sweep = [{{ path = \"run.banana\", values = [1.0] }}]\n"
        );
        let err = parse(&text).unwrap_err();
        assert!(err.message.contains("unknown sweep path"));
    }

    #[test]
    fn sweeps_expand_to_the_cartesian_product() {
        let text = format!(
            "{ANCHOR}sweep = [\n  {{ path = \"field.omega\", values = [0.1, 0.2] }},\n  {{ path = \"field.phi0\", values = [0.0, 1.0, 2.0] }},\n]\n"
        );
        let cfg = parse(&text).unwrap();
        let points = expand_sweeps(&cfg).unwrap();
        assert_eq!(points.len(), 6);
        assert!(points.iter().all(|p| p.run.sweep.is_empty()));
        assert_eq!(points[0].field.omega, 0.1);
        assert_eq!(points[5].field.omega, 0.2);
        assert_eq!(points[5].field.phi0, 2.0);
    }

    #[test]
    fn rho_overrides_the_field_frequency() {
        let text = ANCHOR.replace("samples = 4096", "samples = 4096\nrho = 500.0");
        let cfg = parse(&text).unwrap();
        assert_eq!(effective_omega(&cfg), 1.0 / 500.0);
        let field = build_field(&cfg).unwrap();
        assert!((field.period() * cfg.system.delta_epsilon / std::f64::consts::TAU - 500.0).abs() < 1e-9);
    }
}
