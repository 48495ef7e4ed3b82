//! Execute a validated experiment config: expand sweeps, run the requested
//! methods per branch, and collect deterministic result records.

use std::fmt;
use std::time::{Duration, Instant};

use berrylab::{
    berry_phase_analytic, berry_phase_wilson, propagate, solid_angle, Branch, FieldSpec,
    TwoLevelParams,
};
use serde::Serialize;

use crate::config::{self, ConfigError, ExperimentConfig};

/// Default worker-count environment variable.
pub const WORKERS_ENV: &str = "BERRYLAB_WORKERS";

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    /// A method failed numerically; carries the sweep index it failed at.
    Numerical {
        index: usize,
        source: berrylab::Error,
    },
    Threading(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Config(e) => write!(f, "{e}"),
            Self::Numerical { index, source } => {
                write!(f, "numerical failure at sweep point {index}: {source}")
            }
            Self::Threading(e) => write!(f, "worker pool: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        Self::Config(e)
    }
}

/// One summary record per sweep point. Serializes to a single deterministic
/// JSON object; the wall-clock duration is carried on the struct but kept out
/// of the serialized form so identical configs produce identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    /// Position in the expanded sweep (0 for a plain run).
    pub index: usize,
    /// The materialized per-point config, sweep tables resolved and the
    /// effective frequency substituted.
    pub config: ExperimentConfig,
    /// One entry per requested branch, every requested method exactly once.
    pub branches: Vec<BranchRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solid_angle: Option<SolidAngleRecord>,
    #[serde(skip)]
    pub duration: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchRecord {
    /// Branch sign, −1 or +1.
    pub branch: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<PhaseRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wilson: Option<PhaseRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propagation: Option<PropagationRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseRecord {
    pub gamma: f64,
    pub error_estimate: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropagationRecord {
    pub geometric_phase: f64,
    pub dynamical_phase: f64,
    pub fidelity: f64,
    pub norm_defect: f64,
    pub rho: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolidAngleRecord {
    pub omega_solid: f64,
    pub cos_theta: f64,
    pub samples: usize,
}

/// Run every sweep point of a validated config. Points execute concurrently
/// on up to `workers` threads (`BERRYLAB_WORKERS` or the core count when
/// unset); records come back ordered by sweep index regardless.
pub fn run_experiment(
    config: &ExperimentConfig,
    workers: Option<usize>,
) -> Result<Vec<ResultRecord>, RunError> {
    config::validate(config)?;
    let points = config::expand_sweeps(config)?;

    let worker_count = workers
        .or_else(|| {
            std::env::var(WORKERS_ENV)
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        })
        .filter(|&n| n > 0);

    let run_all = |points: &[ExperimentConfig]| -> Result<Vec<ResultRecord>, RunError> {
        use rayon::prelude::*;
        points
            .par_iter()
            .enumerate()
            .map(|(index, point)| run_point(index, point))
            .collect()
    };

    match worker_count {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Threading(e.to_string()))?
            .install(|| run_all(&points)),
        None => run_all(&points),
    }
}

/// Execute one materialized sweep point.
pub fn run_point(index: usize, point: &ExperimentConfig) -> Result<ResultRecord, RunError> {
    let started = Instant::now();
    let params = config::build_params(point)?;
    let field = config::build_field(point)?;

    // Echo the effective frequency so the record is self-describing even when
    // rho dictated the drive speed.
    let mut echo = point.clone();
    echo.field.omega = config::effective_omega(point);

    let method = point.run.method;
    let numerical = |source: berrylab::Error| RunError::Numerical { index, source };

    let mut branches = Vec::new();
    for branch in point.run.branch.branches() {
        branches.push(run_branch(point, &params, &field, branch).map_err(numerical)?);
    }

    let solid_angle_record = if method.wants_solid_angle() {
        let samples = point.run.samples.expect("validated");
        let mu = point.run.mu.unwrap_or(1.0);
        let cone = solid_angle(&field, &params, mu, samples).map_err(numerical)?;
        Some(SolidAngleRecord {
            omega_solid: cone.omega_solid,
            cos_theta: cone.cos_theta,
            samples,
        })
    } else {
        None
    };

    Ok(ResultRecord {
        index,
        config: echo,
        branches,
        solid_angle: solid_angle_record,
        duration: started.elapsed(),
    })
}

fn run_branch(
    point: &ExperimentConfig,
    params: &TwoLevelParams,
    field: &FieldSpec,
    branch: Branch,
) -> Result<BranchRecord, berrylab::Error> {
    let method = point.run.method;
    let mut record = BranchRecord {
        branch: branch.sign() as i32,
        analytic: None,
        wilson: None,
        propagation: None,
    };
    if method.wants_analytic() {
        let samples = point.run.samples.expect("validated");
        let r = berry_phase_analytic(field, params, branch, samples)?;
        record.analytic = Some(PhaseRecord {
            gamma: r.gamma,
            error_estimate: r.error_estimate,
            samples: r.samples,
        });
    }
    if method.wants_wilson() {
        let samples = point.run.samples.expect("validated");
        let r = berry_phase_wilson(field, params, branch, samples)?;
        record.wilson = Some(PhaseRecord {
            gamma: r.gamma,
            error_estimate: r.error_estimate,
            samples: r.samples,
        });
    }
    if method.wants_propagate() {
        let steps = point.run.steps.expect("validated");
        let r = propagate(field, params, branch, steps)?;
        record.propagation = Some(PropagationRecord {
            geometric_phase: r.geometric_phase,
            dynamical_phase: r.dynamical_phase,
            fidelity: r.fidelity,
            norm_defect: r.norm_defect,
            rho: r.rho,
            steps: r.steps,
        });
    }
    Ok(record)
}

/// Serialize records as one JSON object per line.
pub fn to_jsonl(records: &[ResultRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("records serialize"));
        out.push('\n');
    }
    out
}
