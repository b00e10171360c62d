//! Experiment configuration. Every field has a default and every default is
//! written back out in report headers.

use std::path::Path;

use conetop::lab::{CurveFamily, Horizon, LctParams, LimitDefinition, BUILTIN_FAMILIES};
use conetop::{Schedule64, Tolerance64, TopologyKind};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScheduleConfig {
    pub eps0: f64,
    pub steps: usize,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self { eps0: 0.5, steps: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HorizonConfig {
    pub n_max: usize,
    pub tail_fraction: f64,
}

impl Default for HorizonConfig {
    fn default() -> Self {
        let h = Horizon::default();
        Self {
            n_max: h.n_max,
            tail_fraction: h.tail_fraction,
        }
    }
}

/// Sample counts for `props-run` and `kernel-verify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PropsConfig {
    pub relation_cases: usize,
    pub transforms: usize,
    pub membership_samples: usize,
    pub partitions: usize,
    pub kernel_trials: usize,
    pub kernel_max_points: usize,
    pub refinement_centers: usize,
    pub trace_samples: usize,
    /// Half-width of the cube events are drawn from.
    pub bound: f64,
}

impl Default for PropsConfig {
    fn default() -> Self {
        Self {
            relation_cases: 10_000,
            transforms: 100,
            membership_samples: 10_000,
            partitions: 10,
            kernel_trials: 1000,
            kernel_max_points: 6,
            refinement_centers: 1000,
            trace_samples: 10_000,
            bound: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub spatial_dim: usize,
    pub tolerance: f64,
    pub schedule: ScheduleConfig,
    pub horizon: HorizonConfig,
    pub topologies: Vec<String>,
    pub families: Vec<String>,
    pub definitions: Vec<LimitDefinition>,
    /// Points sampled on each limit curve.
    pub curve_samples: usize,
    /// Certificates re-checked per refuted cell, at this sampling factor.
    pub reverify_factor: usize,
    pub search_points: usize,
    pub props: PropsConfig,
    pub out_dir: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            spatial_dim: 3,
            tolerance: 1e-9,
            schedule: ScheduleConfig::default(),
            horizon: HorizonConfig::default(),
            topologies: TopologyKind::ALL.iter().map(|k| k.name().to_string()).collect(),
            families: BUILTIN_FAMILIES.iter().map(|s| s.to_string()).collect(),
            definitions: LimitDefinition::ALL.to_vec(),
            curve_samples: 16,
            reverify_factor: 10,
            search_points: 8,
            props: PropsConfig::default(),
            out_dir: "out".into(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let cfg: Self =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(1..=3).contains(&self.spatial_dim) {
            return Err(CliError::Config(format!(
                "spatial_dim {} not in 1..=3",
                self.spatial_dim
            )));
        }
        self.tolerance()?;
        self.schedule()?;
        self.horizon()?;
        self.kinds()?;
        self.curve_families()?;
        if self.curve_samples == 0 || self.search_points == 0 {
            return Err(CliError::Config("sample counts must be positive".into()));
        }
        if !(1..=12).contains(&self.props.kernel_max_points) {
            return Err(CliError::Config("kernel_max_points must be in 1..=12".into()));
        }
        if !(self.props.bound.is_finite() && self.props.bound > 0.0) {
            return Err(CliError::Config("props.bound must be positive".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> CliResult<Tolerance64> {
        Tolerance64::new(self.tolerance).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn schedule(&self) -> CliResult<Schedule64> {
        Schedule64::new(self.schedule.eps0, self.schedule.steps).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn horizon(&self) -> CliResult<Horizon> {
        Horizon::new(self.horizon.n_max, self.horizon.tail_fraction).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn kinds(&self) -> CliResult<Vec<TopologyKind>> {
        self.topologies
            .iter()
            .map(|s| s.parse().map_err(|e: conetop::Error| CliError::Config(e.to_string())))
            .collect()
    }

    /// Curve families live in at least two spatial dimensions.
    pub fn curve_families(&self) -> CliResult<Vec<CurveFamily<f64>>> {
        let dim = self.spatial_dim.max(2);
        self.families
            .iter()
            .map(|n| CurveFamily::builtin(n, dim).map_err(|e| CliError::Config(e.to_string())))
            .collect()
    }

    pub fn lct_params(&self) -> CliResult<LctParams<f64>> {
        Ok(LctParams {
            schedule: self.schedule()?,
            horizon: self.horizon()?,
            samples: self.curve_samples,
            tol: self.tolerance()?,
        })
    }
}
