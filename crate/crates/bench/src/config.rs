use std::path::{Path, PathBuf};

use relreg::environment::EnvironmentConfig;
use relreg::planner::{PlannerConfig, SamplerKind};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

/// One benchmark study: a world, shared planner settings and the samplers to
/// compare.
///
/// ```toml
/// [environment]
/// world = "multi_obstacle_2d"
///
/// [planner]
/// time_budget_ms = 10000
///
/// [bench]
/// samplers = ["relevant", "informed"]
/// trials = 20
/// ```
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub environment: EnvironmentConfig,
    #[serde(default = "default_planner")]
    pub planner: PlannerConfig,
    #[serde(default)]
    pub bench: BenchSettings,
}

fn default_planner() -> PlannerConfig {
    PlannerConfig {
        time_budget_ms: Some(10_000),
        ..PlannerConfig::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BenchSettings {
    pub samplers: Vec<SamplerKind>,
    /// Initial temperatures; each expands `transition` into one variant.
    pub transition_t_init: Vec<f64>,
    pub trials: usize,
    /// Trial `k` runs with seed `base_seed + k`.
    pub base_seed: u64,
    /// Relative paths resolve against the config file's directory.
    pub out_dir: Option<PathBuf>,
    pub parallel: bool,
}

impl Default for BenchSettings {
    fn default() -> Self {
        Self {
            samplers: vec![SamplerKind::Relevant, SamplerKind::Informed],
            transition_t_init: Vec::new(),
            trials: 20,
            base_seed: 0,
            out_dir: None,
            parallel: false,
        }
    }
}

/// A labelled planner configuration taking part in a study.
#[derive(Clone, Debug, PartialEq)]
pub struct Variant {
    pub label: String,
    pub planner: PlannerConfig,
}

impl RunConfig {
    pub fn from_toml(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut cfg: Self = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        if let Some(dir) = base_dir {
            cfg.environment.base_dir = Some(dir.to_path_buf());
            if let Some(out) = cfg.bench.out_dir.as_mut().filter(|p| p.is_relative()) {
                *out = dir.join(&*out);
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BenchError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg = Self::from_toml(&text, path.parent())?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Registered world with default planner and bench settings.
    pub fn for_world(world: &str) -> Self {
        Self {
            environment: EnvironmentConfig::registered(world),
            planner: default_planner(),
            bench: BenchSettings::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bench.trials == 0 {
            return Err(BenchError::Config("trials must be >= 1".into()));
        }
        if self.bench.samplers.is_empty() {
            return Err(BenchError::Config("no samplers selected".into()));
        }
        let mut seen = self.bench.samplers.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.bench.samplers.len() {
            return Err(BenchError::Config("duplicate sampler".into()));
        }
        if !self.bench.transition_t_init.is_empty()
            && !self.bench.samplers.contains(&SamplerKind::Transition)
        {
            return Err(BenchError::Config(
                "transition_t_init given without the transition sampler".into(),
            ));
        }
        for v in self.variants() {
            v.planner.validate()?;
        }
        Ok(())
    }

    /// Sampler variants in configuration order.
    pub fn variants(&self) -> Vec<Variant> {
        let mut out = Vec::new();
        for &sampler in &self.bench.samplers {
            let base = PlannerConfig {
                sampler,
                ..self.planner.clone()
            };
            if sampler == SamplerKind::Transition && !self.bench.transition_t_init.is_empty() {
                for &t in &self.bench.transition_t_init {
                    let mut planner = base.clone();
                    planner.transition.t_init = t;
                    out.push(Variant {
                        label: format!("transition_t{t}"),
                        planner,
                    });
                }
            } else {
                out.push(Variant {
                    label: sampler.to_string(),
                    planner: base,
                });
            }
        }
        out
    }
}
