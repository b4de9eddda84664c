use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::costmap::{self, CostMap, Grid2D};
use crate::error::{Error, Result};
use crate::vector::{Bounds, StateVec};

use super::{BoxObstacle, Environment};

/// The `[environment]` section of a run configuration.
///
/// Either names a registered world (optionally overriding start, goal, goal
/// radius and step size) or describes a custom world in full.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentConfig {
    /// Layout schema version; only `1` exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstacles: Option<Vec<ObstacleConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costmap: Option<CostMapConfig>,
    /// Directory that relative raster paths resolve against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleConfig {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CostMapConfig {
    Uniform,
    Constant {
        value: f64,
    },
    Potential {
        centers: Vec<Vec<f64>>,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
        #[serde(default = "default_width")]
        width: f64,
    },
    Terrain {
        /// Binary PGM file.
        raster: PathBuf,
        #[serde(default = "default_c_min")]
        c_min: f64,
        #[serde(default = "default_c_max")]
        c_max: f64,
    },
}

fn default_amplitude() -> f64 {
    costmap::POTENTIAL_AMPLITUDE
}
fn default_width() -> f64 {
    costmap::POTENTIAL_WIDTH
}
fn default_c_min() -> f64 {
    costmap::TERRAIN_C_MIN
}
fn default_c_max() -> f64 {
    costmap::TERRAIN_C_MAX
}

impl EnvironmentConfig {
    pub fn registered(world: &str) -> Self {
        Self {
            world: Some(world.to_owned()),
            ..Self::default()
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub(crate) fn has_geometry(&self) -> bool {
        self.lower.is_some()
            || self.upper.is_some()
            || self.obstacles.is_some()
            || self.costmap.is_some()
    }

    /// Builds a world described entirely by this config.
    pub(crate) fn build_custom(&self) -> Result<Environment> {
        if let Some(v) = self.version {
            if v != 1 {
                return Err(Error::Config(format!("unsupported layout version {v}")));
            }
        }
        let need = |field: &Option<Vec<f64>>, what: &str| {
            field
                .clone()
                .ok_or_else(|| Error::Config(format!("custom world needs `{what}`")))
        };
        let bounds = Bounds::new(need(&self.lower, "lower")?, need(&self.upper, "upper")?)?;
        let start = StateVec::new(need(&self.start, "start")?)?;
        let goal = StateVec::new(need(&self.goal, "goal")?)?;
        let eta = self
            .eta
            .ok_or_else(|| Error::Config("custom world needs `eta`".into()))?;
        let obstacles = self
            .obstacles
            .iter()
            .flatten()
            .map(|o| BoxObstacle::new(o.lower.clone(), o.upper.clone()))
            .collect::<Result<Vec<_>>>()?;
        let costmap = match &self.costmap {
            None => CostMap::Uniform,
            Some(c) => c.build(&bounds, self.base_dir.as_deref())?,
        };
        Environment::new(
            self.name.clone().unwrap_or_else(|| "custom".into()),
            bounds,
            obstacles,
            costmap,
            start,
            goal,
            self.goal_radius.unwrap_or(eta / 2.0),
            eta,
        )
    }
}

impl CostMapConfig {
    pub fn build(&self, bounds: &Bounds, base_dir: Option<&std::path::Path>) -> Result<CostMap> {
        match self {
            Self::Uniform => Ok(CostMap::Uniform),
            Self::Constant { value } => CostMap::constant(*value),
            Self::Potential {
                centers,
                amplitude,
                width,
            } => {
                let centers = centers
                    .iter()
                    .map(|c| StateVec::new(c.clone()))
                    .collect::<Result<Vec<_>>>()?;
                CostMap::potential(centers, *amplitude, *width)
            }
            Self::Terrain {
                raster,
                c_min,
                c_max,
            } => {
                let path = match base_dir {
                    Some(dir) if raster.is_relative() => dir.join(raster),
                    _ => raster.clone(),
                };
                let grid = Grid2D::load_pgm(&path)?;
                let domain =
                    Bounds::new(bounds.lower()[..2].to_vec(), bounds.upper()[..2].to_vec())?;
                CostMap::terrain(grid, domain, *c_min, *c_max)
            }
        }
    }
}
