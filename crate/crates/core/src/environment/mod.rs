//! Obstacles, state/motion validity, the goal region and the registered
//! benchmark worlds.

mod config;
mod worlds;

pub use config::{CostMapConfig, EnvironmentConfig, ObstacleConfig};
pub use worlds::{
    build_environment, canyon_raster, registered_worlds, WorldInfo, TERRAIN_RASTER_SIZE,
};

use serde::{Deserialize, Serialize};

use crate::costmap::{self, CostMap};
use crate::error::{Error, Result};
use crate::vector::{Bounds, StateVec};

/// Axis-aligned box. Only its open interior is forbidden.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxObstacle {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxObstacle {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        for (lo, hi) in lower.iter().zip(&upper) {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::Config(format!(
                    "obstacle axis [{lo}, {hi}] is invalid"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// True iff `x` is strictly inside the box on every axis.
    #[inline]
    pub fn interior_contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(c, (lo, hi))| *lo < *c && *c < *hi)
    }

    /// Extends the box with `[-half, half]` on `extra` additional axes.
    pub fn extruded(&self, extra: usize, half: f64) -> Self {
        let mut lower = self.lower.clone();
        let mut upper = self.upper.clone();
        lower.extend(std::iter::repeat_n(-half, extra));
        upper.extend(std::iter::repeat_n(half, extra));
        Self { lower, upper }
    }
}

/// A complete planning problem.
#[derive(Clone, Debug)]
pub struct Environment {
    name: String,
    bounds: Bounds,
    obstacles: Vec<BoxObstacle>,
    costmap: CostMap,
    start: StateVec,
    goal: StateVec,
    goal_radius: f64,
    eta: f64,
}

impl Environment {
    /// Assembles and validates an environment. `eta` is the default steering
    /// step size attached to the world.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        bounds: Bounds,
        obstacles: Vec<BoxObstacle>,
        costmap: CostMap,
        start: StateVec,
        goal: StateVec,
        goal_radius: f64,
        eta: f64,
    ) -> Result<Self> {
        let d = bounds.dim();
        for p in [&start, &goal] {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
        }
        if let Some(o) = obstacles.iter().find(|o| o.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: o.dim(),
            });
        }
        if !(goal_radius > 0.0 && goal_radius.is_finite()) {
            return Err(Error::Config(format!(
                "goal radius {goal_radius} must be > 0"
            )));
        }
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::Config(format!("step size {eta} must be > 0")));
        }
        let env = Self {
            name: name.into(),
            bounds,
            obstacles,
            costmap,
            start,
            goal,
            goal_radius,
            eta,
        };
        if !env.is_state_valid(&env.start) {
            return Err(Error::Config(format!(
                "start {} is not a valid state",
                env.start
            )));
        }
        if env.in_goal(&env.start) {
            return Err(Error::Config("start lies inside the goal region".into()));
        }
        if !env.goal_ball_is_free() {
            return Err(Error::Config(format!(
                "goal ball of radius {} around {} is not entirely free",
                env.goal_radius, env.goal
            )));
        }
        // probe the cost map once so that configuration mistakes (dimension,
        // raster domain) surface at build time
        costmap::eval_cost(&env.costmap, &env.start)?;
        costmap::eval_cost(&env.costmap, &env.goal)?;
        Ok(env)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn obstacles(&self) -> &[BoxObstacle] {
        &self.obstacles
    }

    pub fn costmap(&self) -> &CostMap {
        &self.costmap
    }

    pub fn start(&self) -> &StateVec {
        &self.start
    }

    pub fn goal(&self) -> &StateVec {
        &self.goal
    }

    pub fn goal_radius(&self) -> f64 {
        self.goal_radius
    }

    /// Default steering step size for this world.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Free space is the closure of the complement of the obstacles, so
    /// obstacle boundaries are valid.
    pub fn is_state_valid(&self, x: &StateVec) -> bool {
        self.bounds.contains(x)
            && !self
                .obstacles
                .iter()
                .any(|o| o.interior_contains(x.as_slice()))
    }

    /// Checks evenly spaced checkpoints along the segment, including both
    /// endpoints, at spacing no larger than `eta / 20`.
    pub fn is_motion_valid(&self, x1: &StateVec, x2: &StateVec) -> bool {
        self.is_motion_valid_at(x1, x2, self.eta / 20.0)
    }

    /// [`Self::is_motion_valid`] with an explicit checkpoint spacing.
    pub fn is_motion_valid_at(&self, x1: &StateVec, x2: &StateVec, spacing: f64) -> bool {
        let len = x1.dist(x2);
        let n = ((len / spacing).ceil() as usize).max(1);
        let d = x1.dim();
        let mut p = vec![0.0; d];
        for i in 0..=n {
            let s = i as f64 / n as f64;
            for (k, c) in p.iter_mut().enumerate() {
                *c = x1[k] + (x2[k] - x1[k]) * s;
            }
            let inside_bounds = p
                .iter()
                .zip(self.bounds.lower().iter().zip(self.bounds.upper()))
                .all(|(c, (lo, hi))| lo <= c && c <= hi);
            if !inside_bounds || self.obstacles.iter().any(|o| o.interior_contains(&p)) {
                return false;
            }
        }
        true
    }

    /// Closed goal ball.
    pub fn in_goal(&self, x: &StateVec) -> bool {
        x.dist(&self.goal) <= self.goal_radius
    }

    pub fn state_cost(&self, x: &StateVec) -> Result<f64> {
        costmap::eval_cost(&self.costmap, x)
    }

    /// Integral-of-cost edge metric with the default segment rule for this
    /// world's step size.
    pub fn edge_cost(&self, x1: &StateVec, x2: &StateVec) -> Result<f64> {
        let n = costmap::default_segments(x1.dist(x2), self.eta);
        costmap::edge_cost(&self.costmap, x1, x2, n)
    }

    /// Returns a copy with a different default step size; the goal radius is
    /// kept.
    pub fn with_eta(mut self, eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::Config(format!("step size {eta} must be > 0")));
        }
        self.eta = eta;
        Ok(self)
    }

    /// The goal ball is free iff it lies inside the bounds and no obstacle
    /// interior intersects it.
    fn goal_ball_is_free(&self) -> bool {
        let g = self.goal.as_slice();
        let r = self.goal_radius;
        let in_bounds = g
            .iter()
            .zip(self.bounds.lower().iter().zip(self.bounds.upper()))
            .all(|(c, (lo, hi))| c - r >= *lo && c + r <= *hi);
        in_bounds
            && self.obstacles.iter().all(|o| {
                // squared distance from the goal to the box; the open interior
                // meets the closed ball iff that distance is below r
                let d2: f64 = g
                    .iter()
                    .zip(o.lower.iter().zip(&o.upper))
                    .map(|(c, (lo, hi))| {
                        let q = c.clamp(*lo, *hi);
                        (c - q) * (c - q)
                    })
                    .sum();
                let degenerate = o.lower.iter().zip(&o.upper).any(|(lo, hi)| lo == hi);
                degenerate || d2 >= r * r
            })
    }
}
