//! Registered benchmark worlds.

use crate::costmap::{self, CostMap, Grid2D};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::vector::{Bounds, StateVec};

use super::{BoxObstacle, Environment, EnvironmentConfig};

const MULTI_OBSTACLE_LAYOUT: &str = include_str!("../../worlds/multi_obstacle_2d.toml");
const TERRAIN_PGM: &[u8] = include_bytes!("../../assets/terrain_2d.pgm");

/// Half-extent of the added axes in extruded worlds.
const EXTRA_AXIS_HALF: f64 = 3.0;
/// Obstacles span `[-1, 1]` on every added axis.
const EXTRUDE_HALF: f64 = 1.0;

pub const TERRAIN_RASTER_SIZE: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct WorldInfo {
    pub name: &'static str,
    pub dim: usize,
    pub eta: f64,
    pub description: &'static str,
}

const WORLDS: [WorldInfo; 8] = [
    WorldInfo {
        name: "multi_obstacle_2d",
        dim: 2,
        eta: 0.6,
        description: "12 boxes in [0,20]^2, uniform cost",
    },
    WorldInfo {
        name: "multi_obstacle_4d",
        dim: 4,
        eta: 0.6,
        description: "planar boxes extruded to [-1,1] on axes 3-4, uniform cost",
    },
    WorldInfo {
        name: "multi_obstacle_6d",
        dim: 6,
        eta: 1.2,
        description: "planar boxes extruded to [-1,1] on axes 3-6, uniform cost",
    },
    WorldInfo {
        name: "terrain_2d",
        dim: 2,
        eta: 0.3,
        description: "raster terrain over [0,10]^2: a narrow low-cost canyon through rough terrain",
    },
    WorldInfo {
        name: "potential_2d",
        dim: 2,
        eta: 0.5,
        description: "two Gaussian danger regions over [0,10]^2",
    },
    WorldInfo {
        name: "potential_4d",
        dim: 4,
        eta: 0.6,
        description: "potential_2d with two added free axes",
    },
    WorldInfo {
        name: "potential_6d",
        dim: 6,
        eta: 1.5,
        description: "potential_2d with four added free axes",
    },
    WorldInfo {
        name: "box7d",
        dim: 7,
        eta: 0.7,
        description: "8 fixed pseudo-random boxes in [-pi,pi]^7, uniform cost",
    },
];

pub fn registered_worlds() -> &'static [WorldInfo] {
    &WORLDS
}

/// Builds the world a config describes, applying start/goal/radius/step
/// overrides on top of registered worlds.
pub fn build_environment(cfg: &EnvironmentConfig) -> Result<Environment> {
    let name = match cfg.world.as_deref() {
        None | Some("custom") => return cfg.build_custom(),
        Some(name) => name,
    };
    if cfg.has_geometry() {
        return Err(Error::Config(format!(
            "registered world `{name}` cannot be combined with bounds, obstacles or costmap"
        )));
    }
    let base = build_registered(name)?;
    if cfg.start.is_none() && cfg.goal.is_none() && cfg.goal_radius.is_none() && cfg.eta.is_none() {
        return Ok(base);
    }
    let eta = cfg.eta.unwrap_or(base.eta());
    let start = match &cfg.start {
        Some(s) => StateVec::new(s.clone())?,
        None => base.start().clone(),
    };
    let goal = match &cfg.goal {
        Some(g) => StateVec::new(g.clone())?,
        None => base.goal().clone(),
    };
    Environment::new(
        name,
        base.bounds().clone(),
        base.obstacles().to_vec(),
        base.costmap().clone(),
        start,
        goal,
        cfg.goal_radius.unwrap_or(eta / 2.0),
        eta,
    )
}

fn build_registered(name: &str) -> Result<Environment> {
    match name {
        "multi_obstacle_2d" => multi_obstacle(2),
        "multi_obstacle_4d" => multi_obstacle(4),
        "multi_obstacle_6d" => multi_obstacle(6),
        "terrain_2d" => terrain(),
        "potential_2d" => potential(2),
        "potential_4d" => potential(4),
        "potential_6d" => potential(6),
        "box7d" => box7d(),
        other => Err(Error::Config(format!(
            "unknown world `{other}` (known: {})",
            WORLDS.iter().map(|w| w.name).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn info(name: &str) -> &'static WorldInfo {
    WORLDS
        .iter()
        .find(|w| w.name == name)
        .expect("registered world")
}

fn pad(v: &[f64], dim: usize, fill: f64) -> Vec<f64> {
    let mut out = v.to_vec();
    out.resize(dim, fill);
    out
}

fn planar_layout() -> Result<EnvironmentConfig> {
    EnvironmentConfig::from_toml(MULTI_OBSTACLE_LAYOUT)
}

fn multi_obstacle(dim: usize) -> Result<Environment> {
    let layout = planar_layout()?;
    let planar = layout.build_custom()?;
    if dim == 2 {
        return Ok(planar);
    }
    let extra = dim - 2;
    let w = *info(&format!("multi_obstacle_{dim}d"));
    let bounds = extend_bounds(planar.bounds(), dim)?;
    let obstacles = planar
        .obstacles()
        .iter()
        .map(|o| o.extruded(extra, EXTRUDE_HALF))
        .collect();
    Environment::new(
        w.name,
        bounds,
        obstacles,
        CostMap::Uniform,
        StateVec::new(pad(planar.start().as_slice(), dim, 0.0))?,
        StateVec::new(pad(planar.goal().as_slice(), dim, 0.0))?,
        w.eta / 2.0,
        w.eta,
    )
}

fn extend_bounds(planar: &Bounds, dim: usize) -> Result<Bounds> {
    Bounds::new(
        pad(planar.lower(), dim, -EXTRA_AXIS_HALF),
        pad(planar.upper(), dim, EXTRA_AXIS_HALF),
    )
}

fn potential(dim: usize) -> Result<Environment> {
    let w = info(&format!("potential_{dim}d"));
    let planar = Bounds::cube(2, 0.0, 10.0)?;
    let bounds = if dim == 2 {
        planar
    } else {
        extend_bounds(&planar, dim)?
    };
    let centers = [[3.5, 6.0], [6.5, 4.0]]
        .iter()
        .map(|c| StateVec::new(pad(c, dim, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let costmap = CostMap::potential(
        centers,
        costmap::POTENTIAL_AMPLITUDE,
        costmap::POTENTIAL_WIDTH,
    )?;
    Environment::new(
        w.name,
        bounds,
        Vec::new(),
        costmap,
        StateVec::new(pad(&[1.0, 1.0], dim, 0.0))?,
        StateVec::new(pad(&[9.0, 9.0], dim, 0.0))?,
        w.eta / 2.0,
        w.eta,
    )
}

fn terrain() -> Result<Environment> {
    let w = info("terrain_2d");
    let bounds = Bounds::cube(2, 0.0, 10.0)?;
    let raster = Grid2D::from_pgm(TERRAIN_PGM)?;
    let costmap = CostMap::terrain(
        raster,
        bounds.clone(),
        costmap::TERRAIN_C_MIN,
        costmap::TERRAIN_C_MAX,
    )?;
    Environment::new(
        w.name,
        bounds,
        Vec::new(),
        costmap,
        StateVec::new(vec![1.0, 1.0])?,
        StateVec::new(vec![9.0, 9.0])?,
        w.eta / 2.0,
        w.eta,
    )
}

/// Procedural source of the shipped terrain raster over `[0,10]^2`. Rough,
/// bright terrain covers the map except for two smooth basins around
/// (1, 1) and (9, 9), a narrow canyon meandering between them and two
/// dead-end ponds. Values are brightness in `[0, 1]`.
pub fn canyon_raster(size: usize) -> Result<Grid2D> {
    let smoothstep = |edge0: f64, edge1: f64, x: f64| {
        let t = ((x - edge0) / (edge1 - edge0)).clamp(0.0, 1.0);
        t * t * (3.0 - 2.0 * t)
    };
    let sqrt2 = std::f64::consts::SQRT_2;
    // canyon centerline in diagonal coordinates: t along (1,1), n across
    let (t0, t1) = (sqrt2, 9.0 * sqrt2);
    let amp = 2.5;
    let k = 3.0 * std::f64::consts::PI / (t1 - t0);
    let basins = [
        (1.0, 1.0, 1.0),
        (9.0, 9.0, 1.0),
        (2.0, 8.0, 0.7),
        (8.0, 2.0, 0.7),
    ];
    Grid2D::from_fn(size, size, |col, row| {
        let x = 10.0 * col as f64 / (size - 1) as f64;
        let y = 10.0 * (1.0 - row as f64 / (size - 1) as f64);
        let t = (x + y) / sqrt2;
        let n = (y - x) / sqrt2;
        let tc = t.clamp(t0, t1);
        let nc = amp * (k * (tc - t0)).sin();
        let slope = amp * k * (k * (tc - t0)).cos();
        let across = (n - nc).abs() / (1.0 + slope * slope).sqrt();
        let canyon = 1.0 - smoothstep(0.25, 0.45, across);
        let basin = basins
            .iter()
            .map(|(cx, cy, r)| {
                let d = ((x - cx) * (x - cx) + (y - cy) * (y - cy)).sqrt();
                1.0 - smoothstep(*r, r + 0.5, d)
            })
            .fold(0.0, f64::max);
        let smooth = canyon.max(basin);
        let texture = 0.5 + 0.5 * (3.1 * x).sin() * (2.7 * y).sin();
        ((1.0 - smooth) * (0.85 + 0.15 * texture) + smooth * 0.05 * texture).clamp(0.0, 1.0)
    })
}

fn box7d() -> Result<Environment> {
    let w = info("box7d");
    let dim = 7;
    let pi = std::f64::consts::PI;
    let bounds = Bounds::cube(dim, -pi, pi)?;
    let start = StateVec::new(vec![-2.0; dim])?;
    let goal = StateVec::new(vec![2.0; dim])?;
    let r_goal = w.eta / 2.0;
    // fixed stream: the layout is part of the world definition
    let mut rng = RngStream::new(0x7d7d);
    let mut obstacles = Vec::with_capacity(8);
    while obstacles.len() < 8 {
        let s = rng.uniform_range(-1.5, 1.5);
        let center: Vec<f64> = (0..dim).map(|_| s + 0.5 * rng.normal()).collect();
        let half: Vec<f64> = (0..dim).map(|_| rng.uniform_range(0.5, 1.5)).collect();
        let lower: Vec<f64> = center
            .iter()
            .zip(&half)
            .map(|(c, h)| (c - h).max(-pi))
            .collect();
        let upper: Vec<f64> = center
            .iter()
            .zip(&half)
            .map(|(c, h)| (c + h).min(pi))
            .collect();
        let candidate = BoxObstacle::new(lower, upper)?;
        let clear = |p: &StateVec| {
            let d2: f64 = p
                .as_slice()
                .iter()
                .zip(candidate.lower().iter().zip(candidate.upper()))
                .map(|(c, (lo, hi))| {
                    let q = c.clamp(*lo, *hi);
                    (c - q) * (c - q)
                })
                .sum();
            d2 > (2.0 * r_goal) * (2.0 * r_goal)
        };
        if clear(&start) && clear(&goal) {
            obstacles.push(candidate);
        }
    }
    Environment::new(
        w.name,
        bounds,
        obstacles,
        CostMap::Uniform,
        start,
        goal,
        r_goal,
        w.eta,
    )
}
