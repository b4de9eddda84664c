//! State cost functions and the integral-of-cost edge metric.

mod raster;

pub use raster::Grid2D;

use crate::error::{Error, Result};
use crate::vector::{Bounds, StateVec};

/// Default amplitude of each potential bump.
pub const POTENTIAL_AMPLITUDE: f64 = 9.0;
/// Default width (divisor of the squared distance) of each potential bump.
pub const POTENTIAL_WIDTH: f64 = 5.0;
pub const TERRAIN_C_MIN: f64 = 1.0;
pub const TERRAIN_C_MAX: f64 = 10.0;

/// Continuous state cost `C(x) >= 1`.
#[derive(Clone, Debug)]
pub enum CostMap {
    /// `C(x) = 1`; edge costs reduce to Euclidean length.
    Uniform,
    /// `C(x) = c` everywhere.
    Constant(f64),
    /// `C(x) = 1 + amplitude * sum_k exp(-|c_k - x|^2 / width)`.
    Potential {
        centers: Vec<StateVec>,
        amplitude: f64,
        width: f64,
    },
    /// `C(x) = c_min + (c_max - c_min) * bilinear(raster, x[0], x[1])`.
    /// Higher coordinates do not affect the cost.
    Terrain {
        raster: Grid2D,
        domain: Bounds,
        c_min: f64,
        c_max: f64,
    },
}

impl CostMap {
    pub fn constant(c: f64) -> Result<Self> {
        if !(c >= 1.0 && c.is_finite()) {
            return Err(Error::Config(format!(
                "constant cost {c} must be finite and >= 1"
            )));
        }
        Ok(Self::Constant(c))
    }

    pub fn potential(centers: Vec<StateVec>, amplitude: f64, width: f64) -> Result<Self> {
        if !(amplitude >= 0.0 && amplitude.is_finite()) {
            return Err(Error::Config(format!(
                "potential amplitude {amplitude} must be >= 0"
            )));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::Config(format!(
                "potential width {width} must be > 0"
            )));
        }
        if let Some(first) = centers.first() {
            if let Some(bad) = centers.iter().find(|c| c.dim() != first.dim()) {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: bad.dim(),
                });
            }
        }
        Ok(Self::Potential {
            centers,
            amplitude,
            width,
        })
    }

    /// `domain` is the planar box the raster spans; only its first two axes
    /// are used.
    pub fn terrain(raster: Grid2D, domain: Bounds, c_min: f64, c_max: f64) -> Result<Self> {
        if !(c_min >= 1.0 && c_max >= c_min && c_max.is_finite()) {
            return Err(Error::Config(format!(
                "terrain costs need 1 <= c_min <= c_max, got [{c_min}, {c_max}]"
            )));
        }
        Ok(Self::Terrain {
            raster,
            domain,
            c_min,
            c_max,
        })
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, Self::Uniform) || matches!(self, Self::Constant(c) if *c == 1.0)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Uniform => "uniform",
            Self::Constant(_) => "constant",
            Self::Potential { .. } => "potential",
            Self::Terrain { .. } => "terrain",
        }
    }
}

/// Evaluates the state cost at `x`.
pub fn eval_cost(cm: &CostMap, x: &StateVec) -> Result<f64> {
    match cm {
        CostMap::Uniform => Ok(1.0),
        CostMap::Constant(c) => Ok(*c),
        CostMap::Potential {
            centers,
            amplitude,
            width,
        } => {
            let mut bumps = 0.0;
            for c in centers {
                if c.dim() != x.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: c.dim(),
                        found: x.dim(),
                    });
                }
                bumps += (-c.dist_sq(x) / width).exp();
            }
            Ok(1.0 + amplitude * bumps)
        }
        CostMap::Terrain {
            raster,
            domain,
            c_min,
            c_max,
        } => {
            let (lo, hi) = (domain.lower(), domain.upper());
            let (px, py) = (x[0], x[1]);
            if !(lo[0] <= px && px <= hi[0] && lo[1] <= py && py <= hi[1]) {
                return Err(Error::OutOfDomain(x.to_string()));
            }
            let col = (px - lo[0]) / (hi[0] - lo[0]) * (raster.width() - 1) as f64;
            // row 0 is the top of the image, i.e. the maximum y
            let row = (hi[1] - py) / (hi[1] - lo[1]) * (raster.height() - 1) as f64;
            Ok(c_min + (c_max - c_min) * raster.bilinear(col, row))
        }
    }
}

/// Straight-line integral of cost from `x1` to `x2`, by the composite midpoint
/// rule over `n_seg` equal segments.
pub fn edge_cost(cm: &CostMap, x1: &StateVec, x2: &StateVec, n_seg: usize) -> Result<f64> {
    if n_seg == 0 {
        return Err(Error::Usage("edge cost needs at least one segment".into()));
    }
    if x1.dim() != x2.dim() {
        return Err(Error::DimensionMismatch {
            expected: x1.dim(),
            found: x2.dim(),
        });
    }
    let len = x1.dist(x2);
    match cm {
        CostMap::Uniform => return Ok(len),
        CostMap::Constant(c) => return Ok(len * c),
        _ => {}
    }
    let step = 1.0 / n_seg as f64;
    let mut sum = 0.0;
    for i in 0..n_seg {
        let s = (i as f64 + 0.5) * step;
        sum += eval_cost(cm, &x1.lerp(x2, s))?;
    }
    Ok(len * sum / n_seg as f64)
}

/// Number of midpoint segments for an edge of length `len` at step size
/// `eta`: one segment per `eta / 10` of length.
pub fn default_segments(len: f64, eta: f64) -> usize {
    ((len * 10.0 / eta).ceil() as usize).max(1)
}
