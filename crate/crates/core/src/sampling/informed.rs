//! Direct sampling of the L2 informed set, the prolate hyperspheroid with
//! foci `x_s`, `x_g` and transverse diameter `c_i`, intersected with the
//! planning bounds.

use crate::error::{Error, Result};
use crate::rng::{sample_unit_direction, RngStream};
use crate::vector::{Bounds, StateVec};

/// Lebesgue measure of the unit d-ball.
pub fn unit_ball_volume(dim: usize) -> f64 {
    let mut v = if dim.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if dim.is_multiple_of(2) { 2 } else { 3 };
    while k <= dim {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

/// Uniform point in the closed unit d-ball.
pub fn sample_unit_ball(rng: &mut RngStream, dim: usize) -> StateVec {
    let dir = sample_unit_direction(rng, dim);
    let r = rng.uniform_open_closed().powf(1.0 / dim as f64);
    dir.scaled(r)
}

pub fn uniform_in_bounds(rng: &mut RngStream, bounds: &Bounds) -> StateVec {
    let v = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .map(|(lo, hi)| rng.uniform_range(*lo, *hi))
        .collect();
    StateVec::from_vec_unchecked(v)
}

/// `sum |x - f_k| < c`
#[inline]
pub fn in_informed_set(x: &StateVec, x_s: &StateVec, x_g: &StateVec, c_i: f64) -> bool {
    x.dist(x_s) + x.dist(x_g) < c_i
}

/// Precomputed affine map from the unit ball onto the hyperspheroid.
///
/// The map is `x = center + H * diag(r) * y`, where `H` is the Householder
/// reflection sending the first basis vector to the focal axis. A reflection
/// is orthogonal, and `diag(r)` is symmetric in all axes but the first, so the
/// image of the ball is the same set as with a rotation.
#[derive(Clone, Debug)]
pub struct Hyperspheroid {
    center: Vec<f64>,
    radii: Vec<f64>,
    // unit Householder vector, None when the focal axis is already e1
    w: Option<Vec<f64>>,
}

impl Hyperspheroid {
    pub fn new(x_s: &StateVec, x_g: &StateVec, c_i: f64) -> Result<Self> {
        let c_min = x_s.dist(x_g);
        if !(c_i > c_min) {
            return Err(Error::DegenerateSet {
                cost: c_i,
                lower_bound: c_min,
            });
        }
        let d = x_s.dim();
        let center: Vec<f64> = x_s.lerp(x_g, 0.5).into_vec();
        let minor = ((c_i - c_min) * (c_i + c_min)).sqrt() / 2.0;
        let mut radii = vec![minor; d];
        radii[0] = c_i / 2.0;
        let mut w: Vec<f64> = x_g.sub(x_s).scaled(-1.0 / c_min).into_vec();
        w[0] += 1.0;
        let norm = w.iter().map(|c| c * c).sum::<f64>().sqrt();
        let w = if norm > 1e-12 {
            Some(w.into_iter().map(|c| c / norm).collect())
        } else {
            None
        };
        Ok(Self { center, radii, w })
    }

    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.radii.len()) * self.radii.iter().product::<f64>()
    }

    pub fn map(&self, y: &StateVec) -> StateVec {
        let mut z: Vec<f64> = y
            .as_slice()
            .iter()
            .zip(&self.radii)
            .map(|(a, r)| a * r)
            .collect();
        if let Some(w) = &self.w {
            let k = 2.0 * z.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
            for (zi, wi) in z.iter_mut().zip(w) {
                *zi -= k * wi;
            }
        }
        for (zi, ci) in z.iter_mut().zip(&self.center) {
            *zi += ci;
        }
        StateVec::from_vec_unchecked(z)
    }
}

/// Uniform sample of the informed set intersected with `bounds`. With an
/// infinite `c_i` the informed set is the whole space and this is a uniform
/// draw over the bounds.
pub fn informed_sample(
    rng: &mut RngStream,
    x_s: &StateVec,
    x_g: &StateVec,
    c_i: f64,
    bounds: &Bounds,
) -> Result<StateVec> {
    if c_i == f64::INFINITY {
        return Ok(uniform_in_bounds(rng, bounds));
    }
    let ell = Hyperspheroid::new(x_s, x_g, c_i)?;
    // draw from whichever of the two sets is smaller and reject against the
    // other; both are uniform on the intersection
    if ell.volume() <= bounds.volume() {
        loop {
            let x = ell.map(&sample_unit_ball(rng, x_s.dim()));
            if bounds.contains(&x) && in_informed_set(&x, x_s, x_g, c_i) {
                return Ok(x);
            }
        }
    } else {
        loop {
            let x = uniform_in_bounds(rng, bounds);
            if in_informed_set(&x, x_s, x_g, c_i) {
                return Ok(x);
            }
        }
    }
}
