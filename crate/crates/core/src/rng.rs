//! Seeded random streams and the direction/radial sampling primitives shared
//! by every sampler.
//!
//! `RngStream` is ChaCha8 (as implemented by `rand_chacha` 0.9) keyed with
//! `seed_from_u64`. Uniform reals are the 53-bit mantissa construction of
//! `rand`'s `StandardUniform`, normals come from `rand_distr::StandardNormal`
//! (ziggurat). Any reimplementation following those three definitions replays
//! the same streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::vector::StateVec;

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw on `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw on `(0, 1]`.
    #[inline]
    pub fn uniform_open_closed(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Uniform draw on `[lo, hi)`.
    #[inline]
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    #[inline]
    pub fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }
}

/// Uniformly distributed unit vector on the (d-1)-sphere, drawn by
/// normalizing d independent standard normals.
pub fn sample_unit_direction(rng: &mut RngStream, dim: usize) -> StateVec {
    assert!(dim >= 2, "direction dimension must be at least 2");
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.normal()).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        // an all-zero (or denormal) draw has no direction; redraw
        if norm > 1e-150 {
            return StateVec::from_vec_unchecked(v.into_iter().map(|c| c / norm).collect());
        }
    }
}

/// `u^(1/d) * gamma_rel` for `u ~ U(0, 1]`. The result lies in `(0, gamma_rel]`.
pub fn radial_offset(rng: &mut RngStream, gamma_rel: f64, dim: usize) -> Result<f64> {
    let u = rng.uniform_open_closed();
    radial_offset_with(u, gamma_rel, dim)
}

/// Deterministic core of [`radial_offset`] for a given `u` in `(0, 1]`.
pub fn radial_offset_with(u: f64, gamma_rel: f64, dim: usize) -> Result<f64> {
    if !(gamma_rel > 0.0) || !gamma_rel.is_finite() {
        return Err(Error::Usage(format!(
            "radial offset needs a positive finite step limit, got {gamma_rel}"
        )));
    }
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::Usage(format!("u must lie in (0, 1], got {u}")));
    }
    if dim == 0 {
        return Err(Error::Usage("dimension must be positive".into()));
    }
    Ok(u.powf(1.0 / dim as f64) * gamma_rel)
}
