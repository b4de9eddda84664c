//! Largest step along a direction that keeps a sample inside the relevant
//! set of its parent vertex.
//!
//! With `x = v_p + gamma * e`, `h = |v_p - x_g|` and `cos_theta` the cosine
//! between `v_p - x_g` and `e`, membership requires
//!
//! `gamma * C + g_T(v_p) + sqrt(h^2 + 2 gamma h cos_theta + gamma^2) < c_i`.
//!
//! Squaring gives `a gamma^2 - 2 b gamma + (g^2 - h^2) > 0` with
//! `a = C^2 - 1`, `b = g C + h cos_theta`, `g = c_i - g_T(v_p)`. The feasible
//! interval is `(0, gamma_1)` where `gamma_1` is the smaller root.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepLimitInputs {
    /// `c_i - g_T(v_p)`
    pub g_gp: f64,
    /// `|v_p - x_g|`
    pub h_vg: f64,
    pub cos_theta: f64,
    /// State cost at the parent vertex.
    pub c_vp: f64,
    pub epsilon: f64,
}

impl StepLimitInputs {
    fn validate(&self) -> Result<()> {
        let all_finite = [
            self.g_gp,
            self.h_vg,
            self.cos_theta,
            self.c_vp,
            self.epsilon,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::Usage(format!(
                "non-finite step-limit input {self:?}"
            )));
        }
        if !(self.h_vg >= 0.0 && self.g_gp > self.h_vg) {
            return Err(Error::Usage(format!(
                "parent is not relevant: g_gp = {}, h = {}",
                self.g_gp, self.h_vg
            )));
        }
        if !(-1.0..=1.0).contains(&self.cos_theta) {
            return Err(Error::Usage(format!(
                "cos_theta {} outside [-1, 1]",
                self.cos_theta
            )));
        }
        if !(self.c_vp >= 1.0) {
            return Err(Error::Usage(format!("state cost {} below 1", self.c_vp)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Usage(format!(
                "epsilon {} must be > 0",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// `g^2 - h^2` without the cancellation of the naive form.
    #[inline]
    fn gap(&self) -> f64 {
        (self.g_gp - self.h_vg) * (self.g_gp + self.h_vg)
    }
}

/// Step limit for `C = 1`: `min((g^2 - h^2) / (2 (h cos_theta + g)), epsilon)`.
pub fn step_limit_uniform(inp: &StepLimitInputs) -> Result<f64> {
    inp.validate()?;
    let gamma = inp.gap() / (2.0 * (inp.h_vg * inp.cos_theta + inp.g_gp));
    Ok(gamma.min(inp.epsilon))
}

/// Step limit with the cost along the step frozen at `C(v_p)`.
pub fn step_limit_general(inp: &StepLimitInputs) -> Result<f64> {
    inp.validate()?;
    if inp.c_vp == 1.0 {
        return step_limit_uniform(inp);
    }
    let c = inp.c_vp;
    let a = (c - 1.0) * (c + 1.0);
    let b = inp.g_gp * c + inp.h_vg * inp.cos_theta;
    let delta = b * b - a * inp.gap();
    if delta <= 0.0 {
        return Ok((inp.g_gp / c).min(inp.epsilon));
    }
    // (b - sqrt(delta)) / a rewritten so nothing cancels; b > 0 always holds
    // because g > h and C >= 1
    let gamma = inp.gap() / (b + delta.sqrt());
    Ok(gamma.min(inp.epsilon))
}

/// Discriminant and both roots of the quadratic, for diagnostics and tests.
/// Requires `C > 1`.
pub fn quadratic_roots(inp: &StepLimitInputs) -> Result<(f64, f64, f64)> {
    inp.validate()?;
    if inp.c_vp <= 1.0 {
        return Err(Error::Usage("roots are only defined for C > 1".into()));
    }
    let c = inp.c_vp;
    let a = (c - 1.0) * (c + 1.0);
    let b = inp.g_gp * c + inp.h_vg * inp.cos_theta;
    let delta = b * b - a * inp.gap();
    let s = delta.max(0.0).sqrt();
    Ok((delta, inp.gap() / (b + s), (b + s) / a))
}
