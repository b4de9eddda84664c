//! Sampling of the relevant region: pick a relevant vertex from the weighted
//! queue, a random direction, and a radial offset below the step limit.

use crate::environment::Environment;
use crate::error::Result;
use crate::graph::{Graph, RelevantQueue, VertexId};
use crate::rng::{radial_offset, sample_unit_direction, RngStream};
use crate::vector::StateVec;

use super::step_limit::{step_limit_general, step_limit_uniform, StepLimitInputs};

/// Vertex draws per call before giving up and letting the caller fall back.
pub const MAX_ATTEMPTS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub enum RelevantOutcome {
    Sample {
        x: StateVec,
        parent: VertexId,
        gamma_rel: f64,
        radius: f64,
    },
    /// The queue held no relevant vertex.
    NoRelevantVertex,
    /// Every attempt produced a point that failed the membership guard.
    Exhausted,
}

/// Tree-based cost estimate `r C(v_p) + g_T(v_p) + |x - x_g|` for a sample at
/// distance `r` from its parent.
#[inline]
pub fn f_hat(radius: f64, c_vp: f64, g_parent: f64, x: &StateVec, goal: &StateVec) -> f64 {
    radius * c_vp + g_parent + x.dist(goal)
}

/// Draws a point in the relevant region. `queue` is refreshed against `c_i`
/// first. Every returned sample is within `epsilon` of its parent, inside the
/// bounds and has `f_hat < c_i`; since `g_T(v_p) >= |v_p - x_s|` and `C >= 1`
/// it then also lies in the informed set.
pub fn relevant_region_sample(
    graph: &mut Graph,
    queue: &mut RelevantQueue,
    env: &Environment,
    c_i: f64,
    epsilon: f64,
    n_q: usize,
    rng: &mut RngStream,
) -> Result<RelevantOutcome> {
    queue.update(graph, c_i);
    let goal = env.goal();
    let uniform = env.costmap().is_uniform();
    for _ in 0..MAX_ATTEMPTS {
        let Some(vp) = queue.choose(graph, n_q, rng) else {
            return Ok(RelevantOutcome::NoRelevantVertex);
        };
        let dir = sample_unit_direction(rng, env.dim());
        let v = graph.state(vp).clone();
        let g_t = graph.g(vp);
        let h = v.dist(goal);
        let cos_theta = if h > 0.0 {
            (v.sub(goal).dot(&dir) / h).clamp(-1.0, 1.0)
        } else {
            0.0
        };
        let c_vp = if uniform { 1.0 } else { env.state_cost(&v)? };
        let inputs = StepLimitInputs {
            g_gp: c_i - g_t,
            h_vg: h,
            cos_theta,
            c_vp,
            epsilon,
        };
        let gamma_rel = if uniform {
            step_limit_uniform(&inputs)?
        } else {
            step_limit_general(&inputs)?
        };
        let radius = radial_offset(rng, gamma_rel, env.dim())?;
        let x = v.offset(&dir, radius);
        // the step limit makes these hold in exact arithmetic; the checks
        // keep boundary draws (u = 1) and rounding out of the region
        let ok = radius < epsilon
            && env.bounds().contains(&x)
            && f_hat(radius, c_vp, g_t, &x, goal) < c_i;
        if ok {
            return Ok(RelevantOutcome::Sample {
                x,
                parent: vp,
                gamma_rel,
                radius,
            });
        }
    }
    Ok(RelevantOutcome::Exhausted)
}
