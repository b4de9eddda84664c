//! Exploration strategies: uniform with goal bias, direct informed sampling,
//! relevant region sampling and the transition test.

mod informed;
mod relevant;
mod step_limit;
mod transition;

pub use informed::{
    in_informed_set, informed_sample, sample_unit_ball, uniform_in_bounds, unit_ball_volume,
    Hyperspheroid,
};
pub use relevant::{f_hat, relevant_region_sample, RelevantOutcome, MAX_ATTEMPTS};
pub use step_limit::{quadratic_roots, step_limit_general, step_limit_uniform, StepLimitInputs};
pub use transition::{transition_test, TransitionParams, TransitionState};

use crate::environment::Environment;
use crate::graph::{Graph, RelevantQueue, VertexId};
use crate::rng::RngStream;
use crate::vector::StateVec;

/// Returns the goal state with probability `p_goal`, otherwise a uniform
/// draw over the bounds.
pub fn uniform_goal_biased(rng: &mut RngStream, env: &Environment, p_goal: f64) -> StateVec {
    if rng.uniform() < p_goal {
        env.goal().clone()
    } else {
        uniform_in_bounds(rng, env.bounds())
    }
}

/// Uniform pick among the `n_q` lowest-weight relevant vertices. `None` when
/// no vertex is relevant.
pub fn choose_vertex(
    queue: &mut RelevantQueue,
    graph: &mut Graph,
    n_q: usize,
    rng: &mut RngStream,
) -> Option<VertexId> {
    queue.choose(graph, n_q, rng)
}
