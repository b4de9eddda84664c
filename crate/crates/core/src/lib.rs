//! Relevant Region sampling for asymptotically optimal sampling-based motion
//! planning on general cost-maps.
//!
//! The crate contains the pieces of an RRT#-style planner: a cost-map and
//! integral-of-cost edge metric, box-obstacle worlds, a graph with global
//! rewiring, and the exploration strategies (uniform, direct informed,
//! relevant region and a Metropolis transition test).

// `!(x > 0.0)` style checks are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod costmap;
pub mod environment;
pub mod error;
pub mod graph;
pub mod planner;
pub mod rng;
pub mod sampling;
pub mod vector;

pub use error::{Error, Result};
pub use vector::{l2_heuristic, Bounds, StateVec};
