use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Weights;
use crate::sampling::TransitionParams;

/// Exploration strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    /// Uniform over the bounds with goal bias.
    Uniform,
    /// Direct informed sampling once a solution exists.
    Informed,
    /// Relevant region sampling with informed fallback.
    Relevant,
    /// Uniform sampling filtered by the Metropolis transition test.
    Transition,
}

impl SamplerKind {
    pub const ALL: [SamplerKind; 4] = [
        Self::Uniform,
        Self::Informed,
        Self::Relevant,
        Self::Transition,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Uniform => "uniform",
            Self::Informed => "informed",
            Self::Relevant => "relevant",
            Self::Transition => "transition",
        }
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown sampler '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlannerConfig {
    pub sampler: SamplerKind,
    /// Steering step size; the world's default when unset.
    pub eta: Option<f64>,
    /// `epsilon = epsilon_factor * eta`.
    pub epsilon_factor: f64,
    pub p_rel: f64,
    pub p_goal: f64,
    pub n_q: usize,
    pub weights: Weights,
    pub transition: TransitionParams,
    pub iterations: Option<u64>,
    pub time_budget_ms: Option<u64>,
    pub seed: u64,
    /// Record wall-clock times. Off makes record series reproducible.
    pub timing: bool,
    /// End the run at the first solution.
    pub stop_on_solution: bool,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            sampler: SamplerKind::Relevant,
            eta: None,
            epsilon_factor: 1.5,
            p_rel: 0.5,
            p_goal: 0.05,
            n_q: 10,
            weights: Weights::default(),
            transition: TransitionParams::default(),
            iterations: None,
            time_budget_ms: None,
            seed: 0,
            timing: true,
            stop_on_solution: false,
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(eta) = self.eta {
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(Error::Config(format!("eta {eta} must be > 0")));
            }
        }
        if !(self.epsilon_factor > 0.0 && self.epsilon_factor.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon_factor {} must be > 0",
                self.epsilon_factor
            )));
        }
        for (name, p) in [("p_rel", self.p_rel), ("p_goal", self.p_goal)] {
            if !(0.0..1.0).contains(&p) {
                return Err(Error::Config(format!("{name} = {p} must lie in [0, 1)")));
            }
        }
        if self.n_q == 0 {
            return Err(Error::Config("n_q must be >= 1".into()));
        }
        let w = &self.weights;
        if ![w.selection, w.degree, w.cost]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite())
        {
            return Err(Error::Config(format!("weights {w:?} must be positive")));
        }
        self.transition.validate()?;
        if self.iterations.is_none() && self.time_budget_ms.is_none() {
            return Err(Error::Config(
                "a budget is required: set iterations and/or time_budget_ms".into(),
            ));
        }
        Ok(())
    }
}
