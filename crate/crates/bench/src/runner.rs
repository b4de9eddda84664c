use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use relreg::environment::{build_environment, Environment};
use relreg::planner::{plan, BenchRecord, PlannerConfig};
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, Variant};
use crate::error::Result;

/// Records of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub label: String,
    pub trial: usize,
    pub seed: u64,
    pub records: Vec<BenchRecord>,
    /// Panic message when the trial was quarantined.
    pub panic: Option<String>,
}

impl TrialOutcome {
    pub fn final_cost(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.best_cost)
    }

    pub fn succeeded(&self) -> bool {
        self.panic.is_none() && self.final_cost().is_some()
    }
}

/// Horizontal axis of the convergence checkpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    TimeMs,
    Iterations,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointStat {
    pub at: f64,
    /// Quartiles of the incumbent across trials; `None` while more than
    /// the corresponding share of trials is unsolved.
    pub q1: Option<f64>,
    pub median: Option<f64>,
    pub q3: Option<f64>,
    pub solved: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerSummary {
    pub label: String,
    pub trials: usize,
    pub successes: usize,
    pub panicked: usize,
    pub success_rate: f64,
    pub final_q1: Option<f64>,
    pub final_median: Option<f64>,
    pub final_q3: Option<f64>,
    pub checkpoints: Vec<CheckpointStat>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub world: String,
    pub axis: Axis,
    pub samplers: Vec<SamplerSummary>,
}

impl Summary {
    pub fn sampler(&self, label: &str) -> Option<&SamplerSummary> {
        self.samplers.iter().find(|s| s.label == label)
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub trials: Vec<TrialOutcome>,
    pub summary: Summary,
}

/// Runs every variant for every trial. Iteration-only budgets switch wall
/// clock recording off so that repeated runs produce identical records.
pub fn run_benchmark(cfg: &RunConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let env = build_environment(&cfg.environment)?;
    let variants = cfg.variants();
    let axis = axis_of(&cfg.planner);
    let tasks: Vec<(&Variant, usize)> = variants
        .iter()
        .flat_map(|v| (0..cfg.bench.trials).map(move |t| (v, t)))
        .collect();
    let run = |&(v, t): &(&Variant, usize)| run_trial(&env, v, t, cfg.bench.base_seed, axis);
    let trials: Vec<TrialOutcome> = if cfg.bench.parallel {
        tasks.par_iter().map(run).collect::<Result<_>>()?
    } else {
        tasks.iter().map(run).collect::<Result<_>>()?
    };
    let budget = match axis {
        Axis::TimeMs => cfg.planner.time_budget_ms.unwrap_or(0) as f64,
        Axis::Iterations => cfg.planner.iterations.unwrap_or(0) as f64,
    };
    let summary = Summary {
        world: env.name().to_string(),
        axis,
        samplers: variants
            .iter()
            .map(|v| {
                let own: Vec<&TrialOutcome> =
                    trials.iter().filter(|t| t.label == v.label).collect();
                summarize(&v.label, &own, axis, budget)
            })
            .collect(),
    };
    Ok(BenchReport { trials, summary })
}

fn axis_of(planner: &PlannerConfig) -> Axis {
    if planner.time_budget_ms.is_some() && planner.timing {
        Axis::TimeMs
    } else {
        Axis::Iterations
    }
}

fn run_trial(
    env: &Environment,
    v: &Variant,
    trial: usize,
    base_seed: u64,
    axis: Axis,
) -> Result<TrialOutcome> {
    let seed = base_seed.wrapping_add(trial as u64);
    let cfg = PlannerConfig {
        seed,
        timing: axis == Axis::TimeMs,
        ..v.planner.clone()
    };
    let (records, panic) = match catch_unwind(AssertUnwindSafe(|| plan(env, cfg))) {
        Ok(res) => (res?.records, None),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            (Vec::new(), Some(msg))
        }
    };
    Ok(TrialOutcome {
        label: v.label.clone(),
        trial,
        seed,
        records,
        panic,
    })
}

/// Checkpoints at `budget / 2^k`, from one unit up to the budget.
pub fn geometric_checkpoints(budget: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut at = budget;
    while at >= 1.0 {
        out.push(at);
        at /= 2.0;
    }
    out.reverse();
    out
}

fn position(r: &BenchRecord, axis: Axis) -> f64 {
    match axis {
        Axis::TimeMs => r.elapsed_ms.unwrap_or(0.0),
        Axis::Iterations => r.iteration as f64,
    }
}

/// Incumbent of a trial at `at`; infinite before the first solution.
fn cost_at(records: &[BenchRecord], at: f64, axis: Axis) -> f64 {
    records
        .iter()
        .take_while(|r| position(r, axis) <= at)
        .last()
        .and_then(|r| r.best_cost)
        .unwrap_or(f64::INFINITY)
}

/// Linearly interpolated quantile of sorted values, infinite entries
/// included.
fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    let v = if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    };
    v.is_finite().then_some(v)
}

fn summarize(label: &str, trials: &[&TrialOutcome], axis: Axis, budget: f64) -> SamplerSummary {
    let live: Vec<&TrialOutcome> = trials
        .iter()
        .copied()
        .filter(|t| t.panic.is_none())
        .collect();
    let quartiles = |mut v: Vec<f64>| {
        // quarantined trials count as unsolved
        v.extend(std::iter::repeat_n(
            f64::INFINITY,
            trials.len() - live.len(),
        ));
        v.sort_by(f64::total_cmp);
        (quantile(&v, 0.25), quantile(&v, 0.5), quantile(&v, 0.75))
    };
    let checkpoints = geometric_checkpoints(budget)
        .into_iter()
        .map(|at| {
            let costs: Vec<f64> = live.iter().map(|t| cost_at(&t.records, at, axis)).collect();
            let solved = costs.iter().filter(|c| c.is_finite()).count();
            let (q1, median, q3) = quartiles(costs);
            CheckpointStat {
                at,
                q1,
                median,
                q3,
                solved,
            }
        })
        .collect();
    let finals: Vec<f64> = live
        .iter()
        .map(|t| t.final_cost().unwrap_or(f64::INFINITY))
        .collect();
    let successes = trials.iter().filter(|t| t.succeeded()).count();
    let (final_q1, final_median, final_q3) = quartiles(finals);
    SamplerSummary {
        label: label.to_string(),
        trials: trials.len(),
        successes,
        panicked: trials.len() - live.len(),
        success_rate: successes as f64 / trials.len().max(1) as f64,
        final_q1,
        final_median,
        final_q3,
        checkpoints,
    }
}
