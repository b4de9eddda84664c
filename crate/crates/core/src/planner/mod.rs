//! The anytime planning loop: sample, extend, rewire, track the incumbent.
//!
//! The goal point itself is kept as a graph vertex. It is inserted the first
//! time a vertex lands in the goal ball and is linked to every later vertex
//! that does, so the incumbent cost is its cost-to-come and never drops below
//! the straight-line lower bound.

mod config;

pub use config::{PlannerConfig, SamplerKind};

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::environment::Environment;
use crate::error::{Error, Result};
use crate::graph::{Graph, RelevantQueue, VertexId};
use crate::rng::RngStream;
use crate::sampling::{
    informed_sample, relevant_region_sample, transition_test, uniform_goal_biased,
    unit_ball_volume, RelevantOutcome, TransitionState,
};
use crate::vector::StateVec;

/// Relative slack under which the incumbent counts as the straight-line
/// optimum.
pub const OPTIMALITY_TOLERANCE: f64 = 1e-12;

/// Progress snapshot of one planner run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub iteration: u64,
    /// Wall-clock time since the run started; absent when timing is off.
    pub elapsed_ms: Option<f64>,
    pub best_cost: Option<f64>,
    pub vertices: usize,
}

/// Where the random state of an iteration came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSource {
    Goal,
    Uniform,
    Informed,
    Relevant,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerStats {
    pub relevant: u64,
    pub informed: u64,
    pub uniform: u64,
    pub goal: u64,
    /// Relevant draws that fell back to informed sampling.
    pub fallbacks: u64,
    pub extended: u64,
    pub transition_rejects: u64,
}

#[derive(Clone, Debug)]
pub struct PlanResult {
    pub best_cost: Option<f64>,
    /// States from the start to the goal point.
    pub best_path: Vec<StateVec>,
    pub vertices: usize,
    pub edges: usize,
    pub iterations: u64,
    pub records: Vec<BenchRecord>,
    /// The run stopped because the incumbent reached the straight-line
    /// lower bound.
    pub optimal: bool,
    pub stats: SamplerStats,
}

pub struct Planner<'a> {
    env: &'a Environment,
    cfg: PlannerConfig,
    eta: f64,
    epsilon: f64,
    gamma_nn: f64,
    c_min: f64,
    graph: Graph,
    queue: Option<RelevantQueue>,
    transition: Option<TransitionState>,
    rng: RngStream,
    goal_vertex: Option<VertexId>,
    iteration: u64,
    records: Vec<BenchRecord>,
    next_checkpoint: u64,
    last_cost: Option<f64>,
    optimal: bool,
    started: Instant,
    stats: SamplerStats,
    last_sample: Option<(SampleSource, StateVec)>,
}

impl<'a> Planner<'a> {
    pub fn new(env: &'a Environment, cfg: PlannerConfig) -> Result<Self> {
        cfg.validate()?;
        let eta = cfg.eta.unwrap_or(env.eta());
        let d = env.dim() as f64;
        let gamma_nn = 2.0
            * (1.0 + 1.0 / d).powf(1.0 / d)
            * (env.bounds().volume() / unit_ball_volume(env.dim())).powf(1.0 / d);
        let queue = (cfg.sampler == SamplerKind::Relevant)
            .then(|| RelevantQueue::new(cfg.weights, env.goal().clone()));
        let transition = if cfg.sampler == SamplerKind::Transition {
            let k = 0.5 * (env.state_cost(env.start())? + env.state_cost(env.goal())?);
            Some(TransitionState::new(&cfg.transition, k)?)
        } else {
            None
        };
        let mut planner = Self {
            env,
            eta,
            epsilon: cfg.epsilon_factor * eta,
            gamma_nn,
            c_min: env.start().dist(env.goal()),
            graph: Graph::new(env.start().clone()),
            queue,
            transition,
            rng: RngStream::new(cfg.seed),
            goal_vertex: None,
            iteration: 0,
            records: Vec::new(),
            next_checkpoint: 1,
            last_cost: None,
            optimal: false,
            started: Instant::now(),
            stats: SamplerStats::default(),
            last_sample: None,
            cfg,
        };
        planner.record();
        Ok(planner)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &PlannerConfig {
        &self.cfg
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn goal_vertex(&self) -> Option<VertexId> {
        self.goal_vertex
    }

    pub fn records(&self) -> &[BenchRecord] {
        &self.records
    }

    pub fn stats(&self) -> &SamplerStats {
        &self.stats
    }

    pub fn is_optimal(&self) -> bool {
        self.optimal
    }

    /// The random state drawn by the latest iteration.
    pub fn last_sample(&self) -> Option<&(SampleSource, StateVec)> {
        self.last_sample.as_ref()
    }

    /// Incumbent cost `c_i`, infinite before the first solution.
    pub fn best_cost(&self) -> f64 {
        self.goal_vertex.map_or(f64::INFINITY, |v| self.graph.g(v))
    }

    /// Connection radius `min(eta, gamma (ln n / n)^(1/d))`.
    pub fn neighbor_radius(&self) -> f64 {
        let n = self.graph.len() as f64;
        let r = self.gamma_nn * (n.ln() / n).powf(1.0 / self.env.dim() as f64);
        r.min(self.eta)
    }

    fn elapsed_ms(&self) -> f64 {
        self.started.elapsed().as_secs_f64() * 1e3
    }

    fn record(&mut self) {
        let c = self.best_cost();
        self.records.push(BenchRecord {
            iteration: self.iteration,
            elapsed_ms: self.cfg.timing.then(|| self.elapsed_ms()),
            best_cost: c.is_finite().then_some(c),
            vertices: self.graph.len(),
        });
    }

    fn budget_exhausted(&self) -> bool {
        if self.cfg.stop_on_solution && self.goal_vertex.is_some() {
            return true;
        }
        if self.cfg.iterations.is_some_and(|n| self.iteration >= n) {
            return true;
        }
        self.cfg
            .time_budget_ms
            .is_some_and(|ms| self.started.elapsed().as_secs_f64() * 1e3 >= ms as f64)
    }

    /// Steers from the nearest vertex toward `x_rand` by at most `eta` and
    /// connects the new state to its cheapest collision-free neighbor. All
    /// other collision-free neighbors get an edge too. Returns `None` and
    /// leaves the graph unchanged when the new state is rejected.
    pub fn extend(&mut self, x_rand: &StateVec) -> Result<Option<VertexId>> {
        let nearest = self.graph.nearest(x_rand)?;
        let x_near = self.graph.state(nearest).clone();
        let dist = x_near.dist(x_rand);
        if dist <= crate::graph::DUPLICATE_TOLERANCE {
            return Ok(None);
        }
        let x_new = if dist <= self.eta {
            x_rand.clone()
        } else {
            x_near.lerp(x_rand, self.eta / dist)
        };
        if !self.env.is_state_valid(&x_new) {
            return Ok(None);
        }
        if let Some(ts) = self.transition.as_mut() {
            let c_from = self.env.state_cost(&x_near)?;
            let c_to = self.env.state_cost(&x_new)?;
            if !transition_test(ts, c_from, c_to, &mut self.rng) {
                self.stats.transition_rejects += 1;
                return Ok(None);
            }
        }
        let mut candidates = self.graph.near(&x_new, self.neighbor_radius());
        if let Err(pos) = candidates.binary_search(&nearest) {
            candidates.insert(pos, nearest);
        }
        let mut links = Vec::with_capacity(candidates.len());
        for u in candidates {
            let xu = self.graph.state(u);
            if xu.dist(&x_new) <= crate::graph::DUPLICATE_TOLERANCE {
                return Ok(None);
            }
            if self.env.is_motion_valid(xu, &x_new) {
                let c = self.env.edge_cost(xu, &x_new)?;
                links.push((u, c));
            }
        }
        let best = links
            .iter()
            .copied()
            .filter(|(u, _)| self.graph.g(*u).is_finite())
            .min_by(|a, b| (self.graph.g(a.0) + a.1).total_cmp(&(self.graph.g(b.0) + b.1)));
        let Some((parent, cost)) = best else {
            return Ok(None);
        };
        let in_goal = self.env.in_goal(&x_new);
        let is_goal_point = x_new == *self.env.goal();
        let id = self.graph.insert_vertex(x_new, parent, cost)?;
        for (u, c) in links {
            if u != parent {
                self.graph.add_edge(u, id, c)?;
            }
        }
        self.graph.mark_inconsistent(id);
        if in_goal {
            self.connect_goal(id, is_goal_point)?;
        }
        self.stats.extended += 1;
        Ok(Some(id))
    }

    /// Links a vertex inside the goal ball to the goal point, inserting the
    /// goal point on first contact. The goal ball is convex and free, so the
    /// straight edge is always valid.
    fn connect_goal(&mut self, id: VertexId, is_goal_point: bool) -> Result<()> {
        if is_goal_point && self.goal_vertex.is_none() {
            self.goal_vertex = Some(id);
            return Ok(());
        }
        let goal = self.env.goal().clone();
        let c = self.env.edge_cost(self.graph.state(id), &goal)?;
        match self.goal_vertex {
            Some(gv) => {
                if gv != id
                    && !self
                        .graph
                        .vertex(id)
                        .neighbors
                        .iter()
                        .any(|(w, _)| *w == gv)
                {
                    self.graph.add_edge(id, gv, c)?;
                }
            }
            None => {
                let gv = self.graph.insert_vertex(goal.clone(), id, c)?;
                self.goal_vertex = Some(gv);
                let r = self.neighbor_radius();
                for u in self.graph.near(&goal, r) {
                    if u == gv || u == id {
                        continue;
                    }
                    let xu = self.graph.state(u);
                    if self.env.is_motion_valid(xu, &goal) {
                        let cu = self.env.edge_cost(xu, &goal)?;
                        self.graph.add_edge(u, gv, cu)?;
                    }
                }
                self.graph.mark_inconsistent(gv);
            }
        }
        Ok(())
    }

    /// Goal-biased informed draw; uniform while no solution exists.
    fn informed_or_uniform(&mut self, c_i: f64) -> Result<(SampleSource, StateVec)> {
        if self.rng.uniform() < self.cfg.p_goal {
            return Ok((SampleSource::Goal, self.env.goal().clone()));
        }
        let x = informed_sample(
            &mut self.rng,
            self.env.start(),
            self.env.goal(),
            c_i,
            self.env.bounds(),
        )?;
        let src = if c_i.is_finite() {
            SampleSource::Informed
        } else {
            SampleSource::Uniform
        };
        Ok((src, x))
    }

    /// `u` is drawn every iteration by every sampler so that runs with the
    /// same seed share their random stream until the first branch differs.
    fn draw(&mut self, u: f64, c_i: f64) -> Result<(SampleSource, StateVec)> {
        match self.cfg.sampler {
            SamplerKind::Uniform | SamplerKind::Transition => {
                let x = uniform_goal_biased(&mut self.rng, self.env, self.cfg.p_goal);
                let src = if x == *self.env.goal() {
                    SampleSource::Goal
                } else {
                    SampleSource::Uniform
                };
                Ok((src, x))
            }
            SamplerKind::Informed => self.informed_or_uniform(c_i),
            SamplerKind::Relevant => {
                if u < self.cfg.p_rel && c_i.is_finite() {
                    let queue = self.queue.as_mut().expect("relevant sampler owns a queue");
                    let out = relevant_region_sample(
                        &mut self.graph,
                        queue,
                        self.env,
                        c_i,
                        self.epsilon,
                        self.cfg.n_q,
                        &mut self.rng,
                    )?;
                    if let RelevantOutcome::Sample { x, .. } = out {
                        return Ok((SampleSource::Relevant, x));
                    }
                    self.stats.fallbacks += 1;
                }
                self.informed_or_uniform(c_i)
            }
        }
    }

    /// One loop body: sample, extend, rewire, refresh the incumbent and the
    /// relevant queue, record progress.
    pub fn plan_iteration(&mut self) -> Result<()> {
        let c_i = self.best_cost();
        let u = self.rng.uniform();
        let (src, x_rand) = self.draw(u, c_i)?;
        match src {
            SampleSource::Goal => self.stats.goal += 1,
            SampleSource::Uniform => self.stats.uniform += 1,
            SampleSource::Informed => self.stats.informed += 1,
            SampleSource::Relevant => self.stats.relevant += 1,
        }
        self.extend(&x_rand)?;
        self.last_sample = Some((src, x_rand));
        self.graph.rewire_global();
        let c_new = self.best_cost();
        match self.queue.as_mut() {
            Some(q) => q.update(&mut self.graph, c_new),
            None => {
                self.graph.take_touched();
            }
        }
        if c_new.is_finite() && c_new - self.c_min <= OPTIMALITY_TOLERANCE * self.c_min.max(1.0) {
            self.optimal = true;
        }
        self.iteration += 1;
        let improved = c_new.is_finite() && self.last_cost != Some(c_new);
        if improved {
            self.last_cost = Some(c_new);
        }
        if improved || self.iteration >= self.next_checkpoint {
            while self.next_checkpoint <= self.iteration {
                self.next_checkpoint *= 2;
            }
            self.record();
        }
        Ok(())
    }

    /// Iterates until the budget is spent or the incumbent is provably
    /// optimal.
    pub fn run(mut self) -> Result<PlanResult> {
        while !self.optimal && !self.budget_exhausted() {
            self.plan_iteration()?;
        }
        if self.records.last().map(|r| r.iteration) != Some(self.iteration) {
            self.record();
        }
        let best_path = self
            .goal_vertex
            .map(|gv| {
                self.graph
                    .path_to(gv)
                    .into_iter()
                    .map(|v| self.graph.state(v).clone())
                    .collect()
            })
            .unwrap_or_default();
        let c = self.best_cost();
        Ok(PlanResult {
            best_cost: c.is_finite().then_some(c),
            best_path,
            vertices: self.graph.len(),
            edges: self.graph.edge_count(),
            iterations: self.iteration,
            records: self.records,
            optimal: self.optimal,
            stats: self.stats,
        })
    }
}

/// Runs a planner on `env` until its budget is spent.
pub fn plan(env: &Environment, cfg: PlannerConfig) -> Result<PlanResult> {
    Planner::new(env, cfg)?.run()
}

/// Sum of edge costs along `path`, recomputed from the environment.
pub fn path_cost(env: &Environment, path: &[StateVec]) -> Result<f64> {
    if path.is_empty() {
        return Err(Error::Usage("empty path".into()));
    }
    path.windows(2)
        .try_fold(0.0, |acc, w| Ok(acc + env.edge_cost(&w[0], &w[1])?))
}
