//! Binary heap over relevant vertices keyed by the expansion weight
//! `q_v = l1 * p_v + l2 * d_v + l3 * (g(v) + h(v, x_g)) / c_i`.
//!
//! Entries are invalidated lazily: each push stamps the vertex, and a popped
//! entry whose stamp is not the vertex's latest, or whose vertex is no longer
//! relevant, is discarded.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::rng::RngStream;
use crate::vector::StateVec;

use super::{Graph, VertexId};

/// The three weight coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    /// Penalty per past selection.
    pub selection: f64,
    /// Penalty per incident edge.
    pub degree: f64,
    /// Weight of the normalized solution-cost estimate.
    pub cost: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Self {
            selection: 10.0,
            degree: 5.0,
            cost: 100.0,
        }
    }
}

impl Weights {
    pub fn weight(&self, selections: u32, degree: usize, g: f64, h: f64, c_i: f64) -> f64 {
        self.selection * selections as f64 + self.degree * degree as f64 + self.cost * (g + h) / c_i
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Entry {
    key: f64,
    id: VertexId,
    stamp: u64,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (key, id)
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct RelevantQueue {
    weights: Weights,
    goal: StateVec,
    heap: BinaryHeap<Entry>,
    stamps: Vec<u64>,
    next_stamp: u64,
    c_i: f64,
}

impl RelevantQueue {
    pub fn new(weights: Weights, goal: StateVec) -> Self {
        Self {
            weights,
            goal,
            heap: BinaryHeap::new(),
            stamps: Vec::new(),
            next_stamp: 1,
            c_i: f64::INFINITY,
        }
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// Cost bound the keys were last computed against.
    pub fn cost_bound(&self) -> f64 {
        self.c_i
    }

    /// Heap size including stale entries.
    pub fn raw_len(&self) -> usize {
        self.heap.len()
    }

    pub fn key(&self, graph: &Graph, v: VertexId) -> f64 {
        let vx = graph.vertex(v);
        self.weights.weight(
            vx.selections,
            vx.degree(),
            vx.g,
            vx.state.dist(&self.goal),
            self.c_i,
        )
    }

    fn push(&mut self, graph: &Graph, v: VertexId) {
        if self.stamps.len() <= v {
            self.stamps.resize(v + 1, 0);
        }
        let stamp = self.next_stamp;
        self.next_stamp += 1;
        self.stamps[v] = stamp;
        let key = self.key(graph, v);
        self.heap.push(Entry { key, id: v, stamp });
    }

    /// Recomputes keys. A new cost bound rebuilds the heap from every relevant
    /// vertex; otherwise only vertices touched since the last update are
    /// re-pushed.
    pub fn update(&mut self, graph: &mut Graph, c_i: f64) {
        let touched = graph.take_touched();
        if !c_i.is_finite() {
            self.c_i = c_i;
            self.heap.clear();
            return;
        }
        if c_i != self.c_i {
            self.c_i = c_i;
            self.heap.clear();
            self.stamps.clear();
            for v in 0..graph.len() {
                if graph.is_relevant(v, &self.goal, c_i) {
                    self.push(graph, v);
                }
            }
            return;
        }
        for v in touched {
            if graph.is_relevant(v, &self.goal, c_i) {
                self.push(graph, v);
            }
        }
    }

    fn is_current(&self, graph: &Graph, e: &Entry) -> bool {
        self.stamps.get(e.id) == Some(&e.stamp) && graph.is_relevant(e.id, &self.goal, self.c_i)
    }

    /// Pops the smallest valid entry, discarding stale ones.
    pub fn pop_valid(&mut self, graph: &Graph) -> Option<(f64, VertexId)> {
        while let Some(e) = self.heap.pop() {
            if self.is_current(graph, &e) {
                self.stamps[e.id] = 0;
                return Some((e.key, e.id));
            }
        }
        None
    }

    /// Picks uniformly among the `n_q` smallest valid entries and counts the
    /// selection on the chosen vertex. `None` when no relevant vertex is
    /// queued.
    pub fn choose(
        &mut self,
        graph: &mut Graph,
        n_q: usize,
        rng: &mut RngStream,
    ) -> Option<VertexId> {
        let n_q = n_q.max(1);
        let mut top = Vec::with_capacity(n_q);
        while top.len() < n_q {
            match self.pop_valid(graph) {
                Some((_, v)) => top.push(v),
                None => break,
            }
        }
        if top.is_empty() {
            return None;
        }
        let chosen = top[rng.index(top.len())];
        graph.increment_selection(chosen);
        for &v in &top {
            self.push(graph, v);
        }
        Some(chosen)
    }
}
