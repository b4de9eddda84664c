//! The planner graph: vertices with cost-to-come, the embedded spanning tree,
//! a nearest-neighbor index, global rewiring and the relevant-vertex queue.

mod kdtree;
mod queue;

pub use kdtree::{KdTree, BRUTE_FORCE_BELOW};
pub use queue::{RelevantQueue, Weights};

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::vector::StateVec;

pub type VertexId = usize;

/// States closer than this to an existing vertex are rejected as duplicates.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub state: StateVec,
    /// Parent in the spanning tree; the root is its own parent.
    pub parent: VertexId,
    /// Cost-to-come along the tree.
    pub g: f64,
    /// Number of times the vertex was chosen for expansion.
    pub selections: u32,
    /// Incident edges with cached costs.
    pub neighbors: Vec<(VertexId, f64)>,
}

impl Vertex {
    /// Number of incident edges.
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Pending {
    g: f64,
    id: VertexId,
}

impl Eq for Pending {}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap, we want the smallest g first
        other
            .g
            .total_cmp(&self.g)
            .then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<Vertex>,
    index: KdTree,
    edges: usize,
    inconsistent: BinaryHeap<Pending>,
    touched: Vec<VertexId>,
    touched_flag: Vec<bool>,
}

impl Graph {
    /// A graph holding only the root `x_s`.
    pub fn new(root: StateVec) -> Self {
        let mut index = KdTree::new(root.dim());
        index.insert(root.as_slice());
        Self {
            vertices: vec![Vertex {
                state: root,
                parent: 0,
                g: 0.0,
                selections: 0,
                neighbors: Vec::new(),
            }],
            index,
            edges: 0,
            inconsistent: BinaryHeap::new(),
            touched: vec![0],
            touched_flag: vec![true],
        }
    }

    pub const ROOT: VertexId = 0;

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].state.dim()
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    #[inline]
    pub fn state(&self, id: VertexId) -> &StateVec {
        &self.vertices[id].state
    }

    #[inline]
    pub fn g(&self, id: VertexId) -> f64 {
        self.vertices[id].g
    }

    pub fn parent(&self, id: VertexId) -> VertexId {
        self.vertices[id].parent
    }

    fn check(&self, id: VertexId) -> Result<()> {
        if id < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::NoSuchVertex(id))
        }
    }

    fn touch(&mut self, id: VertexId) {
        if !self.touched_flag[id] {
            self.touched_flag[id] = true;
            self.touched.push(id);
        }
    }

    /// Drains the vertices whose cost, degree or selection count changed since
    /// the last call.
    pub fn take_touched(&mut self) -> Vec<VertexId> {
        for &v in &self.touched {
            self.touched_flag[v] = false;
        }
        std::mem::take(&mut self.touched)
    }

    fn push_vertex(&mut self, x: StateVec, parent: VertexId, g: f64) -> Result<VertexId> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        if let Some((near, d2)) = self.index.nearest(x.as_slice()) {
            if d2.sqrt() <= DUPLICATE_TOLERANCE {
                return Err(Error::Duplicate(near));
            }
        }
        let id = self.vertices.len();
        self.index.insert(x.as_slice());
        self.vertices.push(Vertex {
            state: x,
            parent: if g.is_finite() { parent } else { id },
            g,
            selections: 0,
            neighbors: Vec::new(),
        });
        self.touched_flag.push(false);
        self.touch(id);
        Ok(id)
    }

    /// Inserts `x` as a child of `parent` over an edge of the given cost.
    pub fn insert_vertex(
        &mut self,
        x: StateVec,
        parent: VertexId,
        edge_cost: f64,
    ) -> Result<VertexId> {
        self.check(parent)?;
        if !(edge_cost > 0.0 && edge_cost.is_finite()) {
            return Err(Error::Usage(format!(
                "edge cost {edge_cost} must be positive"
            )));
        }
        let g = self.vertices[parent].g + edge_cost;
        let id = self.push_vertex(x, parent, g)?;
        self.link(parent, id, edge_cost);
        Ok(id)
    }

    /// Inserts a vertex with no edges; its cost-to-come is infinite until an
    /// edge connects it.
    pub fn insert_isolated(&mut self, x: StateVec) -> Result<VertexId> {
        self.push_vertex(x, 0, f64::INFINITY)
    }

    fn link(&mut self, u: VertexId, v: VertexId, cost: f64) {
        self.vertices[u].neighbors.push((v, cost));
        self.vertices[v].neighbors.push((u, cost));
        self.edges += 1;
        self.touch(u);
        self.touch(v);
    }

    /// Adds an undirected edge and schedules both endpoints for rewiring.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, cost: f64) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Usage("self-loops are not allowed".into()));
        }
        if !(cost > 0.0 && cost.is_finite()) {
            return Err(Error::Usage(format!("edge cost {cost} must be positive")));
        }
        self.link(u, v, cost);
        for w in [u, v] {
            let g = self.vertices[w].g;
            if g.is_finite() {
                self.inconsistent.push(Pending { g, id: w });
            }
        }
        Ok(())
    }

    /// Closest vertex to `x`; ties go to the lowest id.
    pub fn nearest(&self, x: &StateVec) -> Result<VertexId> {
        self.index
            .nearest(x.as_slice())
            .map(|(id, _)| id)
            .ok_or(Error::EmptyGraph)
    }

    /// All vertices within distance `r` of `x`, ascending by id.
    pub fn near(&self, x: &StateVec, r: f64) -> Vec<VertexId> {
        self.index.within(x.as_slice(), r)
    }

    /// Propagates cost-to-come decreases from every scheduled vertex until all
    /// vertices hold shortest-path costs over the current edges.
    pub fn rewire_global(&mut self) {
        while let Some(Pending { g, id }) = self.inconsistent.pop() {
            if g > self.vertices[id].g {
                continue; // superseded by a later, cheaper entry
            }
            for k in 0..self.vertices[id].neighbors.len() {
                let (w, c) = self.vertices[id].neighbors[k];
                let candidate = g + c;
                if candidate < self.vertices[w].g {
                    self.vertices[w].g = candidate;
                    self.vertices[w].parent = id;
                    self.touch(w);
                    self.inconsistent.push(Pending {
                        g: candidate,
                        id: w,
                    });
                }
            }
        }
    }

    /// Schedules a vertex so the next [`Self::rewire_global`] propagates from
    /// it.
    pub fn mark_inconsistent(&mut self, id: VertexId) {
        let g = self.vertices[id].g;
        if g.is_finite() {
            self.inconsistent.push(Pending { g, id });
        }
    }

    pub fn increment_selection(&mut self, id: VertexId) {
        self.vertices[id].selections += 1;
        self.touch(id);
    }

    /// `g(v) + h(v, goal) < c_i`.
    pub fn is_relevant(&self, v: VertexId, goal: &StateVec, c_i: f64) -> bool {
        let vx = &self.vertices[v];
        vx.g + vx.state.dist(goal) < c_i
    }

    /// Tree path from the root to `v`, root first.
    pub fn path_to(&self, v: VertexId) -> Vec<VertexId> {
        let mut path = vec![v];
        let mut cur = v;
        while self.vertices[cur].parent != cur {
            cur = self.vertices[cur].parent;
            path.push(cur);
            assert!(
                path.len() <= self.vertices.len(),
                "cycle in parent pointers"
            );
        }
        path.reverse();
        path
    }

    /// Writes one line per vertex: `id parent g x[0] .. x[d-1]`.
    pub fn dump(&self, mut out: impl Write) -> io::Result<()> {
        for (id, v) in self.vertices.iter().enumerate() {
            write!(out, "{id} {} {}", v.parent, v.g)?;
            for c in v.state.as_slice() {
                write!(out, " {c}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}
