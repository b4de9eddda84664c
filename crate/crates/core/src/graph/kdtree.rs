//! Incremental kd-tree over vertex states.
//!
//! Points are only ever added. Below [`BRUTE_FORCE_BELOW`] points queries scan
//! linearly; the tree is still maintained so it is ready once the threshold is
//! crossed.

use crate::vector::dist_sq;

pub const BRUTE_FORCE_BELOW: usize = 64;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    left: u32,
    right: u32,
    axis: u16,
}

#[derive(Clone, Debug)]
pub struct KdTree {
    dim: usize,
    coords: Vec<f64>,
    nodes: Vec<Node>,
}

impl KdTree {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            coords: Vec::new(),
            nodes: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    #[inline]
    fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Adds a point; its index is the insertion order.
    pub fn insert(&mut self, p: &[f64]) -> usize {
        debug_assert_eq!(p.len(), self.dim);
        let idx = self.nodes.len();
        self.coords.extend_from_slice(p);
        if idx == 0 {
            self.nodes.push(Node {
                left: NONE,
                right: NONE,
                axis: 0,
            });
            return idx;
        }
        let mut cur = 0usize;
        loop {
            let axis = self.nodes[cur].axis as usize;
            let go_left = p[axis] < self.point(cur)[axis];
            let next = if go_left {
                self.nodes[cur].left
            } else {
                self.nodes[cur].right
            };
            if next == NONE {
                let child_axis = ((axis + 1) % self.dim) as u16;
                self.nodes.push(Node {
                    left: NONE,
                    right: NONE,
                    axis: child_axis,
                });
                if go_left {
                    self.nodes[cur].left = idx as u32;
                } else {
                    self.nodes[cur].right = idx as u32;
                }
                return idx;
            }
            cur = next as usize;
        }
    }

    /// Index and squared distance of the closest point; ties go to the lowest
    /// index.
    pub fn nearest(&self, q: &[f64]) -> Option<(usize, f64)> {
        if self.is_empty() {
            return None;
        }
        if self.len() < BRUTE_FORCE_BELOW {
            return self.nearest_linear(q);
        }
        let mut best = (usize::MAX, f64::INFINITY);
        self.nearest_rec(0, q, &mut best);
        Some(best)
    }

    fn nearest_rec(&self, node: usize, q: &[f64], best: &mut (usize, f64)) {
        let p = self.point(node);
        let d2 = dist_sq(p, q);
        if d2 < best.1 || (d2 == best.1 && node < best.0) {
            *best = (node, d2);
        }
        let n = &self.nodes[node];
        let axis = n.axis as usize;
        let diff = q[axis] - p[axis];
        let (near, far) = if diff < 0.0 {
            (n.left, n.right)
        } else {
            (n.right, n.left)
        };
        if near != NONE {
            self.nearest_rec(near as usize, q, best);
        }
        // `<=` keeps equidistant candidates reachable for the tie rule
        if far != NONE && diff * diff <= best.1 {
            self.nearest_rec(far as usize, q, best);
        }
    }

    pub fn nearest_linear(&self, q: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.len() {
            let d2 = dist_sq(self.point(i), q);
            if best.is_none_or(|(_, b)| d2 < b) {
                best = Some((i, d2));
            }
        }
        best
    }

    /// Indices of all points within distance `r` (inclusive), ascending.
    pub fn within(&self, q: &[f64], r: f64) -> Vec<usize> {
        let r2 = r * r;
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        if self.len() < BRUTE_FORCE_BELOW {
            out.extend((0..self.len()).filter(|&i| dist_sq(self.point(i), q) <= r2));
            return out;
        }
        let mut stack = vec![0usize];
        while let Some(node) = stack.pop() {
            let p = self.point(node);
            if dist_sq(p, q) <= r2 {
                out.push(node);
            }
            let n = &self.nodes[node];
            let axis = n.axis as usize;
            let diff = q[axis] - p[axis];
            // left subtree holds coords < p[axis], right holds >= p[axis]
            if n.left != NONE && diff - r < 0.0 {
                stack.push(n.left as usize);
            }
            if n.right != NONE && diff + r >= 0.0 {
                stack.push(n.right as usize);
            }
        }
        out.sort_unstable();
        out
    }
}
