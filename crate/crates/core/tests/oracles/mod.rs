//! Independent reference implementations and random fixtures used by the
//! property tests and the acceptance suite. The oracles share no code paths
//! with the library routines they check.

#![allow(dead_code)]

use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};
use relreg::graph::Graph;
use relreg::rng::{sample_unit_direction, RngStream};
use relreg::StateVec;

/// Shortest-path cost from the root to every vertex, by Dijkstra over the
/// graph's edge list.
pub fn dijkstra_costs(graph: &Graph) -> Vec<f64> {
    let mut pg = UnGraph::<(), f64>::new_undirected();
    let nodes: Vec<NodeIndex> = (0..graph.len()).map(|_| pg.add_node(())).collect();
    for (u, v) in graph.vertices().iter().enumerate() {
        for &(w, c) in &v.neighbors {
            if u < w {
                pg.add_edge(nodes[u], nodes[w], c);
            }
        }
    }
    let dist = dijkstra(&pg, nodes[0], None, |e| *e.weight());
    nodes
        .iter()
        .map(|n| dist.get(n).copied().unwrap_or(f64::INFINITY))
        .collect()
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    rec(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 50)
}

/// Length of the part of segment `p -> q` inside the open box `[lo, hi]`, by
/// slab clipping. Zero when the segment misses the interior.
pub fn segment_open_box_chord(p: &[f64], q: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for k in 0..p.len() {
        let d = q[k] - p[k];
        if d == 0.0 {
            if !(lo[k] < p[k] && p[k] < hi[k]) {
                return 0.0;
            }
            continue;
        }
        let (mut a, mut b) = ((lo[k] - p[k]) / d, (hi[k] - p[k]) / d);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        t0 = t0.max(a);
        t1 = t1.min(b);
        if t0 >= t1 {
            return 0.0;
        }
    }
    let len = p
        .iter()
        .zip(q)
        .map(|(a, b)| (b - a) * (b - a))
        .sum::<f64>()
        .sqrt();
    (t1 - t0) * len
}

/// Exact test whether the closed segment `p -> q` meets the open interior of
/// the box `[lo, hi]`.
pub fn segment_hits_open_box(p: &[f64], q: &[f64], lo: &[f64], hi: &[f64]) -> bool {
    segment_open_box_chord(p, q, lo, hi) > 0.0
        || (p == q && lo.iter().zip(hi).zip(p).all(|((l, h), c)| l < c && c < h))
}

/// A relevant parent configuration in vector form.
#[derive(Clone, Debug)]
pub struct RelevantConfig {
    pub v_p: Vec<f64>,
    pub x_g: Vec<f64>,
    pub dir: Vec<f64>,
    pub g_t: f64,
    pub c_i: f64,
    pub c_vp: f64,
    pub epsilon: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

impl RelevantConfig {
    pub fn h(&self) -> f64 {
        let d: Vec<f64> = self.v_p.iter().zip(&self.x_g).map(|(a, b)| a - b).collect();
        norm(&d)
    }

    pub fn cos_theta(&self) -> f64 {
        let h = self.h();
        if h == 0.0 {
            return 0.0;
        }
        let dot: f64 = self
            .v_p
            .iter()
            .zip(&self.x_g)
            .zip(&self.dir)
            .map(|((a, b), e)| (a - b) * e)
            .sum();
        (dot / h).clamp(-1.0, 1.0)
    }

    pub fn inputs(&self) -> relreg::sampling::StepLimitInputs {
        relreg::sampling::StepLimitInputs {
            g_gp: self.c_i - self.g_t,
            h_vg: self.h(),
            cos_theta: self.cos_theta(),
            c_vp: self.c_vp,
            epsilon: self.epsilon,
        }
    }

    /// `gamma C + g_T + |v_p + gamma e - x_g| - c_i`, evaluated on vectors.
    pub fn defect(&self, gamma: f64) -> f64 {
        let d: Vec<f64> = (0..self.v_p.len())
            .map(|k| self.v_p[k] + gamma * self.dir[k] - self.x_g[k])
            .collect();
        gamma * self.c_vp + self.g_t + norm(&d) - self.c_i
    }

    /// Root of [`Self::defect`] on `(0, (c_i - g_T) / C]` by bisection,
    /// clamped to epsilon.
    pub fn bisect(&self) -> f64 {
        let mut lo = 0.0;
        let mut hi = (self.c_i - self.g_t) / self.c_vp;
        assert!(self.defect(lo) < 0.0);
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.defect(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (0.5 * (lo + hi)).min(self.epsilon)
    }
}

fn unit(rng: &mut RngStream, d: usize) -> Vec<f64> {
    sample_unit_direction(rng, d).into_vec()
}

/// Random relevant configuration. `general` draws `C` in `[1, 10]`, otherwise
/// `C = 1`.
pub fn random_relevant(rng: &mut RngStream, general: bool) -> RelevantConfig {
    let d = 2 + rng.index(6);
    let v_p: Vec<f64> = (0..d).map(|_| rng.uniform_range(-5.0, 5.0)).collect();
    let x_g: Vec<f64> = (0..d).map(|_| rng.uniform_range(-5.0, 5.0)).collect();
    let dir = unit(rng, d);
    let g_t = rng.uniform_range(0.0, 15.0);
    let h = norm(&v_p.iter().zip(&x_g).map(|(a, b)| a - b).collect::<Vec<_>>());
    let margin = (g_t + h + 1.0) * rng.uniform_open_closed();
    let c_vp = if general {
        1.0 + 9.0 * rng.uniform()
    } else {
        1.0
    };
    RelevantConfig {
        v_p,
        x_g,
        dir,
        g_t,
        c_i: g_t + h + margin,
        c_vp,
        epsilon: rng.uniform_range(0.1, 20.0),
    }
}

/// Configuration hitting the zero-discriminant branch exactly: the direction
/// points straight at the goal and `c_i - g_T = C h`.
pub fn zero_discriminant(rng: &mut RngStream) -> RelevantConfig {
    let d = 2 + rng.index(6);
    let c_vp = [1.5, 2.0, 3.0, 4.0][rng.index(4)];
    let h = (1 + rng.index(64)) as f64 / 8.0;
    let mut v_p = vec![0.0; d];
    v_p[0] = h;
    let mut dir = vec![0.0; d];
    dir[0] = -1.0;
    RelevantConfig {
        v_p,
        x_g: vec![0.0; d],
        dir,
        g_t: 0.0,
        c_i: c_vp * h,
        c_vp,
        epsilon: 100.0,
    }
}

pub fn sv(v: &[f64]) -> StateVec {
    StateVec::new(v.to_vec()).unwrap()
}

fn random_state_in_box(rng: &mut RngStream, d: usize) -> StateVec {
    StateVec::new((0..d).map(|_| rng.uniform_range(0.0, 10.0)).collect()).unwrap()
}

/// Random geometric graph: each new vertex hangs off its nearest neighbor and
/// links to everything within `r`; edge costs are length times a random
/// factor so the tree and shortest paths disagree often.
pub fn grow(rng: &mut RngStream, g: &mut Graph, d: usize, r: f64) -> usize {
    loop {
        let x = random_state_in_box(rng, d);
        let near = g.near(&x, r);
        let nearest = g.nearest(&x).unwrap();
        let cost = |y: &StateVec, rng: &mut RngStream| y.dist(&x) * rng.uniform_range(1.0, 3.0);
        let c0 = cost(g.state(nearest), rng);
        let Ok(id) = g.insert_vertex(x.clone(), nearest, c0) else {
            continue;
        };
        for u in near {
            if u != nearest {
                let c = cost(g.state(u), rng);
                g.add_edge(u, id, c).unwrap();
            }
        }
        g.mark_inconsistent(id);
        return id;
    }
}
