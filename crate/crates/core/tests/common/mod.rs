//! Reference computations for the integration tests. Nothing here calls
//! the code path it is used to check.
#![allow(dead_code)]

use std::collections::HashMap;

use kslab::fluid::{diffusion_matrix, drift_f, Mat4, Vec4};
use kslab::graph::{SimpleGraph, Vertex};
use rand::Rng;

/// Independent edges with probability `p` among `n` vertices.
pub fn coin_flip_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, edges).unwrap()
}

/// Maximum matching by dynamic programming over vertex subsets; n <= 20.
pub fn subset_matching(g: &SimpleGraph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let mut nbr = vec![0u32; n];
    for &(u, v) in g.edges() {
        nbr[u as usize] |= 1 << v;
        nbr[v as usize] |= 1 << u;
    }
    // best[mask] = matching number of the subgraph induced on mask
    let mut best = vec![0u8; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best[rest];
        let mut cand = nbr[v] as usize & rest;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            b = b.max(1 + best[rest & !(1 << u)]);
        }
        best[mask] = b;
    }
    best[(1 << n) - 1] as usize
}

/// The matching-fraction objective, typed in separately from the library.
fn alpha_h(c: f64, x: f64) -> f64 {
    let e = (-c * (1.0 - x)).exp();
    2.0 - (-c * e).exp() - (1.0 + c - c * x) * e
}

/// Minimum of the matching-fraction objective over a uniform grid of
/// `10^6 + 1` points on [0, 1].
pub fn grid_alpha(c: f64) -> f64 {
    const N: usize = 1_000_000;
    (0..=N)
        .map(|i| alpha_h(c, i as f64 / N as f64))
        .fold(f64::INFINITY, f64::min)
}

/// Principal branch of Lambert W for `x >= 0` by plain Newton iteration.
pub fn newton_w(x: f64) -> f64 {
    let mut w = if x < 1.0 { x } else { x.ln().max(0.5) };
    for _ in 0..200 {
        let ew = w.exp();
        let step = (w * ew - x) / (ew * (w + 1.0));
        w -= step;
        if step.abs() <= 1e-16 * w.abs().max(1e-300) {
            break;
        }
    }
    w
}

fn poisson(c: f64, d: usize) -> f64 {
    let mut p = (-c).exp();
    for k in 1..=d {
        p *= c / k as f64;
    }
    p
}

/// Limiting covariance of (leaves, heavy vertices, edges) per vertex for
/// the binomial-edge graph, from the covariance of the degree counts
/// `pi(d) pi(d') ((d - c)(d' - c)/c - 1) + [d = d'] pi(d)`. With
/// `fixed_edges` the edge coordinate is conditioned away.
pub fn degree_count_covariance(c: f64, fixed_edges: bool) -> [[f64; 3]; 3] {
    const D: usize = 80;
    let pi: Vec<f64> = (0..D).map(|d| poisson(c, d)).collect();
    let feature = |d: usize| [(d == 1) as u8 as f64, (d >= 2) as u8 as f64, d as f64 / 2.0];
    let mut s = [[0.0; 3]; 3];
    for a in 0..D {
        for b in 0..D {
            let mut cov = pi[a] * pi[b] * ((a as f64 - c) * (b as f64 - c) / c - 1.0);
            if a == b {
                cov += pi[a];
            }
            let (fa, fb) = (feature(a), feature(b));
            for i in 0..3 {
                for j in 0..3 {
                    s[i][j] += fa[i] * fb[j] * cov;
                }
            }
        }
    }
    if fixed_edges {
        let v = s[2][2];
        let col = [s[0][2], s[1][2], s[2][2]];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] -= col[i] * col[j] / v;
            }
        }
    }
    s
}

/// Law of the configuration model on `degrees`: every perfect matching of
/// the stubs is enumerated, contracted, and the resulting sorted edge
/// lists are counted.
pub fn configuration_law(degrees: &[u32]) -> HashMap<Vec<(Vertex, Vertex)>, f64> {
    let stubs: Vec<Vertex> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(v as Vertex, k as usize))
        .collect();
    assert!(stubs.len() % 2 == 0 && stubs.len() <= 12);
    let mut counts: HashMap<Vec<(Vertex, Vertex)>, u64> = HashMap::new();
    let mut used = vec![false; stubs.len()];
    let mut edges = Vec::new();
    fn rec(
        stubs: &[Vertex],
        used: &mut [bool],
        edges: &mut Vec<(Vertex, Vertex)>,
        counts: &mut HashMap<Vec<(Vertex, Vertex)>, u64>,
    ) {
        let Some(i) = used.iter().position(|&u| !u) else {
            let mut key = edges.clone();
            key.sort_unstable();
            *counts.entry(key).or_default() += 1;
            return;
        };
        used[i] = true;
        for j in i + 1..stubs.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            let (a, b) = (stubs[i], stubs[j]);
            edges.push((a.min(b), a.max(b)));
            rec(stubs, used, edges, counts);
            edges.pop();
            used[j] = false;
        }
        used[i] = false;
    }
    rec(&stubs, &mut used, &mut edges, &mut counts);
    let total: u64 = counts.values().sum();
    counts
        .into_iter()
        .map(|(k, v)| (k, v as f64 / total as f64))
        .collect()
}

/// Classical fourth-order Runge-Kutta on `dY/ds = J(x(s)) Y` along a
/// supplied trajectory `x(s)`, used to cross-check the linearised flow.
pub fn rk4_flow(traj: impl Fn(f64) -> Vec4, jac: impl Fn(&Vec4) -> Mat4, s0: f64, s1: f64, steps: usize) -> Mat4 {
    let h = (s1 - s0) / steps as f64;
    let mut y = Mat4::identity();
    let f = |s: f64, y: &Mat4| jac(&traj(s)) * y;
    for k in 0..steps {
        let s = s0 + k as f64 * h;
        let k1 = f(s, &y);
        let k2 = f(s + h / 2.0, &(y + k1 * (h / 2.0)));
        let k3 = f(s + h / 2.0, &(y + k2 * (h / 2.0)));
        let k4 = f(s + h, &(y + k3 * h));
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    y
}

/// Composite Simpson rule on `[a, b]` with `intervals` (even) pieces.
pub fn simpson<T>(f: impl Fn(f64) -> T, a: f64, b: f64, intervals: usize) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Copy,
{
    assert!(intervals % 2 == 0);
    let h = (b - a) / intervals as f64;
    let mut acc = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc + f(a + i as f64 * h) * w;
    }
    acc * (h / 3.0)
}

/// Central finite-difference Jacobian of the drift.
pub fn fd_jacobian(x: &Vec4) -> Mat4 {
    let mut j = Mat4::zeros();
    for k in 0..4 {
        let h = 1e-6 * x[k].abs().max(1e-3);
        let mut xp = *x;
        let mut xm = *x;
        xp[k] += h;
        xm[k] -= h;
        let col = (drift_f(&xp).unwrap() - drift_f(&xm).unwrap()) / (2.0 * h);
        j.set_column(k, &col);
    }
    j
}

/// The diffusion matrix at a point, for quadrature integrands.
pub fn diffusion_at(x: &Vec4) -> Mat4 {
    diffusion_matrix(x, kslab::fluid::DEFAULT_KCAP).unwrap()
}

/// Prints and returns the criterion verdict in a fixed format.
pub fn verdict(id: u32, name: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {id:>2} {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}
