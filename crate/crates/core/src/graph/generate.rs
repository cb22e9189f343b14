use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::{MultiGraph, SimpleGraph, Vertex};
use crate::error::{Error, Result};

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Maps `k ∈ [0, C(n,2))` onto the `k`-th pair `(u, v)`, `u < v`, in the
/// order (0,1), (0,2), (1,2), (0,3), ...
fn unrank_pair(k: u64) -> (Vertex, Vertex) {
    let mut v = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).floor() as u64;
    while v * (v - 1) / 2 > k {
        v -= 1;
    }
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    let u = k - v * (v - 1) / 2;
    (u as Vertex, v as Vertex)
}

/// Binomial random graph: every pair independently with probability `c/n`.
/// Uses geometric skipping over the pair order, so the cost is `O(n + m)`.
pub fn gen_gnp<R: Rng + ?Sized>(n: usize, c: f64, rng: &mut R) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::param("gnp needs n >= 1"));
    }
    if !(c > 0.0) || c > n as f64 {
        return Err(Error::param(format!("gnp needs 0 < c <= n, got c = {c}")));
    }
    let p = c / n as f64;
    if p >= 1.0 {
        return Ok(super::families::complete(n));
    }
    let log_q = (-p).ln_1p();
    let mut edges = Vec::with_capacity((p * pair_count(n) as f64 * 1.1) as usize + 16);
    let mut v: u64 = 1;
    let mut w: i64 = -1;
    let n64 = n as u64;
    while v < n64 {
        let r: f64 = rng.random();
        let skip = ((-r).ln_1p() / log_q).floor();
        w += 1 + skip as i64;
        while w >= v as i64 && v < n64 {
            w -= v as i64;
            v += 1;
        }
        if v < n64 {
            edges.push((w as Vertex, v as Vertex));
        }
    }
    Ok(SimpleGraph::from_edges_unchecked(n, edges))
}

/// Uniform simple graph with exactly `m` edges.
pub fn gen_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<SimpleGraph> {
    let total = pair_count(n);
    if m as u64 > total {
        return Err(Error::param(format!(
            "gnm: m = {m} exceeds C({n},2) = {total}"
        )));
    }
    let chosen = index::sample(rng, total as usize, m);
    let edges = chosen.into_iter().map(|k| unrank_pair(k as u64)).collect();
    Ok(SimpleGraph::from_edges_unchecked(n, edges))
}

/// `m` independent uniform ordered vertex pairs, each contracted to an edge
/// (a pair `(v, v)` is a loop).
pub fn gen_multigraph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<MultiGraph> {
    if n == 0 && m > 0 {
        return Err(Error::param("multigraph with edges needs n >= 1"));
    }
    let mut g = MultiGraph::empty(n);
    for _ in 0..m {
        let u = rng.random_range(0..n) as Vertex;
        let v = rng.random_range(0..n) as Vertex;
        g.push_unchecked(u, v);
    }
    Ok(g)
}

/// Multigraph with `M ~ Bin(C(n,2), c/n)` edges.
pub fn gen_multigraph_binomial<R: Rng + ?Sized>(
    n: usize,
    c: f64,
    rng: &mut R,
) -> Result<MultiGraph> {
    if n == 0 || !(c > 0.0) || c > n as f64 {
        return Err(Error::param(format!(
            "binomial multigraph needs n >= 1 and 0 < c <= n (n = {n}, c = {c})"
        )));
    }
    let dist = Binomial::new(pair_count(n), c / n as f64)
        .map_err(|e| Error::param(e.to_string()))?;
    let m = dist.sample(rng) as usize;
    gen_multigraph(n, m, rng)
}
