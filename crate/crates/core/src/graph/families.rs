//! Small named graphs used by tests, examples and the CLI.

use super::{SimpleGraph, Vertex};

pub fn path(n: usize) -> SimpleGraph {
    let edges = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    SimpleGraph::from_edges_unchecked(n, edges)
}

pub fn cycle(n: usize) -> SimpleGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut edges: Vec<_> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    edges.push((0, n as Vertex - 1));
    SimpleGraph::from_edges_unchecked(n, edges)
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> SimpleGraph {
    let edges = (1..=leaves as Vertex).map(|v| (0, v)).collect();
    SimpleGraph::from_edges_unchecked(leaves + 1, edges)
}

pub fn complete(n: usize) -> SimpleGraph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for v in 0..n as Vertex {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    SimpleGraph::from_edges_unchecked(n, edges)
}

pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::from_edges(10, edges).expect("petersen graph is simple")
}

/// Vertex-disjoint union, second graph relabelled after the first.
pub fn disjoint_union(a: &SimpleGraph, b: &SimpleGraph) -> SimpleGraph {
    let off = a.n() as Vertex;
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(u, v)| (u + off, v + off)))
        .collect();
    SimpleGraph::from_edges_unchecked(a.n() + b.n(), edges)
}
