use std::collections::HashSet;

use crate::error::{Error, Result};

pub type Vertex = u32;

fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Edge multiset on `n` labelled vertices. Loops are stored as `(v, v)` and
/// contribute 2 to the degree of `v`; repeated pairs are parallel edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u as usize >= self.n || v as usize >= self.n {
            return Err(Error::param(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        self.edges.push(norm(u, v));
        Ok(())
    }

    // Callers guarantee the range check.
    pub(crate) fn push_unchecked(&mut self, u: Vertex, v: Vertex) {
        debug_assert!((u as usize) < self.n && (v as usize) < self.n);
        self.edges.push(norm(u, v));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|&(u, v)| u != v && seen.insert((u, v)))
    }

    /// Adjacency lists with multiplicity. A loop at `v` appears twice in
    /// `v`'s own list so list length equals degree.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let deg = self.degrees();
        let mut adj: Vec<Vec<Vertex>> = deg.iter().map(|&d| Vec::with_capacity(d as usize)).collect();
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    /// Drops loops and collapses parallel edges.
    pub fn collapse(&self) -> SimpleGraph {
        let mut set: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(self.edges.len());
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u != v && set.insert((u, v)) {
                edges.push((u, v));
            }
        }
        SimpleGraph { n: self.n, edges }
    }

    pub fn to_simple(&self) -> Result<SimpleGraph> {
        if self.is_simple() {
            Ok(SimpleGraph {
                n: self.n,
                edges: self.edges.clone(),
            })
        } else {
            Err(Error::param("multigraph has loops or parallel edges"))
        }
    }

    /// Sorted copy of the edge list, for order-insensitive comparison.
    pub fn canonical_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

/// Simple graph: no loops, no repeated edges. Edges stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::param(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::param(format!("loop at {u} in a simple graph")));
            }
            let e = norm(u, v);
            if !seen.insert(e) {
                return Err(Error::param(format!("repeated edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(Self { n, edges: out })
    }

    // Generators guarantee distinct in-range non-loop pairs.
    pub(crate) fn from_edges_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        Self { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let e = norm(u, v);
        self.edges.contains(&e)
    }

    /// Adds the edge if absent, removes it if present.
    pub fn toggle(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v || u as usize >= self.n || v as usize >= self.n {
            return Err(Error::param(format!("cannot toggle ({u}, {v})")));
        }
        let e = norm(u, v);
        match self.edges.iter().position(|&x| x == e) {
            Some(i) => {
                self.edges.swap_remove(i);
            }
            None => self.edges.push(e),
        }
        Ok(())
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        MultiGraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }
}

impl From<SimpleGraph> for MultiGraph {
    fn from(g: SimpleGraph) -> Self {
        MultiGraph {
            n: g.n,
            edges: g.edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_count_twice() {
        let g = MultiGraph::from_edges(2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degrees(), vec![3, 1]);
        assert_eq!(g.degrees().iter().sum::<u32>() as usize, 2 * g.edge_count());
        assert_eq!(g.adjacency()[0], vec![0, 0, 1]);
    }

    #[test]
    fn simplicity() {
        assert!(MultiGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap().is_simple());
        assert!(!MultiGraph::from_edges(3, [(0, 1), (1, 0)]).unwrap().is_simple());
        assert!(!MultiGraph::from_edges(3, [(2, 2)]).unwrap().is_simple());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(MultiGraph::from_edges(2, [(0, 2)]).is_err());
        assert!(SimpleGraph::from_edges(2, [(0, 0)]).is_err());
        assert!(SimpleGraph::from_edges(3, [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn collapse_drops_loops_and_multiplicity() {
        let g = MultiGraph::from_edges(3, [(0, 1), (1, 0), (2, 2), (1, 2)]).unwrap();
        let s = g.collapse();
        assert_eq!(s.edge_count(), 2);
    }

    #[test]
    fn toggle_round_trip() {
        let mut g = SimpleGraph::from_edges(3, [(0, 1)]).unwrap();
        g.toggle(1, 2).unwrap();
        assert!(g.has_edge(2, 1));
        g.toggle(2, 1).unwrap();
        assert!(!g.has_edge(1, 2));
        assert!(g.toggle(1, 1).is_err());
    }
}
