use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Vertex};

const NOT_A_LEAF: u32 = u32::MAX;

/// The four tracked statistics: leaves, vertices of degree at least two,
/// edges, and steps taken. Isolated vertices are never counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KsStats {
    pub leaves: u64,
    pub heavy: u64,
    pub edges: u64,
    pub steps: u64,
}

impl KsStats {
    pub fn as_array(&self) -> [u64; 4] {
        [self.leaves, self.heavy, self.edges, self.steps]
    }

    /// Statistics divided by `n`.
    pub fn scaled(&self, n: usize) -> [f64; 4] {
        let n = n as f64;
        self.as_array().map(|x| x as f64 / n)
    }
}

/// Live graph under leaf removal.
///
/// Adjacency lists are never pruned; an entry is live iff both endpoints
/// are alive. The leaf pool holds exactly the degree-one vertices and
/// supports O(1) insertion, removal and uniform sampling.
#[derive(Clone, Debug)]
pub struct KsState {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    deg: Vec<u32>,
    alive: Vec<bool>,
    leaves: Vec<Vertex>,
    leaf_pos: Vec<u32>,
    stats: KsStats,
}

impl KsState {
    pub fn new(g: &MultiGraph) -> Self {
        let n = g.n();
        let adj = g.adjacency();
        let deg: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
        let mut st = Self {
            n,
            adj,
            alive: deg.iter().map(|&d| d > 0).collect(),
            deg,
            leaves: Vec::new(),
            leaf_pos: vec![NOT_A_LEAF; n],
            stats: KsStats {
                edges: g.edge_count() as u64,
                ..KsStats::default()
            },
        };
        for v in 0..n {
            match st.deg[v] {
                0 => {}
                1 => {
                    st.stats.leaves += 1;
                    st.push_leaf(v as Vertex);
                }
                _ => st.stats.heavy += 1,
            }
        }
        st
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stats(&self) -> KsStats {
        self.stats
    }

    pub fn has_leaves(&self) -> bool {
        !self.leaves.is_empty()
    }

    pub fn degree(&self, v: Vertex) -> u32 {
        self.deg[v as usize]
    }

    fn push_leaf(&mut self, v: Vertex) {
        self.leaf_pos[v as usize] = self.leaves.len() as u32;
        self.leaves.push(v);
    }

    fn drop_leaf(&mut self, v: Vertex) {
        let pos = self.leaf_pos[v as usize] as usize;
        debug_assert_ne!(pos as u32, NOT_A_LEAF);
        let last = *self.leaves.last().expect("leaf pool non-empty");
        self.leaves.swap_remove(pos);
        if last != v {
            self.leaf_pos[last as usize] = pos as u32;
        }
        self.leaf_pos[v as usize] = NOT_A_LEAF;
    }

    fn set_degree(&mut self, v: Vertex, new: u32) {
        let old = self.deg[v as usize];
        match old {
            0 => {}
            1 => {
                self.stats.leaves -= 1;
                self.drop_leaf(v);
            }
            _ => self.stats.heavy -= 1,
        }
        match new {
            0 => self.alive[v as usize] = false,
            1 => {
                self.stats.leaves += 1;
                self.push_leaf(v);
            }
            _ => self.stats.heavy += 1,
        }
        self.deg[v as usize] = new;
    }

    /// One leaf-removal step. Returns the removed leaf and its neighbour.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(Vertex, Vertex)> {
        if self.leaves.is_empty() {
            return Err(Error::Precondition("no leaves left".into()));
        }
        let leaf = self.leaves[rng.random_range(0..self.leaves.len())];
        let nb = *self.adj[leaf as usize]
            .iter()
            .find(|&&u| self.alive[u as usize])
            .expect("a leaf has one live neighbour");

        // Deleting nb takes every edge at nb with it, including the one to
        // the leaf (whose degree drops to zero here).
        let nb_adj = std::mem::take(&mut self.adj[nb as usize]);
        let mut removed = 0u64;
        let mut loop_ends = 0u64;
        for &u in &nb_adj {
            if u == nb {
                loop_ends += 1;
            } else if self.alive[u as usize] {
                removed += 1;
                let d = self.deg[u as usize];
                self.set_degree(u, d - 1);
            }
        }
        removed += loop_ends / 2;
        self.set_degree(nb, 0);
        self.stats.edges -= removed;
        self.stats.steps += 1;
        Ok((leaf, nb))
    }

    /// Live degree histogram, degrees at least one only.
    pub fn degree_histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for (v, &d) in self.deg.iter().enumerate() {
            if self.alive[v] && d > 0 {
                *h.entry(d).or_insert(0) += 1;
            }
        }
        h
    }

    /// The live graph, relabelled onto `0..k`, with the original labels.
    pub fn live_graph(&self) -> (MultiGraph, Vec<Vertex>) {
        let mut labels = Vec::new();
        let mut new_id = vec![u32::MAX; self.n];
        for v in 0..self.n {
            if self.alive[v] {
                new_id[v] = labels.len() as u32;
                labels.push(v as Vertex);
            }
        }
        let mut g = MultiGraph::empty(labels.len());
        for &v in &labels {
            let mut loop_ends = 0;
            for &u in &self.adj[v as usize] {
                if u == v {
                    loop_ends += 1;
                } else if v < u && self.alive[u as usize] {
                    g.push_unchecked(new_id[v as usize], new_id[u as usize]);
                }
            }
            for _ in 0..loop_ends / 2 {
                g.push_unchecked(new_id[v as usize], new_id[v as usize]);
            }
        }
        (g, labels)
    }

    /// Sum of live degrees; always twice the edge count.
    pub fn degree_sum(&self) -> u64 {
        self.deg
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(&d, _)| d as u64)
            .sum()
    }
}
