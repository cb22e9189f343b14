use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, Vertex};

const NONE: u32 = u32::MAX;

pub const BRUTE_EDGE_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub size: usize,
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// Maximum matching by Edmonds' blossom algorithm, seeded with a greedy
/// matching.
pub fn max_matching(g: &SimpleGraph) -> MatchingResult {
    let n = g.n();
    let adj = g.adjacency();
    let mut mate = vec![NONE; n];
    for &(u, v) in g.edges() {
        if mate[u as usize] == NONE && mate[v as usize] == NONE {
            mate[u as usize] = v;
            mate[v as usize] = u;
        }
    }
    let mut search = Search::new(n);
    for root in 0..n {
        if mate[root] != NONE || adj[root].is_empty() {
            continue;
        }
        let end = search.augmenting_path(&adj, &mate, root as u32);
        let mut v = end;
        while v != NONE {
            let pv = search.parent[v as usize];
            let next = mate[pv as usize];
            mate[v as usize] = pv;
            mate[pv as usize] = v;
            v = next;
        }
    }
    let pairs: Vec<_> = (0..n as u32)
        .filter(|&v| mate[v as usize] != NONE && v < mate[v as usize])
        .map(|v| (v, mate[v as usize]))
        .collect();
    MatchingResult {
        size: pairs.len(),
        pairs,
    }
}

struct Search {
    parent: Vec<u32>,
    base: Vec<u32>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<u32>,
}

impl Search {
    fn new(n: usize) -> Self {
        Self {
            parent: vec![NONE; n],
            base: (0..n as u32).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mate: &[u32], mut a: u32, mut b: u32) -> u32 {
        self.lca_mark.fill(false);
        loop {
            a = self.base[a as usize];
            self.lca_mark[a as usize] = true;
            if mate[a as usize] == NONE {
                break;
            }
            a = self.parent[mate[a as usize] as usize];
        }
        loop {
            b = self.base[b as usize];
            if self.lca_mark[b as usize] {
                return b;
            }
            b = self.parent[mate[b as usize] as usize];
        }
    }

    fn mark_path(&mut self, mate: &[u32], mut v: u32, b: u32, mut child: u32) {
        while self.base[v as usize] != b {
            let m = mate[v as usize];
            self.in_blossom[self.base[v as usize] as usize] = true;
            self.in_blossom[self.base[m as usize] as usize] = true;
            self.parent[v as usize] = child;
            child = m;
            v = self.parent[m as usize];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`, or NONE.
    fn augmenting_path(&mut self, adj: &[Vec<Vertex>], mate: &[u32], root: u32) -> u32 {
        let n = adj.len();
        self.in_tree.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i as u32;
        }
        self.queue.clear();
        self.in_tree[root as usize] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v as usize] {
                if self.base[v as usize] == self.base[to as usize] || mate[v as usize] == to {
                    continue;
                }
                let odd_cycle = to == root
                    || (mate[to as usize] != NONE && self.parent[mate[to as usize] as usize] != NONE);
                if odd_cycle {
                    let b = self.lca(mate, v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(mate, v, b, to);
                    self.mark_path(mate, to, b, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i] as usize] {
                            self.base[i] = b;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i as u32);
                            }
                        }
                    }
                } else if self.parent[to as usize] == NONE {
                    self.parent[to as usize] = v;
                    let m = mate[to as usize];
                    if m == NONE {
                        return to;
                    }
                    self.in_tree[m as usize] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

/// Exhaustive maximum matching for graphs with at most
/// [`BRUTE_EDGE_LIMIT`] edges.
pub fn brute_matching(g: &SimpleGraph) -> Result<usize> {
    let edges = g.edges();
    if edges.len() > BRUTE_EDGE_LIMIT {
        return Err(Error::Size(format!(
            "{} edges, exhaustive matching supports at most {BRUTE_EDGE_LIMIT}",
            edges.len()
        )));
    }
    fn best(edges: &[(Vertex, Vertex)], used: &mut [bool]) -> usize {
        let Some((&(u, v), rest)) = edges.split_first() else {
            return 0;
        };
        let mut b = best(rest, used);
        if !used[u as usize] && !used[v as usize] {
            used[u as usize] = true;
            used[v as usize] = true;
            b = b.max(1 + best(rest, used));
            used[u as usize] = false;
            used[v as usize] = false;
        }
        b
    }
    Ok(best(edges, &mut vec![false; g.n()]))
}
