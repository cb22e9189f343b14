use rand::seq::SliceRandom;
use rand::Rng;

use super::{DegreeSequence, MultiGraph, Vertex};
use crate::error::Result;

/// Contracts a uniformly random perfect matching of the stubs.
pub fn gen_configuration<R: Rng + ?Sized>(d: &DegreeSequence, rng: &mut R) -> Result<MultiGraph> {
    d.check_even()?;
    let mut stubs: Vec<Vertex> = Vec::with_capacity(d.sum() as usize);
    for (v, &k) in d.degrees().iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v as Vertex, k as usize));
    }
    stubs.shuffle(rng);
    let mut g = MultiGraph::empty(d.len());
    for pair in stubs.chunks_exact(2) {
        g.push_unchecked(pair[0], pair[1]);
    }
    Ok(g)
}

/// Output of [`couple_configurations`].
#[derive(Clone, Debug)]
pub struct Coupling {
    pub first: MultiGraph,
    pub second: MultiGraph,
    /// Vertex that received the parity padding stub, if any.
    pub padded: Option<Vertex>,
    /// Stubs removed to reach the first sequence from the maximum one.
    pub first_bad: u64,
    /// Stubs removed to reach the second sequence from the maximum one.
    pub second_bad: u64,
}

#[derive(Clone, Copy)]
struct Stub {
    vertex: Vertex,
    bad_first: bool,
    bad_second: bool,
}

/// Couples `G*(d)` and `G*(d')` through a common configuration of the
/// pointwise maximum sequence.
///
/// A uniform configuration of `max(d, d')` (padded with one stub when its sum
/// is odd) is drawn first. For each side, the stubs in excess of that side's
/// degrees are marked bad; every pair touching a bad stub is dropped and the
/// good stubs it leaves behind are re-paired uniformly. Each side is then a
/// uniform configuration of its own sequence.
pub fn couple_configurations<R: Rng + ?Sized>(
    d: &DegreeSequence,
    d2: &DegreeSequence,
    rng: &mut R,
) -> Result<Coupling> {
    d.check_even()?;
    d2.check_even()?;
    let n = d.len().max(d2.len());
    let deg = |s: &DegreeSequence, v: usize| s.degrees().get(v).copied().unwrap_or(0);

    let mut dmax: Vec<u32> = (0..n).map(|v| deg(d, v).max(deg(d2, v))).collect();
    let mut padded = None;
    if dmax.iter().map(|&x| x as u64).sum::<u64>() % 2 == 1 {
        // Both sides are even, so an odd maximum sum has a vertex where the
        // sides differ; padding there keeps the construction local.
        let v = (0..n).find(|&v| deg(d, v) != deg(d2, v)).unwrap_or(0);
        dmax[v] += 1;
        padded = Some(v as Vertex);
    }

    // Stub i of vertex v is bad for a side when i >= that side's degree, so
    // the two bad sets overlap as much as possible.
    let mut stubs = Vec::with_capacity(dmax.iter().map(|&x| x as usize).sum());
    for (v, &k) in dmax.iter().enumerate() {
        for i in 0..k {
            stubs.push(Stub {
                vertex: v as Vertex,
                bad_first: i >= deg(d, v),
                bad_second: i >= deg(d2, v),
            });
        }
    }
    let first_bad = stubs.iter().filter(|s| s.bad_first).count() as u64;
    let second_bad = stubs.iter().filter(|s| s.bad_second).count() as u64;

    let mut order: Vec<usize> = (0..stubs.len()).collect();
    order.shuffle(rng);
    let pairs: Vec<(usize, usize)> = order.chunks_exact(2).map(|p| (p[0], p[1])).collect();

    let first = restrict(n, &stubs, &pairs, |s| s.bad_first, rng);
    let second = restrict(n, &stubs, &pairs, |s| s.bad_second, rng);
    Ok(Coupling {
        first,
        second,
        padded,
        first_bad,
        second_bad,
    })
}

fn restrict<R: Rng + ?Sized>(
    n: usize,
    stubs: &[Stub],
    pairs: &[(usize, usize)],
    is_bad: impl Fn(&Stub) -> bool,
    rng: &mut R,
) -> MultiGraph {
    let mut g = MultiGraph::empty(n);
    let mut freed = Vec::new();
    for &(a, b) in pairs {
        let (sa, sb) = (&stubs[a], &stubs[b]);
        match (is_bad(sa), is_bad(sb)) {
            (false, false) => g.push_unchecked(sa.vertex, sb.vertex),
            (false, true) => freed.push(sa.vertex),
            (true, false) => freed.push(sb.vertex),
            (true, true) => {}
        }
    }
    freed.shuffle(rng);
    for p in freed.chunks_exact(2) {
        g.push_unchecked(p[0], p[1]);
    }
    g
}
