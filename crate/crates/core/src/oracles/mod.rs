//! Exact matching number and adjacency rank, and the asymptotic matching
//! fraction `alpha_c`.

mod alpha;
mod matching;
mod rank;

pub use alpha::{alpha_c, alpha_objective};
pub use matching::{brute_matching, max_matching, MatchingResult, BRUTE_EDGE_LIMIT};
pub use rank::{adjacency_rank, random_prime, RankMode, RankResult, RATIONAL_LIMIT};

use rand::Rng;

use crate::error::Result;
use crate::graph::{MultiGraph, SimpleGraph};
use crate::ks::{run_ks, StopRule};

/// Matching number and rank of a simple graph, obtained by running leaf
/// removal to exhaustion and solving only the leafless core exactly.
/// Each step lowers the matching number by one and the rank by two.
pub fn ks_accelerated<R: Rng + ?Sized>(g: &SimpleGraph, rng: &mut R) -> Result<(u64, u64)> {
    let trace = run_ks(&MultiGraph::from(g.clone()), StopRule::NoLeaves, rng)?;
    let (nu, rk) = core_observables(&trace.core, RankMode::Modular { verify: false }, rng)?;
    let steps = trace.steps();
    Ok((steps + nu, 2 * steps + rk))
}

/// Matching number and rank of a leaf-removal core. The core of a simple
/// graph is simple; multigraph cores are collapsed first.
pub fn core_observables<R: Rng + ?Sized>(
    core: &MultiGraph,
    mode: RankMode,
    rng: &mut R,
) -> Result<(u64, u64)> {
    if core.edge_count() == 0 {
        return Ok((0, 0));
    }
    let simple = core.collapse();
    let nu = max_matching(&simple).size as u64;
    let rk = adjacency_rank(&simple, mode, rng)?.rank as u64;
    Ok((nu, rk))
}
