use std::fmt::Write as _;

use rand::Rng;

use super::state::{KsState, KsStats};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Vertex};

/// When to stop stepping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StopRule {
    /// Run until no leaf is left.
    NoLeaves,
    /// Stop at the first step count where at most `delta * n` edges remain,
    /// `n` being the original vertex count.
    EdgesAtMost(f64),
    /// Stop once this many steps have been taken in total.
    StepLimit(u64),
}

impl StopRule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            StopRule::EdgesAtMost(d) if !(d > 0.0 && d <= 1.0) => {
                Err(Error::param(format!("edge threshold fraction {d} not in (0, 1]")))
            }
            _ => Ok(()),
        }
    }

    fn fires(&self, st: &KsStats, n: usize) -> bool {
        match *self {
            StopRule::NoLeaves => false,
            StopRule::EdgesAtMost(d) => st.edges as f64 <= d * n as f64,
            StopRule::StepLimit(k) => st.steps >= k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    NoLeaves,
    EdgeThreshold,
    StepLimit,
}

/// A resumable leaf-removal run that records every intermediate statistic.
///
/// Advancing first with an edge threshold and then with `NoLeaves` replays
/// one realisation, so both stopping times come from the same process.
#[derive(Clone, Debug)]
pub struct KsRun {
    state: KsState,
    snapshots: Vec<KsStats>,
    log: Vec<(Vertex, Vertex)>,
}

impl KsRun {
    pub fn new(g: &MultiGraph) -> Self {
        let state = KsState::new(g);
        Self {
            snapshots: vec![state.stats()],
            state,
            log: Vec::new(),
        }
    }

    pub fn state(&self) -> &KsState {
        &self.state
    }

    pub fn stats(&self) -> KsStats {
        self.state.stats()
    }

    pub fn advance<R: Rng + ?Sized>(&mut self, stop: StopRule, rng: &mut R) -> Result<StopReason> {
        stop.validate()?;
        let n = self.state.n();
        loop {
            if stop.fires(&self.state.stats(), n) {
                return Ok(match stop {
                    StopRule::EdgesAtMost(_) => StopReason::EdgeThreshold,
                    StopRule::StepLimit(_) => StopReason::StepLimit,
                    StopRule::NoLeaves => unreachable!(),
                });
            }
            if !self.state.has_leaves() {
                return Ok(StopReason::NoLeaves);
            }
            let pair = self.state.step(rng)?;
            self.log.push(pair);
            self.snapshots.push(self.state.stats());
        }
    }

    pub fn finish(self, reason: StopReason) -> KsTrace {
        let (core, core_labels) = self.state.live_graph();
        KsTrace {
            snapshots: self.snapshots,
            reason,
            core,
            core_labels,
            log: self.log,
        }
    }
}

/// Result of a leaf-removal run.
#[derive(Clone, Debug)]
pub struct KsTrace {
    /// Statistics before the first step and after every step.
    pub snapshots: Vec<KsStats>,
    pub reason: StopReason,
    /// Remaining graph without isolated vertices, relabelled onto `0..k`.
    pub core: MultiGraph,
    /// Original label of each core vertex.
    pub core_labels: Vec<Vertex>,
    /// (removed leaf, removed neighbour) per step.
    pub log: Vec<(Vertex, Vertex)>,
}

impl KsTrace {
    pub fn steps(&self) -> u64 {
        self.last().steps
    }

    pub fn last(&self) -> KsStats {
        *self.snapshots.last().expect("trace holds the initial snapshot")
    }
}

pub fn run_ks<R: Rng + ?Sized>(g: &MultiGraph, stop: StopRule, rng: &mut R) -> Result<KsTrace> {
    let mut run = KsRun::new(g);
    let reason = run.advance(stop, rng)?;
    Ok(run.finish(reason))
}

/// Trace statistics as CSV with header `step,X1,X2,X3,X4`.
pub fn trace_csv(trace: &KsTrace) -> String {
    let mut out = String::from("step,X1,X2,X3,X4\n");
    for (i, s) in trace.snapshots.iter().enumerate() {
        let _ = writeln!(out, "{i},{},{},{},{}", s.leaves, s.heavy, s.edges, s.steps);
    }
    out
}
