use std::collections::HashMap;

use super::MultiGraph;
use crate::error::{Error, Result};

/// Size of the multiset symmetric difference of the two edge multisets.
pub fn edit_distance(a: &MultiGraph, b: &MultiGraph) -> Result<u64> {
    if a.n() != b.n() {
        return Err(Error::param(format!(
            "edit distance between graphs on {} and {} vertices",
            a.n(),
            b.n()
        )));
    }
    let mut count: HashMap<(u32, u32), i64> = HashMap::with_capacity(a.edge_count());
    for &e in a.edges() {
        *count.entry(e).or_insert(0) += 1;
    }
    for &e in b.edges() {
        *count.entry(e).or_insert(0) -= 1;
    }
    Ok(count.values().map(|c| c.unsigned_abs()).sum())
}
