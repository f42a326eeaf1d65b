//! Timestamped edge updates over dense vertex ids.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{DynamicGraph, UpdateDelta, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    Add,
    Remove,
}

impl Op {
    pub fn symbol(self) -> char {
        match self {
            Op::Add => '+',
            Op::Remove => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimedUpdate {
    pub t: u64,
    pub u: Vertex,
    pub v: Vertex,
    pub op: Op,
}

impl TimedUpdate {
    pub fn add(t: u64, u: Vertex, v: Vertex) -> Self {
        TimedUpdate { t, u, v, op: Op::Add }
    }

    pub fn remove(t: u64, u: Vertex, v: Vertex) -> Self {
        TimedUpdate { t, u, v, op: Op::Remove }
    }

    pub fn apply(&self, g: &mut DynamicGraph) -> Result<UpdateDelta> {
        match self.op {
            Op::Add => g.add_edge(self.u, self.v),
            Op::Remove => g.remove_edge(self.u, self.v),
        }
    }
}

/// Stable 64-bit digest of an update sequence.
pub fn digest(updates: &[TimedUpdate]) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    updates.hash(&mut h);
    h.finish()
}

/// Applies every update in order.
pub fn replay(g: &mut DynamicGraph, updates: &[TimedUpdate]) -> Result<()> {
    for u in updates {
        u.apply(g)?;
    }
    Ok(())
}
