//! Seed graphs for simulations and tests.

use rand::Rng;

use crate::graph::{DynamicGraph, Vertex};

pub fn empty(n: usize) -> DynamicGraph {
    DynamicGraph::new(n)
}

pub fn path(n: usize) -> DynamicGraph {
    DynamicGraph::from_edges(n, (1..n as Vertex).map(|i| (i - 1, i))).expect("path edges are simple")
}

pub fn cycle(n: usize) -> DynamicGraph {
    let mut g = path(n);
    if n > 2 {
        g.add_edge(n as Vertex - 1, 0).expect("closing edge is new");
    }
    g
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> DynamicGraph {
    DynamicGraph::from_edges(leaves + 1, (1..=leaves as Vertex).map(|i| (0, i))).expect("star edges are simple")
}

pub fn complete(n: usize) -> DynamicGraph {
    let mut g = DynamicGraph::new(n);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            g.add_edge(u, v).expect("complete graph edges are simple");
        }
    }
    g
}

/// Erdős–Rényi `G(n, p)` by scanning every pair.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> DynamicGraph {
    let mut g = DynamicGraph::new(n);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("pair visited once");
            }
        }
    }
    g
}

/// Uniform graph with exactly `m` edges (rejection sampling; `m` must leave room).
pub fn gnm<R: Rng + ?Sized>(n: usize, m: u64, rng: &mut R) -> DynamicGraph {
    let pairs = n as u64 * (n as u64).saturating_sub(1) / 2;
    assert!(m <= pairs, "gnm: {m} edges do not fit on {n} vertices");
    let mut g = DynamicGraph::new(n);
    while g.m() < m {
        let u = rng.gen_range(0..n as Vertex);
        let v = rng.gen_range(0..n as Vertex);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).expect("checked above");
        }
    }
    g
}

/// Disjoint union; vertices of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &DynamicGraph, b: &DynamicGraph) -> DynamicGraph {
    let off = a.n() as Vertex;
    let edges = a.edges().chain(b.edges().map(|(u, v)| (u + off, v + off)));
    DynamicGraph::from_edges(a.n() + b.n(), edges.collect::<Vec<_>>()).expect("union of simple graphs")
}
