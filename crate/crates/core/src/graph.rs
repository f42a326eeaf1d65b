//! Undirected simple graph on a fixed vertex set with exact, incrementally
//! maintained wedge and triangle counters.
//!
//! Every mutation updates the edge count, the total wedge count
//! `Γ = Σ_v C(d(v), 2)`, the triangle count and the per-vertex tri-degree in
//! `O(min(d(u), d(v)))` set probes. Per-vertex wedge-endpoint counts `Γ(v)`
//! and `ζ²(v)` are computed on demand.

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::weights::WeightTree;

pub type Vertex = u32;

/// Neighbor set with insertion-ordered iteration, so that every traversal
/// (and therefore every seeded simulation) is reproducible.
pub type NeighborSet = IndexSet<Vertex>;

#[inline]
pub fn choose2(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

/// Change in the maintained counters caused by one mutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UpdateDelta {
    pub wedges: i64,
    pub open_wedges: i64,
    pub triangles: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexStats {
    pub degree: u64,
    /// Number of wedges having `v` as an endpoint, `Σ_u d(u, v)`.
    pub wedge_endpoints: u64,
    pub tri_degree: u64,
    /// `Σ_u d(u, v)²`.
    pub zeta2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeStats {
    pub wedges: u64,
    pub open: u64,
    pub closed: u64,
    pub triangles: u64,
}

/// Edge and triangle counts of an induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InducedCounts {
    pub vertices: u64,
    pub edges: u64,
    pub triangles: u64,
}

impl InducedCounts {
    pub fn density(&self) -> f64 {
        self.edges as f64 / self.vertices as f64
    }

    pub fn tri_density(&self) -> f64 {
        self.triangles as f64 / self.vertices as f64
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub mismatches: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct DynamicGraph {
    adj: Vec<NeighborSet>,
    edges: u64,
    wedges: u64,
    triangles: u64,
    tri_degree: Vec<u64>,
    wedge_weights: WeightTree,
}

impl DynamicGraph {
    pub fn new(n: usize) -> Self {
        DynamicGraph {
            adj: vec![NeighborSet::default(); n],
            edges: 0,
            wedges: 0,
            triangles: 0,
            tri_degree: vec![0; n],
            wedge_weights: WeightTree::new(n),
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops and duplicates.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = DynamicGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> u64 {
        self.edges
    }

    pub fn wedges(&self) -> u64 {
        self.wedges
    }

    pub fn open_wedges(&self) -> u64 {
        self.wedges - 3 * self.triangles
    }

    pub fn triangles(&self) -> u64 {
        self.triangles
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn tri_degree(&self, v: Vertex) -> u64 {
        self.tri_degree[v as usize]
    }

    pub fn neighbors(&self, v: Vertex) -> &NeighborSet {
        &self.adj[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn avg_degree(&self) -> f64 {
        if self.adj.is_empty() {
            0.0
        } else {
            2.0 * self.edges as f64 / self.adj.len() as f64
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.adj.len() && self.adj[u as usize].contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.adj.len() as Vertex
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| (u as Vertex) < v).map(move |&v| (u as Vertex, v)))
    }

    /// Midpoint weights `C(d(v), 2)` used for uniform wedge sampling.
    pub fn wedge_weights(&self) -> &WeightTree {
        &self.wedge_weights
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v, self.adj.len()))
        }
    }

    fn common_unchecked(&self, u: Vertex, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let (small, large) = if self.adj[u as usize].len() <= self.adj[v as usize].len() {
            (&self.adj[u as usize], &self.adj[v as usize])
        } else {
            (&self.adj[v as usize], &self.adj[u as usize])
        };
        small.iter().copied().filter(move |w| large.contains(w))
    }

    /// Common neighbors of `u` and `v` in the iteration order of the smaller set.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.common_unchecked(u, v).collect())
    }

    /// `d(u, v) = |N(u) ∩ N(v)|`.
    pub fn common_degree(&self, u: Vertex, v: Vertex) -> Result<u64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.common_unchecked(u, v).count() as u64)
    }

    fn refresh_weight(&mut self, v: Vertex) {
        let d = self.adj[v as usize].len() as u64;
        self.wedge_weights.set(v as usize, choose2(d));
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateDelta> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u as usize].contains(&v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        let common: Vec<Vertex> = self.common_unchecked(u, v).collect();
        let dt = common.len() as u64;
        for &w in &common {
            self.tri_degree[w as usize] += 1;
        }
        self.tri_degree[u as usize] += dt;
        self.tri_degree[v as usize] += dt;
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        let dg = (self.adj[u as usize].len() + self.adj[v as usize].len() - 2) as u64;
        self.edges += 1;
        self.wedges += dg;
        self.triangles += dt;
        self.refresh_weight(u);
        self.refresh_weight(v);
        Ok(UpdateDelta {
            wedges: dg as i64,
            open_wedges: dg as i64 - 3 * dt as i64,
            triangles: dt as i64,
        })
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<UpdateDelta> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.adj[u as usize].contains(&v) {
            return Err(Error::MissingEdge(u, v));
        }
        let dg = (self.adj[u as usize].len() + self.adj[v as usize].len() - 2) as u64;
        self.adj[u as usize].swap_remove(&v);
        self.adj[v as usize].swap_remove(&u);
        let common: Vec<Vertex> = self.common_unchecked(u, v).collect();
        let dt = common.len() as u64;
        for &w in &common {
            self.tri_degree[w as usize] -= 1;
        }
        self.tri_degree[u as usize] -= dt;
        self.tri_degree[v as usize] -= dt;
        self.edges -= 1;
        self.wedges -= dg;
        self.triangles -= dt;
        self.refresh_weight(u);
        self.refresh_weight(v);
        Ok(UpdateDelta {
            wedges: -(dg as i64),
            open_wedges: -(dg as i64) + 3 * dt as i64,
            triangles: -(dt as i64),
        })
    }

    /// `Γ(v) = Σ_{w ∈ N(v)} (d(w) - 1)`.
    pub fn wedge_endpoints(&self, v: Vertex) -> u64 {
        self.adj[v as usize]
            .iter()
            .map(|&w| self.adj[w as usize].len() as u64 - 1)
            .sum()
    }

    /// `Γ(v)` for every vertex in `O(n + m)`.
    pub fn all_wedge_endpoints(&self) -> Vec<u64> {
        self.vertices().map(|v| self.wedge_endpoints(v)).collect()
    }

    pub fn vertex_stats(&self, v: Vertex) -> Result<VertexStats> {
        self.check_vertex(v)?;
        let mut counts: std::collections::HashMap<Vertex, u64> = std::collections::HashMap::new();
        for &w in &self.adj[v as usize] {
            for &u in &self.adj[w as usize] {
                if u != v {
                    *counts.entry(u).or_insert(0) += 1;
                }
            }
        }
        Ok(VertexStats {
            degree: self.adj[v as usize].len() as u64,
            wedge_endpoints: counts.values().sum(),
            tri_degree: self.tri_degree[v as usize],
            zeta2: counts.values().map(|c| c * c).sum(),
        })
    }

    pub fn wedge_stats(&self) -> WedgeStats {
        WedgeStats {
            wedges: self.wedges,
            open: self.open_wedges(),
            closed: 3 * self.triangles,
            triangles: self.triangles,
        }
    }

    /// Edge and triangle counts of the subgraph induced by `set`.
    pub fn induced_counts(&self, set: &[Vertex]) -> Result<InducedCounts> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut member = vec![false; self.n()];
        for &v in set {
            self.check_vertex(v)?;
            member[v as usize] = true;
        }
        let mut vertices = 0u64;
        let mut edges = 0u64;
        let mut triangles = 0u64;
        for (u, _) in member.iter().enumerate().filter(|(_, &m)| m) {
            vertices += 1;
            let u = u as Vertex;
            for &v in self.adj[u as usize].iter().filter(|&&v| v > u && member[v as usize]) {
                edges += 1;
                triangles += self
                    .common_unchecked(u, v)
                    .filter(|&w| w > v && member[w as usize])
                    .count() as u64;
            }
        }
        Ok(InducedCounts { vertices, edges, triangles })
    }

    /// `(ρ(S), ξ(S))`: edges per vertex and triangles per vertex of the
    /// induced subgraph.
    pub fn induced_density(&self, set: &[Vertex]) -> Result<(f64, f64)> {
        let c = self.induced_counts(set)?;
        Ok((c.density(), c.tri_density()))
    }

    /// Recomputes every maintained counter from adjacency alone.
    pub fn audit_recompute(&self) -> AuditReport {
        let mut report = AuditReport::default();
        let n = self.n();
        let mut degree_sum = 0u64;
        let mut wedges = 0u64;
        for u in 0..n {
            for &v in &self.adj[u] {
                if v as usize == u {
                    report.mismatches.push(format!("self-loop at {u}"));
                } else if (v as usize) >= n || !self.adj[v as usize].contains(&(u as Vertex)) {
                    report.mismatches.push(format!("asymmetric adjacency {u} -> {v}"));
                }
            }
            let d = self.adj[u].len() as u64;
            degree_sum += d;
            wedges += choose2(d);
            if self.wedge_weights.weight(u) != choose2(d) {
                report.mismatches.push(format!("wedge weight of {u}"));
            }
        }
        if degree_sum != 2 * self.edges {
            report.mismatches.push(format!("degree sum {degree_sum} != 2m = {}", 2 * self.edges));
        }
        if wedges != self.wedges {
            report.mismatches.push(format!("wedges {} != recount {wedges}", self.wedges));
        }
        if self.wedge_weights.total() != wedges {
            report.mismatches.push("wedge weight total".to_string());
        }
        let mut tri = vec![0u64; n];
        let mut triangles = 0u64;
        for (u, v) in self.edges() {
            for w in self.common_unchecked(u, v).filter(|&w| w > v) {
                triangles += 1;
                tri[u as usize] += 1;
                tri[v as usize] += 1;
                tri[w as usize] += 1;
            }
        }
        if triangles != self.triangles {
            report.mismatches.push(format!("triangles {} != recount {triangles}", self.triangles));
        }
        for (v, (&got, &want)) in self.tri_degree.iter().zip(&tri).enumerate() {
            if got != want {
                report.mismatches.push(format!("tri-degree of {v}: {got} != {want}"));
            }
        }
        let endpoint_sum: u64 = self.all_wedge_endpoints().iter().sum();
        if endpoint_sum != 2 * wedges {
            report.mismatches.push(format!("Σ Γ(v) = {endpoint_sum} != 2Γ = {}", 2 * wedges));
        }
        report
    }

    /// Neighbor lists in iteration order; two graphs with equal snapshots
    /// behave identically under seeded simulation.
    pub fn adjacency_snapshot(&self) -> Vec<Vec<Vertex>> {
        self.adj.iter().map(|s| s.iter().copied().collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> DynamicGraph {
        DynamicGraph::from_edges(n, (1..n as Vertex).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> DynamicGraph {
        DynamicGraph::from_edges(leaves + 1, (1..=leaves as Vertex).map(|i| (0, i))).unwrap()
    }

    fn complete(n: usize) -> DynamicGraph {
        let mut g = DynamicGraph::new(n);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn closing_a_path_gives_a_triangle() {
        let mut g = path(3);
        let d = g.add_edge(0, 2).unwrap();
        assert_eq!(d.wedges, 2);
        assert_eq!(d.triangles, 1);
        assert_eq!(g.wedges(), 3);
        assert_eq!(g.open_wedges(), 0);
    }

    #[test]
    fn star_leaf_edge() {
        let mut g = star(4);
        assert_eq!(g.wedges(), 6);
        let d = g.add_edge(1, 2).unwrap();
        assert_eq!((d.triangles, d.wedges), (1, 2));
        assert_eq!(g.wedges(), 8);
        assert_eq!(g.open_wedges(), 5);
        let recount: u64 = g.vertices().map(|v| choose2(g.degree(v) as u64)).sum();
        assert_eq!(recount, 8);
    }

    #[test]
    fn single_edge_has_no_wedges() {
        let mut g = DynamicGraph::new(2);
        let d = g.add_edge(0, 1).unwrap();
        assert_eq!(d, UpdateDelta::default());
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        let mut g = DynamicGraph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(g.remove_edge(0, 2), Err(Error::MissingEdge(0, 2)));
        assert_eq!(g.add_edge(0, 7), Err(Error::UnknownVertex(7, 3)));
    }

    #[test]
    fn triangle_edge_removal() {
        let mut g = complete(3);
        g.remove_edge(1, 2).unwrap();
        assert_eq!(g.wedges(), 1);
        assert_eq!(g.triangles(), 0);
    }

    #[test]
    fn add_then_remove_is_identity() {
        let mut g = star(5);
        g.add_edge(2, 3).unwrap();
        let before = g.adjacency_snapshot();
        let stats = (g.wedges(), g.triangles(), g.m(), g.tri_degree.clone());
        g.add_edge(1, 4).unwrap();
        g.remove_edge(1, 4).unwrap();
        assert_eq!(before, g.adjacency_snapshot());
        assert_eq!(stats, (g.wedges(), g.triangles(), g.m(), g.tri_degree.clone()));
        let mut reference = star(5);
        reference.add_edge(2, 3).unwrap();
        assert_eq!(g.wedge_weights, reference.wedge_weights);
    }

    #[test]
    fn common_degree_examples() {
        let k3 = complete(3);
        assert_eq!(k3.common_degree(0, 1).unwrap(), 1);
        let s = star(4);
        assert_eq!(s.common_degree(1, 2).unwrap(), 1);
        assert_eq!(s.common_degree(0, 3).unwrap(), 0);
        assert_eq!(s.common_degree(2, 2), Err(Error::SelfLoop(2)));
    }

    #[test]
    fn vertex_stats_examples() {
        let k4 = complete(4);
        let s = k4.vertex_stats(0).unwrap();
        assert_eq!((s.degree, s.tri_degree, s.wedge_endpoints, s.zeta2), (3, 3, 6, 12));
        let st = star(4);
        let s = st.vertex_stats(1).unwrap();
        assert_eq!((s.degree, s.tri_degree, s.wedge_endpoints, s.zeta2), (1, 0, 3, 3));
        let iso = DynamicGraph::from_edges(4, [(0, 1), (0, 2)]).unwrap();
        let s = iso.vertex_stats(3).unwrap();
        assert_eq!((s.degree, s.tri_degree, s.wedge_endpoints, s.zeta2), (0, 0, 0, 0));
        assert!(iso.vertex_stats(9).is_err());
    }

    #[test]
    fn wedge_stats_of_star() {
        let ws = star(4).wedge_stats();
        assert_eq!((ws.wedges, ws.open, ws.closed, ws.triangles), (6, 6, 0, 0));
    }

    #[test]
    fn induced_density_examples() {
        let k5 = complete(5);
        assert_eq!(k5.induced_density(&[0, 1, 2, 3, 4]).unwrap(), (2.0, 2.0));
        let k4 = complete(4);
        assert_eq!(k4.induced_density(&[0, 1, 2, 3]).unwrap().1, 1.0);
        let c4 = DynamicGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.induced_density(&[0, 1, 2, 3]).unwrap(), (1.0, 0.0));
        assert_eq!(c4.induced_density(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn fresh_graph_audits_clean() {
        assert!(DynamicGraph::new(10).audit_recompute().passed());
        assert!(complete(6).audit_recompute().passed());
    }
}
