//! Exact densest and tri-densest subgraphs for validation.
//!
//! `densest_exact` decides "is there a subgraph with density above g?" with
//! one minimum cut per guess. For a guess `g = num/den` on a graph with `n`
//! vertices and `m` edges the network is
//!
//! ```text
//! s -> v   capacity m·den
//! v -> t   capacity m·den + 2·num − d(v)·den
//! u <-> v  capacity den (each direction, per edge)
//! ```
//!
//! A cut with source side `{s} ∪ S` costs `n·m·den + 2(num·|S| − den·|E(S)|)`,
//! so a cut cheaper than `n·m·den` exists iff some `S` has `|E(S)|/|S| > g`,
//! and its source side is such an `S`.

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, Vertex};

pub const DENSEST_BRUTE_LIMIT: usize = 20;
pub const TRIDENSEST_BRUTE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Flow,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Optimal vertex set, ascending.
    pub subset: Vec<Vertex>,
    /// Edges (or triangles) per vertex of `subset`, exactly.
    pub value: Ratio<u64>,
    pub method: Method,
}

impl OracleResult {
    pub fn value_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i128>,
    next: Vec<usize>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: i128, back: i128) {
        for (a, b, c) in [(u, v, c), (v, u, back)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            let mut e = self.head[u];
            while e != NIL {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
                e = self.next[e];
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, f: i128) -> i128 {
        if u == t {
            return f;
        }
        while self.iter[u] != NIL {
            let e = self.iter[u];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] = self.next[e];
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.clone_from(&self.head);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }
}

/// Source side (minus the source) of a minimum cut for guess `num/den`,
/// or `None` when no subgraph is denser than the guess.
fn denser_than(g: &DynamicGraph, num: i128, den: i128) -> Option<Vec<Vertex>> {
    let n = g.n();
    let m = g.m() as i128;
    let (s, t) = (n, n + 1);
    let mut net = FlowNet::new(n + 2);
    for v in 0..n {
        net.arc(s, v, m * den, 0);
        net.arc(v, t, m * den + 2 * num - g.degree(v as Vertex) as i128 * den, 0);
    }
    for (u, v) in g.edges() {
        net.arc(u as usize, v as usize, den, den);
    }
    let cut = net.max_flow(s, t);
    if cut >= n as i128 * m * den {
        return None;
    }
    net.bfs(s);
    Some((0..n as Vertex).filter(|&v| net.level[v as usize] >= 0).collect())
}

fn edges_within(g: &DynamicGraph, set: &[Vertex]) -> u64 {
    g.induced_counts(set).expect("nonempty witness").edges
}

/// Exact maximum density via parametric minimum cut.
pub fn densest_exact(g: &DynamicGraph) -> Result<OracleResult> {
    if g.m() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n() as i64;
    let mut best = denser_than(g, 0, 1).expect("an edge beats density 0");
    let mut lo = Ratio::new(edges_within(g, &best) as i64, best.len() as i64);
    let mut hi = Ratio::from_integer(n);
    let gap = Ratio::new(1, (n * (n - 1)).max(1));
    while hi - lo >= gap {
        let mid = (lo + hi) / 2;
        match denser_than(g, *mid.numer() as i128, *mid.denom() as i128) {
            Some(set) => {
                lo = Ratio::new(edges_within(g, &set) as i64, set.len() as i64);
                best = set;
            }
            None => hi = mid,
        }
    }
    let value = Ratio::new(edges_within(g, &best), best.len() as u64);
    Ok(OracleResult {
        subset: best,
        value,
        method: Method::Flow,
    })
}

fn members(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Larger value, then larger set, then lexicographically smaller set.
fn better(num: u64, size: u64, mask: u32, best: Option<(u64, u64, u32)>) -> bool {
    let Some((bn, bs, bm)) = best else {
        return true;
    };
    match (num * bs).cmp(&(bn * size)) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match size.cmp(&bs) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => members(mask) < members(bm),
        },
    }
}

fn brute<F: Fn(u32) -> u64>(g: &DynamicGraph, limit: usize, count: F) -> Result<OracleResult> {
    let n = g.n();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let mut best = None;
    for mask in 1u32..(1u32 << n) {
        let c = count(mask);
        let size = mask.count_ones() as u64;
        if better(c, size, mask, best) {
            best = Some((c, size, mask));
        }
    }
    let (c, size, mask) = best.expect("at least one subset");
    Ok(OracleResult {
        subset: members(mask),
        value: Ratio::new(c, size),
        method: Method::BruteForce,
    })
}

fn adjacency_masks(g: &DynamicGraph) -> Vec<u32> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect()
}

/// Densest subgraph by subset enumeration (`n ≤ 20`).
pub fn densest_bruteforce(g: &DynamicGraph) -> Result<OracleResult> {
    let adj = adjacency_masks(g);
    brute(g, DENSEST_BRUTE_LIMIT, |mask| {
        let twice: u32 = (0..adj.len()).filter(|v| mask >> v & 1 == 1).map(|v| (adj[v] & mask).count_ones()).sum();
        twice as u64 / 2
    })
}

/// Tri-densest subgraph by subset enumeration (`n ≤ 16`).
pub fn tridensest_bruteforce(g: &DynamicGraph) -> Result<OracleResult> {
    let mut tris = Vec::new();
    if g.n() <= TRIDENSEST_BRUTE_LIMIT {
        for (u, v) in g.edges() {
            for w in g.common_neighbors(u, v)? {
                if w > v {
                    tris.push(1u32 << u | 1 << v | 1 << w);
                }
            }
        }
    }
    brute(g, TRIDENSEST_BRUTE_LIMIT, |mask| tris.iter().filter(|&&t| t & mask == t).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::sim::sim_rng;

    fn r(a: u64, b: u64) -> Ratio<u64> {
        Ratio::new(a, b)
    }

    #[test]
    fn k5_with_pendant() {
        let mut g = generators::disjoint_union(&generators::complete(5), &generators::empty(1));
        g.add_edge(0, 5).unwrap();
        let res = densest_exact(&g).unwrap();
        assert_eq!(res.value, r(2, 1));
        assert_eq!(res.subset, vec![0, 1, 2, 3, 4]);
        assert_eq!(densest_bruteforce(&g).unwrap().subset, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn four_cycle() {
        let res = densest_exact(&generators::cycle(4)).unwrap();
        assert_eq!(res.value, r(1, 1));
        assert_eq!(res.subset, vec![0, 1, 2, 3]);
    }

    #[test]
    fn small_brute_force_cases() {
        assert_eq!(densest_bruteforce(&generators::path(2)).unwrap().value, r(1, 2));
        assert_eq!(densest_bruteforce(&generators::complete(3)).unwrap().value, r(1, 1));
        let two = generators::disjoint_union(&generators::complete(3), &generators::complete(3));
        let res = densest_bruteforce(&two).unwrap();
        assert_eq!(res.value, r(1, 1));
        assert_eq!(res.subset, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn tri_brute_force_cases() {
        assert_eq!(tridensest_bruteforce(&generators::complete(4)).unwrap().value, r(1, 1));
        assert_eq!(tridensest_bruteforce(&generators::complete(3)).unwrap().value, r(1, 3));
        let g = generators::disjoint_union(&generators::complete(4), &generators::complete(3));
        let res = tridensest_bruteforce(&g).unwrap();
        assert_eq!(res.value, r(1, 1));
        assert_eq!(res.subset, vec![0, 1, 2, 3]);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(densest_bruteforce(&generators::empty(21)), Err(Error::TooLarge { .. })));
        assert!(matches!(tridensest_bruteforce(&generators::empty(17)), Err(Error::TooLarge { .. })));
        assert_eq!(densest_exact(&generators::empty(3)), Err(Error::NoEdges));
    }

    #[test]
    fn flow_matches_brute_force() {
        let mut rng = sim_rng(31);
        for i in 0..100 {
            let n = 2 + i % 15;
            let g = generators::gnp(n, 0.1 + 0.6 * (i % 7) as f64 / 7.0, &mut rng);
            if g.m() == 0 {
                continue;
            }
            let exact = densest_exact(&g).unwrap();
            let brute = densest_bruteforce(&g).unwrap();
            assert_eq!(exact.value, brute.value, "graph {i}");
            assert_eq!(g.induced_counts(&exact.subset).unwrap().edges * *exact.value.denom(), *exact.value.numer() * exact.subset.len() as u64);
        }
    }

    #[test]
    fn decision_is_monotone() {
        let g = generators::gnp(14, 0.4, &mut sim_rng(3));
        let best = densest_exact(&g).unwrap().value;
        let mut seen_infeasible = false;
        for k in 0..40i128 {
            let feasible = denser_than(&g, k, 8).is_some();
            assert!(!(feasible && seen_infeasible));
            seen_infeasible |= !feasible;
            assert_eq!(feasible, Ratio::new(k as u64, 8) < best);
        }
    }
}
