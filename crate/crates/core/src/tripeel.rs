//! Tri-degree peeling for approximate tri-densest subgraphs (most triangles
//! per vertex). Shares the level engine of [`crate::peel`]; a support of `v`
//! is a triangle `(v, a, b)` and carries level `min(level(a), level(b))`.

use crate::graph::{DynamicGraph, Vertex};
use crate::peel::{PeelOutcome, Peeler, Support, CORE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangles;

/// Calls `f(a, b)` for every triangle `(v, a, b)` with `a < b`.
fn for_each_triangle(g: &DynamicGraph, v: Vertex, mut f: impl FnMut(Vertex, Vertex)) {
    let ns = g.neighbors(v);
    for (i, &a) in ns.iter().enumerate() {
        for &b in ns.iter().skip(i + 1) {
            if g.has_edge(a, b) {
                if a < b {
                    f(a, b)
                } else {
                    f(b, a)
                }
            }
        }
    }
}

impl Support for Triangles {
    const SCALE: f64 = 3.0;
    const ONE_SUPPORT_PER_NEIGHBOR: bool = false;

    fn supports(g: &DynamicGraph, level: &[u32], v: Vertex, out: &mut Vec<u32>) {
        for_each_triangle(g, v, |a, b| out.push(level[a as usize].min(level[b as usize])));
    }

    fn touched_by(g: &DynamicGraph, u: Vertex, v: Vertex, out: &mut Vec<Vertex>) {
        out.push(u);
        out.push(v);
        out.extend(g.common_neighbors(u, v).expect("update endpoints are valid"));
    }

    fn core_count(g: &DynamicGraph, level: &[u32], _: u64) -> u64 {
        let mut count = 0;
        for v in g.vertices().filter(|&v| level[v as usize] == CORE) {
            for_each_triangle(g, v, |a, b| {
                if v < a && level[a as usize] == CORE && level[b as usize] == CORE {
                    count += 1;
                }
            });
        }
        count
    }

    fn static_levels(g: &DynamicGraph, mut alive: Vec<bool>, need: usize) -> Vec<u32> {
        let n = g.n();
        let mut tri = vec![0usize; n];
        for v in 0..n as Vertex {
            if alive[v as usize] {
                for_each_triangle(g, v, |a, b| {
                    if alive[a as usize] && alive[b as usize] {
                        tri[v as usize] += 1;
                    }
                });
            }
        }
        let mut level = vec![0u32; n];
        let mut round: Vec<Vertex> = (0..n as Vertex).filter(|&v| alive[v as usize] && tri[v as usize] < need).collect();
        let mut r = 0u32;
        while !round.is_empty() {
            for &v in &round {
                level[v as usize] = r;
            }
            let mut next = Vec::new();
            // Removing vertices one at a time charges each triangle once.
            for &v in &round {
                alive[v as usize] = false;
                for_each_triangle(g, v, |a, b| {
                    if alive[a as usize] && alive[b as usize] {
                        for w in [a, b] {
                            let before = tri[w as usize];
                            tri[w as usize] -= 1;
                            if before == need {
                                next.push(w);
                            }
                        }
                    }
                });
            }
            next.retain(|&w| alive[w as usize]);
            next.sort_unstable();
            next.dedup();
            round = next;
            r += 1;
        }
        for v in 0..n {
            if alive[v] {
                level[v] = CORE;
            }
        }
        level
    }
}

pub type TriPeeler = Peeler<Triangles>;

/// Largest grid guess whose tri-degree peel leaves a nonempty core. The
/// candidate's tri-density is at least `α*/(3(1+ε))`.
pub fn tri_grid_search(g: &DynamicGraph, eps: f64) -> TriPeeler {
    TriPeeler::build(g, eps)
}

/// Peels the subgraph induced by `start` at tri-degree threshold `3α(1+ε)`.
pub fn static_tri_peel(g: &DynamicGraph, start: Option<&[Vertex]>, alpha: f64, eps: f64) -> PeelOutcome {
    crate::peel::peel_with::<Triangles>(g, start, 3.0 * alpha * (1.0 + eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::sim::{run_trace, sim_rng, ModelParams, StopCondition};
    use crate::stream::TimedUpdate;

    fn triangle_pendant() -> DynamicGraph {
        let mut g = generators::disjoint_union(&generators::complete(3), &generators::empty(1));
        g.add_edge(2, 3).unwrap();
        g
    }

    #[test]
    fn k4_survives() {
        let out = static_tri_peel(&generators::complete(4), None, 0.5, 0.0);
        assert_eq!(out.core, vec![0, 1, 2, 3]);
    }

    #[test]
    fn pendant_is_peeled() {
        // Triangle corners have tri-degree 1, so the threshold must sit below 1.
        let out = static_tri_peel(&triangle_pendant(), None, 0.3, 0.0);
        assert_eq!(out.core, vec![0, 1, 2]);
        assert_eq!(out.level[3], Some(0));
        assert!(static_tri_peel(&triangle_pendant(), None, 0.5, 0.0).core.is_empty());
    }

    #[test]
    fn survivors_meet_threshold() {
        let g = generators::gnp(12, 0.5, &mut sim_rng(4));
        let out = static_tri_peel(&g, None, 1.0, 0.1);
        if !out.core.is_empty() {
            let set = &out.core;
            for &v in set {
                let mut d = 0;
                for_each_triangle(&g, v, |a, b| {
                    if set.contains(&a) && set.contains(&b) {
                        d += 1;
                    }
                });
                assert!(d as f64 >= 3.3);
            }
        }
    }

    #[test]
    fn grid_finds_k4() {
        let g = generators::disjoint_union(&generators::complete(4), &generators::path(5));
        let p = TriPeeler::build(&g, 0.1);
        assert_eq!(p.candidate(), vec![0, 1, 2, 3]);
        assert_eq!(p.candidate_density(&g), 1.0);
    }

    #[test]
    fn triangle_free_has_no_candidate() {
        let g = generators::cycle(6);
        let p = TriPeeler::build(&g, 0.1);
        assert_eq!(p.guess(), 0.0);
        assert!(p.candidate().is_empty());
    }

    #[test]
    fn candidate_value_matches_induced_counts() {
        let g = generators::gnp(20, 0.35, &mut sim_rng(8));
        let p = TriPeeler::build(&g, 0.1);
        let (_, xi) = g.induced_density(&p.candidate()).unwrap();
        assert!((p.candidate_density(&g) - xi).abs() < 1e-12);
    }

    #[test]
    fn deleting_pendant_edges_keeps_candidate() {
        let mut g = generators::disjoint_union(&generators::complete(5), &generators::star(3));
        let mut p = TriPeeler::build(&g, 0.1);
        let before = p.candidate();
        let batch = [TimedUpdate::remove(1, 5, 6), TimedUpdate::remove(2, 5, 7)];
        for u in &batch {
            u.apply(&mut g).unwrap();
        }
        assert!(!p.apply_batch(&g, &batch));
        assert_eq!(p.candidate(), before);
        assert_eq!(p.rebuilds(), 0);
    }

    #[test]
    fn repair_matches_rebuild_on_random_batches() {
        let mut g = generators::gnm(40, 150, &mut sim_rng(21));
        let mut p = TriPeeler::build(&g, 0.2);
        let params = ModelParams::new(0.8, 0.3, 0.05).unwrap();
        let mut rng = sim_rng(22);
        for _ in 0..30 {
            let trace = run_trace(&mut g, &params, &mut rng, StopCondition::steps(30)).unwrap();
            p.apply_batch(&g, &trace.updates());
            assert!(p.audit(&g).is_empty(), "{:?}", p.audit(&g));
        }
    }
}
