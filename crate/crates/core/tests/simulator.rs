use std::collections::HashMap;

use triad::generators;
use triad::graph::{choose2, DynamicGraph, Vertex};
use triad::sim::{connect_probability, run_trace, sample_wedge, sim_rng, step, EventKind, ModelParams, Rule, StopCondition};

fn small_graph() -> DynamicGraph {
    DynamicGraph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (1, 4), (4, 5)]).unwrap()
}

#[test]
fn wedges_are_drawn_uniformly() {
    let g = small_graph();
    let mut counts: HashMap<(Vertex, Vertex, Vertex), u64> = HashMap::new();
    for v in g.vertices() {
        let ns = g.neighbors(v);
        for i in 0..ns.len() {
            for j in i + 1..ns.len() {
                counts.insert((v, ns[i].min(ns[j]), ns[i].max(ns[j])), 0);
            }
        }
    }
    assert_eq!(counts.len() as u64, g.wedges());
    let draws = 200_000u64;
    let mut rng = sim_rng(11);
    for _ in 0..draws {
        let w = sample_wedge(&g, &mut rng).unwrap();
        *counts.get_mut(&(w.mid, w.a.min(w.b), w.a.max(w.b))).expect("a real wedge") += 1;
    }
    let expected = draws as f64 / counts.len() as f64;
    let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let df = (counts.len() - 1) as f64;
    // Far tail of the chi-square distribution: mean df, variance 2 df.
    assert!(chi2 < df + 5.0 * (2.0 * df).sqrt(), "chi2 = {chi2}, df = {df}");
}

#[test]
fn single_step_connection_frequencies() {
    let g = small_graph();
    let params = ModelParams::new(0.75, 0.2, 0.3).unwrap();
    let trials = 200_000u64;
    let mut hits: HashMap<(Vertex, Vertex), u64> = HashMap::new();
    let mut work = g.clone();
    let mut rng = sim_rng(17);
    for _ in 0..trials {
        let ev = step(&mut work, &params, &mut rng, 1);
        if let Some((u, v)) = ev.pair {
            match ev.kind {
                EventKind::Add => {
                    *hits.entry((u, v)).or_default() += 1;
                    work.remove_edge(u, v).unwrap();
                }
                EventKind::Remove => {
                    work.add_edge(u, v).unwrap();
                }
                EventKind::Noop => {}
            }
        }
    }
    for u in 0..6 {
        for v in u + 1..6 {
            if g.has_edge(u, v) {
                continue;
            }
            let prob = connect_probability(&g, &params, u, v).unwrap();
            let freq = *hits.get(&(u, v)).unwrap_or(&0) as f64 / trials as f64;
            let sd = (prob * (1.0 - prob) / trials as f64).sqrt();
            assert!((freq - prob).abs() <= 3.0 * sd, "pair ({u}, {v}): {freq} vs {prob}");
        }
    }
}

#[test]
fn closure_only_model_never_removes() {
    let mut g = generators::gnm(100, 300, &mut sim_rng(1));
    let params = ModelParams::new(1.0, 0.0, 0.0).unwrap();
    let trace = run_trace(&mut g, &params, &mut sim_rng(2), StopCondition::additions(500)).unwrap();
    assert_eq!(trace.additions(), 500);
    assert!(trace.events.iter().all(|e| e.kind == EventKind::Add && e.rule == Rule::Wedge));
    assert_eq!(g.m(), 800);
}

#[test]
fn uniform_rule_alone_adds_at_rate_r() {
    let n = 40usize;
    let mut g = DynamicGraph::new(n);
    let params = ModelParams::new(0.0, 0.0, 0.5).unwrap();
    let steps = 400u64;
    let trace = run_trace(&mut g, &params, &mut sim_rng(8), StopCondition::steps(steps)).unwrap();
    // Each step adds with probability 0.5 · r · (1 − m/C(n,2)); m stays tiny here.
    let expected = steps as f64 * 0.25 * (1.0 - 100.0 / choose2(n as u64) as f64);
    let got = trace.additions() as f64;
    assert!((got - expected).abs() < 4.0 * expected.sqrt(), "{got} vs {expected}");
    assert!(trace.events.iter().all(|e| e.rule == Rule::Uniform));
}

#[test]
fn traces_are_deterministic_per_seed() {
    let params = ModelParams::new(0.75, 0.01, 0.01).unwrap();
    let run = |seed| {
        let mut g = generators::gnm(100, 400, &mut sim_rng(0));
        run_trace(&mut g, &params, &mut sim_rng(seed), StopCondition::steps(3000)).unwrap().updates()
    };
    assert_eq!(run(4), run(4));
    assert_ne!(run(4), run(5));
}
