//! The wedge picking evolution process.
//!
//! Each step flips a fair coin. Rule (i) draws a uniformly random wedge and,
//! if it is open, closes it with probability `p`. Rule (ii) draws a uniformly
//! random unordered pair and adds it with probability `r` when disconnected,
//! or removes it with probability `q` when connected. A rule that has nothing
//! to act on (no wedges, fewer than two vertices) is a no-op.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, Vertex};
use crate::stream::{Op, TimedUpdate};

/// Generator behind every seeded run. Its identity is part of the recorded
/// trace format: changing it changes every trace.
pub type SimRng = ChaCha8Rng;
pub const RNG_ID: &str = "chacha8/rand_chacha-0.3";

pub fn sim_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for sub-run `stream` of a seed (Monte-Carlo trials,
/// per-seed sweeps).
pub fn sim_rng_stream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl ModelParams {
    pub fn new(p: f64, q: f64, r: f64) -> Result<Self> {
        for (name, x) in [("p", p), ("q", q), ("r", r)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidParameter(format!("{name} = {x} not in [0, 1]")));
            }
        }
        Ok(ModelParams { p, q, r })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Add,
    Remove,
    Noop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// Rule (i): wedge closure.
    Wedge,
    /// Rule (ii): uniform pair.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimEvent {
    pub step: u64,
    pub kind: EventKind,
    pub pair: Option<(Vertex, Vertex)>,
    pub rule: Rule,
}

impl SimEvent {
    pub fn as_update(&self) -> Option<TimedUpdate> {
        let (u, v) = self.pair?;
        let op = match self.kind {
            EventKind::Add => Op::Add,
            EventKind::Remove => Op::Remove,
            EventKind::Noop => return None,
        };
        Some(TimedUpdate { t: self.step, u, v, op })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wedge {
    pub mid: Vertex,
    pub a: Vertex,
    pub b: Vertex,
}

/// Draws a wedge uniformly: the midpoint with probability proportional to
/// `C(d(v), 2)`, then two distinct endpoints uniformly from its neighbors.
pub fn sample_wedge<R: Rng + ?Sized>(g: &DynamicGraph, rng: &mut R) -> Result<Wedge> {
    let weights = g.wedge_weights();
    if weights.total() == 0 {
        return Err(Error::NoWedges);
    }
    let mid = weights.find(rng.gen_range(0..weights.total())) as Vertex;
    let ns = g.neighbors(mid);
    let d = ns.len();
    let i = rng.gen_range(0..d);
    let mut j = rng.gen_range(0..d - 1);
    if j >= i {
        j += 1;
    }
    Ok(Wedge {
        mid,
        a: ns[i],
        b: ns[j],
    })
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Performs one model step at time `step`, mutating `g`.
pub fn step<R: Rng + ?Sized>(g: &mut DynamicGraph, params: &ModelParams, rng: &mut R, step: u64) -> SimEvent {
    let noop = |rule| SimEvent {
        step,
        kind: EventKind::Noop,
        pair: None,
        rule,
    };
    if rng.gen_bool(0.5) {
        let Ok(w) = sample_wedge(g, rng) else {
            return noop(Rule::Wedge);
        };
        if g.has_edge(w.a, w.b) || !rng.gen_bool(params.p) {
            return noop(Rule::Wedge);
        }
        g.add_edge(w.a, w.b).expect("open wedge endpoints are disconnected");
        SimEvent {
            step,
            kind: EventKind::Add,
            pair: Some(ordered(w.a, w.b)),
            rule: Rule::Wedge,
        }
    } else {
        let n = g.n() as Vertex;
        if n < 2 {
            return noop(Rule::Uniform);
        }
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let (kind, ok) = if g.has_edge(u, v) {
            (EventKind::Remove, rng.gen_bool(params.q))
        } else {
            (EventKind::Add, rng.gen_bool(params.r))
        };
        if !ok {
            return noop(Rule::Uniform);
        }
        match kind {
            EventKind::Add => g.add_edge(u, v).expect("pair is disconnected"),
            _ => g.remove_edge(u, v).expect("pair is connected"),
        };
        SimEvent {
            step,
            kind,
            pair: Some(ordered(u, v)),
            rule: Rule::Uniform,
        }
    }
}

/// When a trace stops. At least one bound must be set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StopCondition {
    pub max_steps: Option<u64>,
    pub max_additions: Option<u64>,
}

impl StopCondition {
    pub fn steps(n: u64) -> Self {
        StopCondition {
            max_steps: Some(n),
            max_additions: None,
        }
    }

    pub fn additions(n: u64) -> Self {
        StopCondition {
            max_steps: None,
            max_additions: Some(n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_steps.is_none() && self.max_additions.is_none() {
            return Err(Error::InvalidParameter("stop condition needs a step or addition bound".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    /// Non-noop events in step order.
    pub events: Vec<SimEvent>,
    /// Steps taken, noops included.
    pub steps: u64,
}

impl Trace {
    pub fn updates(&self) -> Vec<TimedUpdate> {
        self.events.iter().filter_map(SimEvent::as_update).collect()
    }

    pub fn additions(&self) -> usize {
        self.events.iter().filter(|e| e.kind == EventKind::Add).count()
    }
}

/// Runs steps `1, 2, ...` until the stop condition is met, mutating `g`.
pub fn run_trace<R: Rng + ?Sized>(
    g: &mut DynamicGraph,
    params: &ModelParams,
    rng: &mut R,
    stop: StopCondition,
) -> Result<Trace> {
    stop.validate()?;
    let mut trace = Trace::default();
    let mut added = 0u64;
    loop {
        if stop.max_steps.is_some_and(|s| trace.steps >= s) || stop.max_additions.is_some_and(|a| added >= a) {
            break;
        }
        trace.steps += 1;
        let ev = step(g, params, rng, trace.steps);
        match ev.kind {
            EventKind::Noop => {}
            EventKind::Add => {
                added += 1;
                trace.events.push(ev);
            }
            EventKind::Remove => trace.events.push(ev),
        }
    }
    Ok(trace)
}

/// Closed-form per-step probability that the disconnected pair `(u, v)`
/// becomes connected: `0.5 (p d(u,v)/Γ + r / C(n, 2))`.
pub fn connect_probability(g: &DynamicGraph, params: &ModelParams, u: Vertex, v: Vertex) -> Result<f64> {
    let pairs = crate::graph::choose2(g.n() as u64) as f64;
    let wedge_term = if g.wedges() == 0 {
        0.0
    } else {
        params.p * g.common_degree(u, v)? as f64 / g.wedges() as f64
    };
    Ok(0.5 * (wedge_term + params.r / pairs))
}
