//! Rest-and-run: learn the evolution parameters once, then let the stream
//! run for a computed number of steps, absorbing edge updates without
//! touching the peeling layers, and repair the layers once per batch.
//!
//! Batches are cut on the stream's timestamps: a round at start time `t0`
//! with window `Δ` absorbs every event with `t ≤ t0 + Δ`. Timestamps of
//! synthetic traces are model steps.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DynamicGraph;
use crate::learn::{self, LearnConfig, LearnedParams};
use crate::peel::{Edges, NetChange, Peeler, Support};
use crate::tripeel::Triangles;
use crate::schedule;
use crate::sim::ModelParams;
use crate::stream::TimedUpdate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum Objective {
    Densest,
    TriDensest,
}

impl Objective {
    pub fn column(self) -> &'static str {
        match self {
            Objective::Densest => "density",
            Objective::TriDensest => "tridensity",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub eps: f64,
    /// Minimum regression `R²` for batching; below it every event is processed.
    pub accept_r2: f64,
    pub max_batch: u64,
    pub learn: LearnConfig,
    /// Use these parameters instead of learning them.
    pub params: Option<ModelParams>,
    /// Time of the initial graph; the first round starts here.
    pub start_time: u64,
    /// Report spacing, in events, when falling back to per-event processing.
    pub fallback_report_every: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            eps: 0.1,
            accept_r2: 0.6,
            max_batch: schedule::DEFAULT_MAX_BATCH,
            learn: LearnConfig::default(),
            params: None,
            start_time: 0,
            fallback_report_every: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub round: usize,
    /// Batch length in model steps (`0` for per-event processing).
    pub delta: u64,
    /// Events absorbed this round.
    pub events: usize,
    /// Stream position after the round.
    pub cursor: usize,
    /// Timestamp of the last absorbed event.
    pub time: u64,
    pub density: f64,
    pub guess: f64,
    pub baseline_density: Option<f64>,
    /// Regrids so far.
    pub rebuilds: u64,
    pub rebuilt: bool,
    /// Engine time this round.
    pub wall_time_us: u128,
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOutcome {
    pub reports: Vec<DensityReport>,
    pub learned: Option<LearnedParams>,
    pub params: Option<ModelParams>,
    pub fallback: bool,
    pub total_time_us: u128,
}

impl RunOutcome {
    pub fn final_density(&self) -> f64 {
        self.reports.last().map_or(0.0, |r| r.density)
    }
}

fn report_row(r: &DensityReport, timings: bool) -> Vec<String> {
    vec![
        r.round.to_string(),
        r.delta.to_string(),
        r.events.to_string(),
        r.cursor.to_string(),
        format!("{:.6}", r.density),
        r.baseline_density.map_or(String::new(), |b| format!("{b:.6}")),
        r.rebuilds.to_string(),
        if timings { r.wall_time_us.to_string() } else { String::new() },
        r.fallback.to_string(),
    ]
}

/// CSV with columns `round, delta, events, cursor, <density>, baseline_density,
/// rebuilds, wall_time_us, fallback`. Without `timings` the time column is
/// left blank so reruns give identical bytes.
pub fn write_reports<W: Write>(reports: &[DensityReport], objective: Objective, timings: bool, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record([
        "round",
        "delta",
        "events",
        "cursor",
        objective.column(),
        "baseline_density",
        "rebuilds",
        "wall_time_us",
        "fallback",
    ])
    .map_err(io)?;
    for r in reports {
        w.write_record(report_row(r, timings)).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Called after every round with the current graph and report; its value
/// becomes the report's `baseline_density`.
pub type Observer<'a> = dyn FnMut(&DynamicGraph, &DensityReport) -> Option<f64> + 'a;

struct Engine<S: Support> {
    g: DynamicGraph,
    peeler: Peeler<S>,
    reports: Vec<DensityReport>,
    total: u128,
}

impl<S: Support> Engine<S> {
    fn new(g0: &DynamicGraph, eps: f64) -> Self {
        let start = Instant::now();
        let peeler = Peeler::build(g0, eps);
        Engine {
            g: g0.clone(),
            peeler,
            reports: Vec::new(),
            total: start.elapsed().as_micros(),
        }
    }

    fn absorb(&mut self, batch: &[TimedUpdate]) -> Result<bool> {
        for u in batch {
            u.apply(&mut self.g)?;
        }
        let net = NetChange::of(&self.g, batch);
        Ok(self.peeler.apply_net(&self.g, &net))
    }

    #[allow(clippy::too_many_arguments)]
    fn emit(&mut self, delta: u64, events: usize, cursor: usize, time: u64, rebuilt: bool, us: u128, fallback: bool, obs: &mut Observer) {
        self.total += us;
        let mut r = DensityReport {
            round: self.reports.len(),
            delta,
            events,
            cursor,
            time,
            density: self.peeler.candidate_density(&self.g),
            guess: self.peeler.guess(),
            baseline_density: None,
            rebuilds: self.peeler.rebuilds(),
            rebuilt,
            wall_time_us: us,
            fallback,
        };
        r.baseline_density = obs(&self.g, &r);
        self.reports.push(r);
    }

    fn per_event(&mut self, events: &[TimedUpdate], every: usize, fallback: bool, obs: &mut Observer) -> Result<()> {
        let every = every.max(1);
        let mut since = 0;
        let mut us = 0;
        let mut rebuilt = false;
        for (i, ev) in events.iter().enumerate() {
            let start = Instant::now();
            rebuilt |= self.absorb(std::slice::from_ref(ev))?;
            us += start.elapsed().as_micros();
            since += 1;
            if since == every || i + 1 == events.len() {
                self.emit(0, since, i + 1, ev.t, rebuilt, us, fallback, obs);
                since = 0;
                us = 0;
                rebuilt = false;
            }
        }
        Ok(())
    }
}

/// Which rest window bounds the growth of a support kind.
trait Scheduled: Support {
    fn rest_window(g: &DynamicGraph, params: &ModelParams, guess: f64, eps: f64, max_batch: u64) -> Result<schedule::RestWindow>;
}

impl Scheduled for Edges {
    fn rest_window(g: &DynamicGraph, params: &ModelParams, guess: f64, eps: f64, max_batch: u64) -> Result<schedule::RestWindow> {
        schedule::rest_window(g, params, guess, eps, max_batch)
    }
}

impl Scheduled for Triangles {
    fn rest_window(g: &DynamicGraph, params: &ModelParams, guess: f64, eps: f64, max_batch: u64) -> Result<schedule::RestWindow> {
        schedule::tri_rest_window(g, params, guess, eps, max_batch)
    }
}

fn window_for<S: Scheduled>(engine: &Engine<S>, params: &ModelParams, cfg: &RunConfig) -> Result<u64> {
    // Before any candidate exists, schedule as if at the bottom of the grid.
    let floor = 1.0 / (S::SCALE * (1.0 + cfg.eps));
    let guess = engine.peeler.guess().max(floor);
    Ok(S::rest_window(&engine.g, params, guess, cfg.eps, cfg.max_batch)?.delta)
}

fn run<S: Scheduled>(g0: &DynamicGraph, events: &[TimedUpdate], cfg: &RunConfig, obs: &mut Observer) -> Result<RunOutcome> {
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps = {} must be positive", cfg.eps)));
    }
    let mut engine = Engine::<S>::new(g0, cfg.eps);
    let t0 = cfg.start_time;
    engine.emit(0, 0, 0, t0, false, 0, false, obs);

    let learning = Instant::now();
    let (learned, params) = match cfg.params {
        Some(p) => (None, Some(p)),
        None => match learn::learn(g0, events, t0, &cfg.learn) {
            Ok(l) if l.params.r2 >= cfg.accept_r2 => (Some(l.params), Some(l.params.model())),
            Ok(l) => (Some(l.params), None),
            Err(_) => (None, None),
        },
    };
    engine.total += learning.elapsed().as_micros();
    let Some(params) = params else {
        engine.per_event(events, cfg.fallback_report_every, true, obs)?;
        return Ok(RunOutcome {
            total_time_us: engine.total,
            reports: engine.reports,
            learned,
            params: None,
            fallback: true,
        });
    };

    let mut t0 = t0;
    let mut i = 0;
    while i < events.len() {
        let start = Instant::now();
        let delta = window_for(&engine, &params, cfg)?;
        if events[i].t > t0 + delta {
            // Skip whole empty windows.
            t0 += (events[i].t - t0 - 1) / delta * delta;
        }
        let end = t0 + delta;
        let j = i + events[i..].partition_point(|e| e.t <= end);
        let rebuilt = engine.absorb(&events[i..j])?;
        let us = start.elapsed().as_micros();
        engine.emit(delta, j - i, j, events[j - 1].t, rebuilt, us, false, obs);
        i = j;
        t0 = end;
    }
    Ok(RunOutcome {
        total_time_us: engine.total,
        reports: engine.reports,
        learned,
        params: Some(params),
        fallback: false,
    })
}

/// Batched maintenance of an approximate densest subgraph.
pub fn rest_and_run(g0: &DynamicGraph, events: &[TimedUpdate], cfg: &RunConfig, obs: &mut Observer) -> Result<RunOutcome> {
    run::<Edges>(g0, events, cfg, obs)
}

/// Batched maintenance of an approximate tri-densest subgraph.
pub fn rest_and_run_tri(g0: &DynamicGraph, events: &[TimedUpdate], cfg: &RunConfig, obs: &mut Observer) -> Result<RunOutcome> {
    run::<Triangles>(g0, events, cfg, obs)
}

fn baseline<S: Support>(g0: &DynamicGraph, events: &[TimedUpdate], eps: f64, every: usize, obs: &mut Observer) -> Result<RunOutcome> {
    let mut engine = Engine::<S>::new(g0, eps);
    engine.emit(0, 0, 0, 0, false, 0, false, obs);
    engine.per_event(events, every, false, obs)?;
    Ok(RunOutcome {
        total_time_us: engine.total,
        reports: engine.reports,
        learned: None,
        params: None,
        fallback: false,
    })
}

/// Repairs the layers after every single event; reports every `every` events.
pub fn per_event(g0: &DynamicGraph, events: &[TimedUpdate], objective: Objective, eps: f64, every: usize, obs: &mut Observer) -> Result<RunOutcome> {
    match objective {
        Objective::Densest => baseline::<Edges>(g0, events, eps, every, obs),
        Objective::TriDensest => baseline::<Triangles>(g0, events, eps, every, obs),
    }
}

pub fn run_objective(
    objective: Objective,
    g0: &DynamicGraph,
    events: &[TimedUpdate],
    cfg: &RunConfig,
    obs: &mut Observer,
) -> Result<RunOutcome> {
    match objective {
        Objective::Densest => rest_and_run(g0, events, cfg, obs),
        Objective::TriDensest => rest_and_run_tri(g0, events, cfg, obs),
    }
}

/// No baseline column.
pub fn no_observer(_: &DynamicGraph, _: &DensityReport) -> Option<f64> {
    None
}
