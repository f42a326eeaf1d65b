//! Experiment configuration and the pipelines behind each CLI mode.
//!
//! A config is a flat `key = value` file; `#` starts a comment. Overrides use
//! the same `key=value` form and are applied after the file. Unknown keys and
//! out-of-range values are rejected before any work starts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::generators;
use crate::graph::DynamicGraph;
use crate::ingest::{self, Split};
use crate::learn::{self, LearnConfig};
use crate::oracle::{self, OracleResult};
use crate::report::{self, CsvRecord};
use crate::runner::{self, DensityReport, Objective, RunConfig, RunOutcome};
use crate::schedule::DEFAULT_MAX_BATCH;
use crate::sim::{run_trace, sim_rng, ModelParams, StopCondition};
use crate::stream::{digest, TimedUpdate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ingest,
    Simulate,
    Learn,
    Densest,
    TriDensest,
    Oracle,
    Compare,
    Bench,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ingest" => Mode::Ingest,
            "simulate" => Mode::Simulate,
            "learn" => Mode::Learn,
            "densest" => Mode::Densest,
            "tridensest" => Mode::TriDensest,
            "oracle" => Mode::Oracle,
            "compare" => Mode::Compare,
            "bench" => Mode::Bench,
            _ => return Err(Error::Config(format!("unknown mode `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "mode",
    "input",
    "output",
    "split",
    "format",
    "objective",
    "eps",
    "c",
    "p",
    "q",
    "r",
    "seed",
    "max_batch",
    "n",
    "m",
    "steps",
    "additions",
    "learn_eps",
    "learn_buckets",
    "every",
    "baseline",
    "timings",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// Event files; several only for `bench`. Empty means a synthetic stream.
    pub input: Vec<PathBuf>,
    /// Artifact path; standard output when unset.
    pub output: Option<PathBuf>,
    pub split: Split,
    pub format: Format,
    /// Objective for `compare` and `bench`.
    pub objective: Objective,
    pub eps: f64,
    /// Minimum `R²` to trust the learned model.
    pub c: f64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub seed: u64,
    pub max_batch: u64,
    /// Synthetic seed graph size.
    pub n: usize,
    pub m: u64,
    /// Synthetic trace length: model steps, or additions when `steps` is unset.
    pub steps: Option<u64>,
    pub additions: u64,
    pub learn_eps: f64,
    pub learn_buckets: usize,
    /// Report spacing of per-event processing.
    pub every: usize,
    /// Whether `bench` also times per-event processing.
    pub baseline: bool,
    /// Whether reports carry wall times.
    pub timings: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            mode: Mode::Densest,
            input: Vec::new(),
            output: None,
            split: Split::Time(0),
            format: Format::Csv,
            objective: Objective::Densest,
            eps: 0.1,
            c: 0.6,
            p: None,
            q: None,
            r: None,
            seed: 0,
            max_batch: DEFAULT_MAX_BATCH,
            n: 1000,
            m: 10_000,
            steps: None,
            additions: 10_000,
            learn_eps: 0.2,
            learn_buckets: 2,
            every: 1000,
            baseline: true,
            timings: true,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("{key}: cannot parse `{value}`")))
}

fn unit(key: &str, x: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Error::Config(format!("{key} = {x} must lie in [0, 1]")))
    }
}

impl ExperimentConfig {
    pub fn new(mode: Mode) -> Self {
        ExperimentConfig {
            mode,
            ..Default::default()
        }
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "mode" => self.mode = value.parse()?,
            "input" => self.input = value.split(',').filter(|s| !s.is_empty()).map(PathBuf::from).collect(),
            "output" => self.output = (!value.is_empty()).then(|| PathBuf::from(value)),
            "split" => self.split = value.parse()?,
            "format" => {
                self.format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(Error::Config(format!("format `{value}`: expected csv or json"))),
                }
            }
            "objective" => {
                self.objective = match value {
                    "densest" => Objective::Densest,
                    "tridensest" => Objective::TriDensest,
                    _ => return Err(Error::Config(format!("objective `{value}`: expected densest or tridensest"))),
                }
            }
            "eps" => self.eps = parse(key, value)?,
            "c" => self.c = parse(key, value)?,
            "p" => self.p = Some(parse(key, value)?),
            "q" => self.q = Some(parse(key, value)?),
            "r" => self.r = Some(parse(key, value)?),
            "seed" => self.seed = parse(key, value)?,
            "max_batch" => self.max_batch = parse(key, value)?,
            "n" => self.n = parse(key, value)?,
            "m" => self.m = parse(key, value)?,
            "steps" => self.steps = Some(parse(key, value)?),
            "additions" => self.additions = parse(key, value)?,
            "learn_eps" => self.learn_eps = parse(key, value)?,
            "learn_buckets" => self.learn_buckets = parse(key, value)?,
            "every" => self.every = parse(key, value)?,
            "baseline" => self.baseline = parse(key, value)?,
            "timings" => self.timings = parse(key, value)?,
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies `key=value` items in order.
    pub fn apply<'a>(&mut self, items: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for item in items {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("`{item}` is not key=value")))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Reads a config file on top of the defaults for `mode`.
    pub fn from_text(mode: Mode, text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::new(mode);
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            cfg.apply([line]).map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::Config(format!("eps = {} must be positive", self.eps)));
        }
        unit("c", self.c)?;
        for (k, x) in [("p", self.p), ("q", self.q), ("r", self.r)] {
            if let Some(x) = x {
                unit(k, x)?;
            }
        }
        if !(self.learn_eps > 0.0) {
            return Err(Error::Config(format!("learn_eps = {} must be positive", self.learn_eps)));
        }
        if self.max_batch == 0 || self.every == 0 {
            return Err(Error::Config("max_batch and every must be positive".into()));
        }
        if self.input.len() > 1 && self.mode != Mode::Bench {
            return Err(Error::Config("several inputs are only accepted by bench".into()));
        }
        if self.mode == Mode::Ingest && self.input.is_empty() {
            return Err(Error::Config("ingest needs an input".into()));
        }
        Ok(())
    }

    /// Explicit model parameters, if any of `p, q, r` was given.
    pub fn params_override(&self) -> Result<Option<ModelParams>> {
        if self.p.is_none() && self.q.is_none() && self.r.is_none() {
            return Ok(None);
        }
        self.sim_params().map(Some)
    }

    /// Parameters for synthetic traces; unset values default to
    /// `p = 0.75, q = r = 0.001`.
    pub fn sim_params(&self) -> Result<ModelParams> {
        ModelParams::new(self.p.unwrap_or(0.75), self.q.unwrap_or(0.001), self.r.unwrap_or(0.001))
    }

    pub fn learn_config(&self) -> LearnConfig {
        let mut cfg = LearnConfig::default();
        cfg.window.eps = self.learn_eps;
        cfg.window.monitored_buckets = self.learn_buckets;
        cfg.accept_r2 = self.c;
        cfg
    }

    pub fn run_config(&self, start_time: u64) -> Result<RunConfig> {
        Ok(RunConfig {
            eps: self.eps,
            accept_r2: self.c,
            max_batch: self.max_batch,
            learn: self.learn_config(),
            params: self.params_override()?,
            start_time,
            fallback_report_every: self.every,
        })
    }

    fn stop(&self) -> StopCondition {
        match self.steps {
            Some(s) => StopCondition::steps(s),
            None => StopCondition::additions(self.additions),
        }
    }
}

/// An initial graph and the events that follow it.
#[derive(Debug, Clone)]
pub struct Stream {
    pub name: String,
    pub g0: DynamicGraph,
    pub events: Vec<TimedUpdate>,
    pub start_time: u64,
}

/// A seeded `G(n, m)` graph followed by a model trace.
pub fn synthetic_stream(cfg: &ExperimentConfig) -> Result<Stream> {
    let params = cfg.sim_params()?;
    let mut rng = sim_rng(cfg.seed);
    let max_pairs = cfg.n as u64 * (cfg.n as u64).saturating_sub(1) / 2;
    if cfg.m > max_pairs {
        return Err(Error::Config(format!("m = {} exceeds C(n, 2) = {max_pairs}", cfg.m)));
    }
    let g0 = generators::gnm(cfg.n, cfg.m, &mut rng);
    let mut g = g0.clone();
    let trace = run_trace(&mut g, &params, &mut rng, cfg.stop())?;
    Ok(Stream {
        name: format!("gnm(n={}, m={}, seed={})", cfg.n, cfg.m, cfg.seed),
        g0,
        events: trace.updates(),
        start_time: 0,
    })
}

fn load(cfg: &ExperimentConfig, path: Option<&Path>) -> Result<Stream> {
    match path {
        None => synthetic_stream(cfg),
        Some(path) => {
            let ing = ingest::ingest_path(path, cfg.split)?;
            Ok(Stream {
                name: path.display().to_string(),
                g0: ing.initial_graph(),
                events: ing.events().to_vec(),
                start_time: ing.start_time,
            })
        }
    }
}

/// One batched round next to the per-event run at the same stream position.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub round: usize,
    pub cursor: usize,
    pub time: u64,
    pub delta: u64,
    pub density_ours: f64,
    pub density_baseline: f64,
    /// Larger over smaller density; `1` when both are zero.
    pub ratio: f64,
    /// Cumulative engine time up to this round.
    pub ours_us: Option<u128>,
    pub baseline_us: Option<u128>,
    pub speedup: Option<f64>,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), T::to_string)
}

impl CsvRecord for CompareRow {
    const HEADER: &'static [&'static str] = &[
        "round",
        "cursor",
        "time",
        "delta",
        "density_ours",
        "density_baseline",
        "ratio",
        "ours_us",
        "baseline_us",
        "speedup",
    ];

    fn row(&self) -> Vec<String> {
        vec![
            self.round.to_string(),
            self.cursor.to_string(),
            self.time.to_string(),
            self.delta.to_string(),
            format!("{:.6}", self.density_ours),
            format!("{:.6}", self.density_baseline),
            format!("{:.6}", self.ratio),
            opt(&self.ours_us),
            opt(&self.baseline_us),
            self.speedup.map_or(String::new(), |s| format!("{s:.3}")),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareSummary {
    pub events: usize,
    pub digest: String,
    pub rounds: usize,
    pub fallback: bool,
    pub params: Option<ModelParams>,
    pub ours_us: u128,
    pub baseline_us: u128,
    pub speedup: f64,
    pub final_density_ours: f64,
    pub final_density_baseline: f64,
    /// Largest per-round ratio between the two densities.
    pub worst_ratio: f64,
    pub rebuilds_ours: u64,
    pub rebuilds_baseline: u64,
}

pub struct Comparison {
    pub rows: Vec<CompareRow>,
    pub summary: CompareSummary,
    pub ours: RunOutcome,
    pub baseline: RunOutcome,
}

fn ratio(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        1.0
    } else if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// Runs batched rest-and-run and per-event processing on the same events.
pub fn compare(stream: &Stream, objective: Objective, run: &RunConfig, timings: bool) -> Result<Comparison> {
    let events = &stream.events[..];
    let expected = digest(events);
    let ours = runner::run_objective(objective, &stream.g0, events, run, &mut runner::no_observer)?;
    if digest(events) != expected {
        return Err(Error::Io("event sequence changed between engines".into()));
    }
    let baseline = runner::per_event(&stream.g0, events, objective, run.eps, 1, &mut runner::no_observer)?;

    // Baseline reports sit at cursors 0, 1, 2, ...
    let mut base_cum = Vec::with_capacity(baseline.reports.len());
    let mut acc = 0u128;
    for r in &baseline.reports {
        acc += r.wall_time_us;
        base_cum.push(acc);
    }
    let mut rows = Vec::with_capacity(ours.reports.len());
    let mut ours_acc = 0u128;
    for r in &ours.reports {
        ours_acc += r.wall_time_us;
        let b: &DensityReport = &baseline.reports[r.cursor];
        let speedup = (ours_acc > 0).then(|| base_cum[r.cursor] as f64 / ours_acc as f64);
        rows.push(CompareRow {
            round: r.round,
            cursor: r.cursor,
            time: r.time,
            delta: r.delta,
            density_ours: r.density,
            density_baseline: b.density,
            ratio: ratio(r.density, b.density),
            ours_us: timings.then_some(ours_acc),
            baseline_us: timings.then_some(base_cum[r.cursor]),
            speedup: if timings { speedup } else { None },
        });
    }
    let summary = CompareSummary {
        events: events.len(),
        digest: format!("{expected:016x}"),
        rounds: ours.reports.len() - 1,
        fallback: ours.fallback,
        params: ours.params,
        ours_us: ours.total_time_us,
        baseline_us: baseline.total_time_us,
        speedup: baseline.total_time_us as f64 / ours.total_time_us.max(1) as f64,
        final_density_ours: ours.final_density(),
        final_density_baseline: baseline.final_density(),
        worst_ratio: rows.iter().map(|r| r.ratio).fold(1.0, f64::max),
        rebuilds_ours: ours.reports.last().map_or(0, |r| r.rebuilds),
        rebuilds_baseline: baseline.reports.last().map_or(0, |r| r.rebuilds),
    };
    Ok(Comparison {
        rows,
        summary,
        ours,
        baseline,
    })
}

/// One row of the run-time table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    pub objective: Objective,
    pub n: usize,
    pub m0: u64,
    pub events: usize,
    pub rounds: usize,
    pub ours_us: u128,
    pub baseline_us: Option<u128>,
    pub speedup: Option<f64>,
    pub density_ours: f64,
    pub density_baseline: Option<f64>,
}

impl CsvRecord for BenchRow {
    const HEADER: &'static [&'static str] = &[
        "dataset",
        "objective",
        "n",
        "m0",
        "events",
        "rounds",
        "ours_us",
        "baseline_us",
        "speedup",
        "density_ours",
        "density_baseline",
    ];

    fn row(&self) -> Vec<String> {
        vec![
            self.dataset.clone(),
            self.objective.column().to_string(),
            self.n.to_string(),
            self.m0.to_string(),
            self.events.to_string(),
            self.rounds.to_string(),
            self.ours_us.to_string(),
            opt(&self.baseline_us),
            self.speedup.map_or(String::new(), |s| format!("{s:.3}")),
            format!("{:.6}", self.density_ours),
            self.density_baseline.map_or(String::new(), |d| format!("{d:.6}")),
        ]
    }
}

pub fn bench(stream: &Stream, objective: Objective, run: &RunConfig, baseline: bool) -> Result<BenchRow> {
    let ours = runner::run_objective(objective, &stream.g0, &stream.events, run, &mut runner::no_observer)?;
    let base = if baseline {
        let every = stream.events.len().max(1);
        Some(runner::per_event(&stream.g0, &stream.events, objective, run.eps, every, &mut runner::no_observer)?)
    } else {
        None
    };
    Ok(BenchRow {
        dataset: stream.name.clone(),
        objective,
        n: stream.g0.n(),
        m0: stream.g0.m(),
        events: stream.events.len(),
        rounds: ours.reports.len() - 1,
        ours_us: ours.total_time_us,
        baseline_us: base.as_ref().map(|b| b.total_time_us),
        speedup: base.as_ref().map(|b| b.total_time_us as f64 / ours.total_time_us.max(1) as f64),
        density_ours: ours.final_density(),
        density_baseline: base.as_ref().map(RunOutcome::final_density),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleValue {
    pub value: f64,
    pub numerator: u64,
    pub denominator: u64,
    pub subset: Vec<u32>,
}

impl From<&OracleResult> for OracleValue {
    fn from(r: &OracleResult) -> Self {
        OracleValue {
            value: r.value_f64(),
            numerator: *r.value.numer(),
            denominator: *r.value.denom(),
            subset: r.subset.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub m: u64,
    pub densest: Option<OracleValue>,
    pub densest_bruteforce: Option<OracleValue>,
    pub tridensest_bruteforce: Option<OracleValue>,
}

/// Exact values on a graph: flow always, enumeration when small enough.
pub fn oracle_report(g: &DynamicGraph) -> OracleReport {
    let val = |r: Result<OracleResult>| r.ok().as_ref().map(OracleValue::from);
    OracleReport {
        n: g.n(),
        m: g.m(),
        densest: val(oracle::densest_exact(g)),
        densest_bruteforce: (g.n() <= oracle::DENSEST_BRUTE_LIMIT && g.m() > 0).then(|| val(oracle::densest_bruteforce(g))).flatten(),
        tridensest_bruteforce: (g.n() <= oracle::TRIDENSEST_BRUTE_LIMIT && g.n() > 0)
            .then(|| val(oracle::tridensest_bruteforce(g)))
            .flatten(),
    }
}

fn sink<'a>(cfg: &ExperimentConfig, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match &cfg.output {
        Some(path) => {
            let f = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(stdout),
    })
}

fn emit<R: CsvRecord + Serialize>(cfg: &ExperimentConfig, records: &[R], out: &mut dyn Write) -> Result<()> {
    match cfg.format {
        Format::Csv => report::write_csv(records, out),
        Format::Json => report::write_json(records, out),
    }
}

fn json_out<T: Serialize>(value: &T, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Io(e.to_string()))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Runs the configured pipeline. The artifact goes to `output` (or `stdout`);
/// the returned JSON value summarizes the run.
pub fn run_experiment(cfg: &ExperimentConfig, stdout: &mut dyn Write) -> Result<serde_json::Value> {
    cfg.validate()?;
    let first = cfg.input.first().map(PathBuf::as_path);
    match cfg.mode {
        Mode::Ingest => {
            let ing = ingest::ingest_path(first.expect("validated"), cfg.split)?;
            ing.write_cleaned(sink(cfg, stdout)?)?;
            Ok(json!({
                "n": ing.n(),
                "initial_edges": ing.initial_graph().m(),
                "events": ing.events().len(),
                "start_time": ing.start_time,
                "cleaning": ing.report,
            }))
        }
        Mode::Simulate => {
            let s = load(cfg, first)?;
            let (g0, events) = match first {
                None => (s.g0, s.events),
                Some(_) => {
                    // Continue from the end of the given stream.
                    let mut g = s.g0;
                    crate::stream::replay(&mut g, &s.events)?;
                    let g0 = g.clone();
                    let trace = run_trace(&mut g, &cfg.sim_params()?, &mut sim_rng(cfg.seed), cfg.stop())?;
                    (g0, trace.updates())
                }
            };
            ingest::write_trace(&g0, &events, sink(cfg, stdout)?)?;
            Ok(json!({
                "n": g0.n(),
                "m0": g0.m(),
                "events": events.len(),
                "digest": format!("{:016x}", digest(&events)),
            }))
        }
        Mode::Learn => {
            let s = load(cfg, first)?;
            let start = Instant::now();
            let learned = learn::learn(&s.g0, &s.events, s.start_time, &cfg.learn_config())?;
            let us = start.elapsed().as_micros();
            json_out(&learned.params, sink(cfg, stdout)?)?;
            Ok(json!({
                "p": learned.params.p,
                "q": learned.params.q,
                "r": learned.params.r,
                "r2": learned.params.r2,
                "accepted": learned.params.r2 >= cfg.c,
                "window_len": learned.params.window_len,
                "stop": learned.stats.stop,
                "wall_time_us": if cfg.timings { Some(us) } else { None },
            }))
        }
        Mode::Densest | Mode::TriDensest => {
            let objective = if cfg.mode == Mode::Densest { Objective::Densest } else { Objective::TriDensest };
            let s = load(cfg, first)?;
            let out = runner::run_objective(objective, &s.g0, &s.events, &cfg.run_config(s.start_time)?, &mut runner::no_observer)?;
            let mut w = sink(cfg, stdout)?;
            match cfg.format {
                Format::Csv => runner::write_reports(&out.reports, objective, cfg.timings, &mut w)?,
                Format::Json => report::write_json(&out.reports, &mut w)?,
            }
            Ok(json!({
                "rounds": out.reports.len() - 1,
                "events": s.events.len(),
                "final_density": out.final_density(),
                "fallback": out.fallback,
                "params": out.params,
                "learned": out.learned,
                "total_time_us": if cfg.timings { Some(out.total_time_us) } else { None },
            }))
        }
        Mode::Oracle => {
            let s = load(cfg, first)?;
            let mut g = s.g0;
            crate::stream::replay(&mut g, &s.events)?;
            let rep = oracle_report(&g);
            json_out(&rep, sink(cfg, stdout)?)?;
            Ok(json!({
                "n": rep.n,
                "m": rep.m,
                "densest": rep.densest.as_ref().map(|v| v.value),
                "tridensest": rep.tridensest_bruteforce.as_ref().map(|v| v.value),
            }))
        }
        Mode::Compare => {
            let s = load(cfg, first)?;
            let cmp = compare(&s, cfg.objective, &cfg.run_config(s.start_time)?, cfg.timings)?;
            emit(cfg, &cmp.rows, &mut sink(cfg, stdout)?)?;
            let mut summary = serde_json::to_value(&cmp.summary).map_err(|e| Error::Io(e.to_string()))?;
            if !cfg.timings {
                for k in ["ours_us", "baseline_us", "speedup"] {
                    summary[k] = serde_json::Value::Null;
                }
            }
            Ok(summary)
        }
        Mode::Bench => {
            let mut rows = Vec::new();
            let inputs: Vec<Option<&Path>> = if cfg.input.is_empty() {
                vec![None]
            } else {
                cfg.input.iter().map(|p| Some(p.as_path())).collect()
            };
            for path in inputs {
                let s = load(cfg, path)?;
                rows.push(bench(&s, cfg.objective, &cfg.run_config(s.start_time)?, cfg.baseline)?);
            }
            emit(cfg, &rows, &mut sink(cfg, stdout)?)?;
            Ok(json!({ "rows": rows.len() }))
        }
    }
}
