//! Rest windows: how many model steps may pass before the peeling layers
//! must be repaired, derived from expected growth of degrees and tri-degrees.
//!
//! Also hosts a Monte-Carlo checker that simulates short runs and compares the
//! observed mean growth against the expectation bounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, Vertex};
use crate::report::CsvRecord;
use crate::sim::{self, ModelParams};

pub const DEFAULT_MAX_BATCH: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestWindow {
    /// Batch length in model steps.
    pub delta: u64,
    /// Per-vertex admissible window before clamping.
    pub tau: Vec<f64>,
    /// Global window term (infinite when `p = 0`).
    pub cap: f64,
    /// Degree (or tri-degree) slack the layers tolerate.
    pub budget: f64,
    /// Whether `r ≤ (n²/Γ) p`, the hypothesis of the pair-growth bound, held.
    pub hypothesis_ok: bool,
}

/// Expected per-step degree growth rate `2pΓ(v)/Γ + r/n`.
pub fn vertex_rate(g: &DynamicGraph, v: Vertex, params: &ModelParams) -> f64 {
    rate_from(g.wedge_endpoints(v), g.wedges(), g.n(), params)
}

fn rate_from(gamma_v: u64, wedges: u64, n: usize, params: &ModelParams) -> f64 {
    let uniform = if n == 0 { 0.0 } else { params.r / n as f64 };
    if wedges == 0 {
        return uniform;
    }
    2.0 * params.p * gamma_v as f64 / wedges as f64 + uniform
}

/// Largest `δ` for which the degree and pair growth bounds are stated: `eΓ/(2p·d_max)`.
pub fn degree_window(g: &DynamicGraph, p: f64) -> f64 {
    let dmax = g.max_degree();
    if p <= 0.0 || dmax == 0 {
        return f64::INFINITY;
    }
    std::f64::consts::E * g.wedges() as f64 / (2.0 * p * dmax as f64)
}

/// Largest `δ` for which the tri-degree bound is stated: `e·d_max/(2p)`.
pub fn tri_window(g: &DynamicGraph, p: f64) -> f64 {
    if p <= 0.0 {
        return f64::INFINITY;
    }
    std::f64::consts::E * g.max_degree() as f64 / (2.0 * p)
}

fn pair_hypothesis(g: &DynamicGraph, params: &ModelParams) -> bool {
    let n = g.n() as f64;
    g.wedges() == 0 || params.r <= n * n / g.wedges() as f64 * params.p
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {x} must be positive")))
    }
}

fn clamp_delta(x: f64, max_batch: u64) -> u64 {
    if x.is_finite() {
        (x.floor() as u64).clamp(1, max_batch.max(1))
    } else {
        max_batch.max(1)
    }
}

/// Batch length for the densest-subgraph layers at density guess `beta`.
pub fn rest_window(g: &DynamicGraph, params: &ModelParams, beta: f64, eps: f64, max_batch: u64) -> Result<RestWindow> {
    check_positive("beta", beta)?;
    check_positive("eps", eps)?;
    let cap = degree_window(g, params.p);
    let budget = beta * (1.0 + eps);
    let limit = max_batch as f64;
    let gamma = g.all_wedge_endpoints();
    let tau: Vec<f64> = gamma
        .iter()
        .map(|&gv| {
            let c = rate_from(gv, g.wedges(), g.n(), params);
            let own = if c > 0.0 { budget / c } else { limit };
            cap.min(own).min(limit)
        })
        .collect();
    let min_tau = tau.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(RestWindow {
        delta: clamp_delta(min_tau, max_batch),
        tau,
        cap,
        budget,
        hypothesis_ok: pair_hypothesis(g, params),
    })
}

/// Expected tri-degree growth over `delta` steps:
/// `δζ²p/Γ (1 + 8δp/d_avg + 6δ²p²/Γ) + d²(δ + δ²/n)/n²`.
pub fn tri_growth_bound(delta: f64, zeta2: u64, degree: u64, p: f64, wedges: u64, avg_degree: f64, n: usize) -> f64 {
    let n = n as f64;
    let d = degree as f64;
    let uniform = if n > 0.0 { d * d * (delta + delta * delta / n) / (n * n) } else { 0.0 };
    if wedges == 0 {
        return uniform;
    }
    let w = wedges as f64;
    let spread = if avg_degree > 0.0 { 8.0 * delta * p / avg_degree } else { 0.0 };
    delta * zeta2 as f64 * p / w * (1.0 + spread + 6.0 * delta * delta * p * p / w) + uniform
}

/// Batch length for the tri-densest layers at tri-density guess `alpha`:
/// per vertex, the largest `δ` within the tri-degree window whose growth
/// bound stays within `α(1+ε)`.
pub fn tri_rest_window(g: &DynamicGraph, params: &ModelParams, alpha: f64, eps: f64, max_batch: u64) -> Result<RestWindow> {
    check_positive("alpha", alpha)?;
    check_positive("eps", eps)?;
    let budget = alpha * (1.0 + eps);
    let cap = tri_window(g, params.p);
    let hypothesis_ok = pair_hypothesis(g, params);
    if params.p <= 0.0 {
        return Ok(RestWindow {
            delta: max_batch.max(1),
            tau: vec![max_batch as f64; g.n()],
            cap,
            budget,
            hypothesis_ok,
        });
    }
    let hi = cap.min(max_batch as f64).floor() as u64;
    let avg = g.avg_degree();
    let tau: Vec<f64> = (0..g.n() as Vertex)
        .into_par_iter()
        .map(|v| {
            let s = g.vertex_stats(v).expect("vertex in range");
            let rhs = |d: u64| tri_growth_bound(d as f64, s.zeta2, s.degree, params.p, g.wedges(), avg, g.n());
            largest_within(hi, |d| rhs(d) <= budget) as f64
        })
        .collect();
    let min_tau = tau.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(RestWindow {
        delta: clamp_delta(min_tau, max_batch),
        tau,
        cap,
        budget,
        hypothesis_ok,
    })
}

/// Largest `d ∈ [0, hi]` with `ok(d)`, for `ok` true on a prefix.
fn largest_within(hi: u64, ok: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (0u64, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthTarget {
    /// Common degree of a pair.
    Pair(Vertex, Vertex),
    Degree(Vertex),
    TriDegree(Vertex),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub scenario: String,
    pub delta: u64,
    pub empirical_mean: f64,
    pub bound: f64,
    pub stderr: f64,
    pub violated: bool,
}

impl CsvRecord for GrowthReport {
    const HEADER: &'static [&'static str] = &["scenario", "delta", "empirical_mean", "bound", "stderr", "violated"];

    fn row(&self) -> Vec<String> {
        vec![
            self.scenario.clone(),
            self.delta.to_string(),
            format!("{:.6}", self.empirical_mean),
            format!("{:.6}", self.bound),
            format!("{:.6}", self.stderr),
            self.violated.to_string(),
        ]
    }
}

/// Expected growth bound for `target` over `delta` steps from `g`.
pub fn growth_bound(g: &DynamicGraph, params: &ModelParams, delta: u64, target: GrowthTarget) -> Result<f64> {
    let d = delta as f64;
    match target {
        GrowthTarget::Pair(u, v) => {
            g.common_degree(u, v)?;
            if g.wedges() == 0 {
                return Ok(0.0);
            }
            Ok(4.0 * d * g.degree(u) as f64 * g.degree(v) as f64 / g.wedges() as f64)
        }
        GrowthTarget::Degree(v) => {
            g.vertex_stats(v)?;
            Ok(d * vertex_rate(g, v, params))
        }
        GrowthTarget::TriDegree(v) => {
            let s = g.vertex_stats(v)?;
            Ok(tri_growth_bound(d, s.zeta2, s.degree, params.p, g.wedges(), g.avg_degree(), g.n()))
        }
    }
}

fn measure(g: &DynamicGraph, target: GrowthTarget) -> f64 {
    match target {
        GrowthTarget::Pair(u, v) => g.common_degree(u, v).expect("checked by growth_bound") as f64,
        GrowthTarget::Degree(v) => g.degree(v) as f64,
        GrowthTarget::TriDegree(v) => g.tri_degree(v) as f64,
    }
}

/// Runs `trials` independent `delta`-step simulations from `g` and compares
/// the mean growth of `target` with its bound. A violation is a mean more
/// than three standard errors above the bound.
pub fn verify_growth_bound(
    scenario: &str,
    g: &DynamicGraph,
    params: &ModelParams,
    delta: u64,
    trials: u64,
    target: GrowthTarget,
    seed: u64,
) -> Result<GrowthReport> {
    let window = match target {
        GrowthTarget::TriDegree(_) => tri_window(g, params.p),
        _ => degree_window(g, params.p),
    };
    if delta as f64 > window {
        return Err(Error::OutsideWindow { delta, window });
    }
    if trials < 2 {
        return Err(Error::InvalidParameter(format!("trials = {trials} must be at least 2")));
    }
    let bound = growth_bound(g, params, delta, target)?;
    let start = measure(g, target);
    let growth: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut h = g.clone();
            let mut rng = sim::sim_rng_stream(seed, trial);
            for step in 1..=delta {
                sim::step(&mut h, params, &mut rng, step);
            }
            measure(&h, target) - start
        })
        .collect();
    let k = trials as f64;
    let mean = growth.iter().sum::<f64>() / k;
    let var = growth.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    let stderr = (var / k).sqrt();
    Ok(GrowthReport {
        scenario: scenario.to_string(),
        delta,
        empirical_mean: mean,
        bound,
        stderr,
        violated: mean - bound > 3.0 * stderr,
    })
}
