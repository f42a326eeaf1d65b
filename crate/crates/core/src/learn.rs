//! Learning the wedge picking parameters from an observed edge stream.
//!
//! A window of the stream is observed from a fixed start graph. For every
//! common-neighbor count `x` we record `N0(x)`, the number of disconnected
//! pairs with `x` common neighbors at the window start, and `f(x)`, how many
//! additions landed on a pair with `x` common neighbors. The window closes
//! before `N(x)` drifts far from `N0(x)`, so `f(x)/N0(x)` estimates the
//! per-pair connection rate. A line `f(x)/N0(x) = a x + b` is fitted and
//! inverted through `a = p M / Γ0`, `b = r M / C(n, 2)`.
//!
//! Filing additions under the start-graph count (`Keying::WindowStart`) is
//! available but biased: pairs that gain a common neighbor mid-window and are
//! then closed show up as rule (ii) additions at small `x`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{choose2, DynamicGraph, Vertex};
use crate::stream::{Op, TimedUpdate};

/// Which common-neighbor count an observed addition is filed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Keying {
    /// `d_t(u, v)` at the moment the edge arrives; every add event counts.
    EventTime,
    /// `d(u, v)` in the window-start graph; only pairs in `E_end \ E_0` count.
    WindowStart,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowConfig {
    /// Drift tolerance: the window closes once `Γ^o/Γ` or a monitored
    /// `N(x)` leaves `[1/(1+ε), 1+ε]` times its start value.
    pub eps: f64,
    /// Number of most populated `x` buckets whose `N(x)` drift is tracked.
    pub monitored_buckets: usize,
    pub keying: Keying,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            eps: 0.2,
            monitored_buckets: 2,
            keying: Keying::EventTime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowStop {
    StreamExhausted,
    EdgeCap,
    WedgeRatioDrift,
    BucketDrift(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowStats {
    /// `f(x)`: additions filed under common-neighbor count `x` (see [`Keying`]).
    pub added_by_x: BTreeMap<u64, u64>,
    /// `N0(x)`: disconnected pairs with `x` common neighbors at start.
    pub pairs_by_x: BTreeMap<u64, u64>,
    pub additions: u64,
    pub deletions: u64,
    pub wedges0: u64,
    pub open0: u64,
    pub m0: u64,
    pub n: u64,
    pub window_len: usize,
    pub start_time: u64,
    pub end_time: u64,
    pub stop: WindowStop,
}

impl WindowStats {
    /// Model time covered by the window, in the stream's timestamp units.
    pub fn elapsed(&self) -> u64 {
        self.end_time.saturating_sub(self.start_time)
    }

    pub fn pairs(&self) -> u64 {
        choose2(self.n)
    }
}

/// `N0(x)` for every `x`: pairs at distance two are enumerated through their
/// midpoints in `O(Σ d(v)²)`; the `x = 0` bucket is the complement.
pub fn disconnected_pairs_by_common_degree(g: &DynamicGraph) -> BTreeMap<u64, u64> {
    let n = g.n();
    let mut counts = vec![0u32; n];
    let mut touched: Vec<Vertex> = Vec::new();
    let mut buckets: BTreeMap<u64, u64> = BTreeMap::new();
    let mut distance_two = 0u64;
    for u in g.vertices() {
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                if v > u {
                    if counts[v as usize] == 0 {
                        touched.push(v);
                    }
                    counts[v as usize] += 1;
                }
            }
        }
        for &v in &touched {
            if !g.has_edge(u, v) {
                *buckets.entry(counts[v as usize] as u64).or_insert(0) += 1;
                distance_two += 1;
            }
            counts[v as usize] = 0;
        }
        touched.clear();
    }
    let zero = choose2(n as u64) - g.m() - distance_two;
    if zero > 0 {
        buckets.insert(0, zero);
    }
    buckets
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

struct BucketMonitor {
    current: HashMap<u64, i64>,
    start: HashMap<u64, i64>,
}

impl BucketMonitor {
    fn new(n0: &BTreeMap<u64, u64>, k: usize) -> Self {
        let mut ranked: Vec<(u64, u64)> = n0.iter().map(|(&x, &c)| (x, c)).collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let start: HashMap<u64, i64> = ranked.into_iter().take(k).map(|(x, c)| (x, c as i64)).collect();
        BucketMonitor {
            current: start.clone(),
            start,
        }
    }

    fn shift(&mut self, x: u64, by: i64) {
        if let Some(c) = self.current.get_mut(&x) {
            *c += by;
        }
    }

    /// Moves every disconnected pair `(a, w)`, `w ∈ N(b) \ {a}`, between
    /// buckets after the edge `(a, b)` was added (`gained`) or before it
    /// was removed.
    fn shift_neighbors(&mut self, g: &DynamicGraph, a: Vertex, b: Vertex, gained: bool) {
        for &w in g.neighbors(b) {
            if w == a || g.has_edge(a, w) {
                continue;
            }
            let c = g.common_degree(a, w).expect("distinct vertices");
            // `c` already counts `b` when the edge is present
            let before = if gained { c - 1 } else { c };
            let after = if gained { c } else { c - 1 };
            self.shift(before, -1);
            self.shift(after, 1);
        }
    }

    fn drifted(&self, eps: f64) -> Option<u64> {
        let mut xs: Vec<&u64> = self.start.keys().collect();
        xs.sort();
        xs.into_iter()
            .find(|x| {
                let s = self.start[x] as f64;
                let c = self.current[x] as f64;
                c < s / (1.0 + eps) || c > s * (1.0 + eps)
            })
            .copied()
    }
}

fn ratio_in_band(open: u64, wedges: u64, start_ratio: Option<f64>, eps: f64) -> bool {
    match start_ratio {
        None => true,
        Some(r0) => {
            if wedges == 0 {
                return false;
            }
            let r = open as f64 / wedges as f64;
            r >= r0 / (1.0 + eps) && r <= r0 * (1.0 + eps)
        }
    }
}

/// Observes `events` from the window-start graph `g` (taken at time
/// `start_time`) until the stream ends, `|E0|` events are consumed, or
/// a drift monitor fires.
pub fn collect_window(
    g: &DynamicGraph,
    events: &[TimedUpdate],
    start_time: u64,
    cfg: &WindowConfig,
) -> Result<WindowStats> {
    if !(cfg.eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps = {} must be positive", cfg.eps)));
    }
    let pairs_by_x = disconnected_pairs_by_common_degree(g);
    let mut stats = WindowStats {
        added_by_x: BTreeMap::new(),
        pairs_by_x,
        additions: 0,
        deletions: 0,
        wedges0: g.wedges(),
        open0: g.open_wedges(),
        m0: g.m(),
        n: g.n() as u64,
        window_len: 0,
        start_time,
        end_time: start_time,
        stop: WindowStop::StreamExhausted,
    };
    let cap = g.m() as usize;
    if events.is_empty() {
        return Ok(stats);
    }
    if cap == 0 {
        stats.stop = WindowStop::EdgeCap;
        return Ok(stats);
    }

    let start_ratio = (g.wedges() > 0).then(|| g.open_wedges() as f64 / g.wedges() as f64);
    let mut monitor = BucketMonitor::new(&stats.pairs_by_x, cfg.monitored_buckets);
    let mut work = g.clone();
    let mut touched: HashMap<(Vertex, Vertex), bool> = HashMap::new();

    for ev in events {
        let k = key(ev.u, ev.v);
        touched.entry(k).or_insert_with(|| g.has_edge(k.0, k.1));
        match ev.op {
            Op::Add => {
                let x = work.common_degree(ev.u, ev.v)?;
                if cfg.keying == Keying::EventTime {
                    stats.additions += 1;
                    *stats.added_by_x.entry(x).or_insert(0) += 1;
                }
                monitor.shift(x, -1);
                work.add_edge(ev.u, ev.v)?;
                monitor.shift_neighbors(&work, ev.v, ev.u, true);
                monitor.shift_neighbors(&work, ev.u, ev.v, true);
            }
            Op::Remove => {
                if cfg.keying == Keying::EventTime {
                    stats.deletions += 1;
                }
                monitor.shift_neighbors(&work, ev.v, ev.u, false);
                monitor.shift_neighbors(&work, ev.u, ev.v, false);
                work.remove_edge(ev.u, ev.v)?;
                monitor.shift(work.common_degree(ev.u, ev.v)?, 1);
            }
        }
        stats.window_len += 1;
        stats.end_time = ev.t;
        if stats.window_len >= cap {
            stats.stop = WindowStop::EdgeCap;
            break;
        }
        if !ratio_in_band(work.open_wedges(), work.wedges(), start_ratio, cfg.eps) {
            stats.stop = WindowStop::WedgeRatioDrift;
            break;
        }
        if let Some(x) = monitor.drifted(cfg.eps) {
            stats.stop = WindowStop::BucketDrift(x);
            break;
        }
    }

    if cfg.keying == Keying::EventTime {
        return Ok(stats);
    }
    let mut pairs: Vec<_> = touched.into_iter().collect();
    pairs.sort_unstable();
    for ((u, v), was_present) in pairs {
        let present = work.has_edge(u, v);
        if present && !was_present {
            stats.additions += 1;
            *stats.added_by_x.entry(g.common_degree(u, v)?).or_insert(0) += 1;
        } else if was_present && !present {
            stats.deletions += 1;
        }
    }
    Ok(stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weighting {
    /// Ordinary least squares over the plotted ratios.
    Unweighted,
    /// Iteratively reweighted least squares with binomial weights
    /// `N0(x) / (ŷ (1 - ŷ))`.
    Binomial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    /// Minimum `N0(x)` for a bucket to enter the regression.
    pub support_floor: u64,
    pub weighting: Weighting,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            support_floor: 5,
            weighting: Weighting::Binomial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub support: usize,
}

/// Weighted least squares line through `(x, y)` with weights `w`, plus the
/// weighted coefficient of determination. `R² = 0` when `y` is constant.
pub fn least_squares(points: &[(f64, f64, f64)]) -> Option<RegressionFit> {
    let sw: f64 = points.iter().map(|p| p.2).sum();
    if points.len() < 2 || !(sw > 0.0) {
        return None;
    }
    let mx = points.iter().map(|p| p.2 * p.0).sum::<f64>() / sw;
    let my = points.iter().map(|p| p.2 * p.1).sum::<f64>() / sw;
    let sxx: f64 = points.iter().map(|p| p.2 * (p.0 - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| p.2 * (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = points.iter().map(|p| p.2 * (p.1 - my).powi(2)).sum();
    let ss_res: f64 = points.iter().map(|p| p.2 * (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let r2 = if ss_tot > 0.0 {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Some(RegressionFit {
        slope,
        intercept,
        r2,
        support: points.len(),
    })
}

/// Fits `f(x)/N0(x) = a x + b` over buckets with `N0(x) ≥ support_floor`.
pub fn fit_line(stats: &WindowStats, cfg: &FitConfig) -> Result<RegressionFit> {
    let observed: Vec<(f64, f64, f64)> = stats
        .pairs_by_x
        .iter()
        .filter(|(_, &n0)| n0 >= cfg.support_floor && n0 > 0)
        .map(|(&x, &n0)| {
            let f = stats.added_by_x.get(&x).copied().unwrap_or(0);
            (x as f64, f as f64 / n0 as f64, n0 as f64)
        })
        .collect();
    let insufficient = || Error::InsufficientSupport {
        points: observed.len(),
        floor: cfg.support_floor,
    };
    let unweighted: Vec<_> = observed.iter().map(|&(x, y, _)| (x, y, 1.0)).collect();
    let mut fit = least_squares(&unweighted).ok_or_else(insufficient)?;
    if cfg.weighting == Weighting::Binomial {
        // Floor on ŷ: at least half an event per bucket, so empty buckets
        // keep a finite weight.
        for _ in 0..8 {
            let weighted: Vec<_> = observed
                .iter()
                .map(|&(x, y, n0)| {
                    let floor = 0.5 / n0;
                    let yhat = (fit.slope * x + fit.intercept).clamp(floor, 1.0 - floor);
                    (x, y, n0 / (yhat * (1.0 - yhat)))
                })
                .collect();
            let next = least_squares(&weighted).ok_or_else(insufficient)?;
            let converged = (next.slope - fit.slope).abs() <= 1e-12 * next.slope.abs().max(1e-300)
                && (next.intercept - fit.intercept).abs() <= 1e-12 * next.intercept.abs().max(1e-300);
            fit = next;
            if converged {
                break;
            }
        }
    }
    Ok(fit)
}

/// How the normalization `M` relating the fitted line to `(p, r)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `M = elapsed / 2`: the expected number of rule-(i) (equivalently
    /// rule-(ii)) draws during the window, when timestamps count model steps.
    StepClock,
    /// `M² = (a Γ^o_0 + b (C(n,2) − m0)) / A`, obtained by eliminating `p, r`
    /// from `a = pM/Γ0`, `b = rM/C(n,2)` and `M = (pΓ^o/Γ + r(1 − m/C(n,2)))/A`.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnConfig {
    pub window: WindowConfig,
    pub fit: FitConfig,
    /// Minimum `R²` for the model to be accepted.
    pub accept_r2: f64,
    pub normalization: Normalization,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig {
            window: WindowConfig::default(),
            fit: FitConfig::default(),
            accept_r2: 0.6,
            normalization: Normalization::StepClock,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearnedParams {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// `p` and `r` before clamping to `[0, 1]`.
    pub p_raw: f64,
    pub r_raw: f64,
    /// Lower bound on `p/q`; infinite when no deletions were observed.
    pub q_ratio: f64,
    pub m_norm: f64,
    pub r2: f64,
    pub window_len: usize,
    pub accepted: bool,
}

impl LearnedParams {
    pub fn model(&self) -> crate::sim::ModelParams {
        crate::sim::ModelParams {
            p: self.p,
            q: self.q,
            r: self.r,
        }
    }

    /// Flat `key=value` record, one per line.
    pub fn to_record(&self) -> String {
        format!(
            "p={}\nq={}\nr={}\nR2={}\nM={}\nwindow_len={}\naccepted={}\n",
            self.p, self.q, self.r, self.r2, self.m_norm, self.window_len, self.accepted
        )
    }
}

/// Lower bound on `p/q`:
/// `(A / D) · (Γ0 / Γ^o_0) · (m0 / C(n, 2))`, infinite when `D = 0`.
pub fn q_bound(stats: &WindowStats) -> Result<f64> {
    if stats.open0 == 0 {
        return Err(Error::NoOpenWedges);
    }
    if stats.deletions == 0 {
        return Ok(f64::INFINITY);
    }
    Ok(stats.additions as f64 / stats.deletions as f64 * stats.wedges0 as f64 / stats.open0 as f64 * stats.m0 as f64
        / stats.pairs() as f64)
}

/// Solves `a = p M / Γ0`, `b = r M / C(n, 2)` for `(p, r)`.
pub fn invert_params(fit: &RegressionFit, stats: &WindowStats, cfg: &LearnConfig) -> Result<LearnedParams> {
    if stats.additions == 0 {
        return Err(Error::NoAdditions);
    }
    let a = fit.slope.max(0.0);
    let b = fit.intercept.max(0.0);
    let pairs = stats.pairs() as f64;
    let m_norm = match cfg.normalization {
        Normalization::StepClock if stats.elapsed() > 0 => stats.elapsed() as f64 / 2.0,
        _ => ((a * stats.open0 as f64 + b * (pairs - stats.m0 as f64)) / stats.additions as f64).sqrt(),
    };
    let (p_raw, r_raw) = if m_norm > 0.0 {
        (a * stats.wedges0 as f64 / m_norm, b * pairs / m_norm)
    } else {
        (0.0, 0.0)
    };
    let p = p_raw.clamp(0.0, 1.0);
    let r = r_raw.clamp(0.0, 1.0);
    let q_ratio = q_bound(stats).unwrap_or(f64::INFINITY);
    let q = if q_ratio.is_infinite() {
        0.0
    } else {
        (p / q_ratio).clamp(0.0, 1.0)
    };
    Ok(LearnedParams {
        p,
        q,
        r,
        p_raw,
        r_raw,
        q_ratio,
        m_norm,
        r2: fit.r2,
        window_len: stats.window_len,
        accepted: fit.r2 >= cfg.accept_r2,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Learned {
    pub stats: WindowStats,
    pub fit: RegressionFit,
    pub params: LearnedParams,
}

/// Window collection, regression and inversion in one call.
pub fn learn(g: &DynamicGraph, events: &[TimedUpdate], start_time: u64, cfg: &LearnConfig) -> Result<Learned> {
    let stats = collect_window(g, events, start_time, &cfg.window)?;
    let fit = fit_line(&stats, &cfg.fit)?;
    let params = invert_params(&fit, &stats, cfg)?;
    Ok(Learned { stats, fit, params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::sim::{run_trace, sim_rng, ModelParams, StopCondition};

    fn stats_from_points(points: &[(u64, u64, u64)]) -> WindowStats {
        WindowStats {
            added_by_x: points.iter().map(|&(x, f, _)| (x, f)).collect(),
            pairs_by_x: points.iter().map(|&(x, _, n)| (x, n)).collect(),
            additions: points.iter().map(|p| p.1).sum(),
            deletions: 0,
            wedges0: 1000,
            open0: 900,
            m0: 100,
            n: 100,
            window_len: 100,
            start_time: 0,
            end_time: 0,
            stop: WindowStop::StreamExhausted,
        }
    }

    #[test]
    fn exact_line_is_recovered() {
        // y = 0.01 x + 0.02 with N0 = 100 everywhere
        let pts: Vec<_> = (0..6).map(|x| (x, x + 2, 100)).collect();
        for weighting in [Weighting::Unweighted, Weighting::Binomial] {
            let fit = fit_line(&stats_from_points(&pts), &FitConfig { support_floor: 5, weighting }).unwrap();
            assert!((fit.slope - 0.01).abs() < 1e-12, "{weighting:?} {fit:?}");
            assert!((fit.intercept - 0.02).abs() < 1e-12);
            assert!((fit.r2 - 1.0).abs() < 1e-12);
            assert_eq!(fit.support, 6);
        }
    }

    #[test]
    fn constant_ratio_has_zero_slope_and_r2() {
        let pts: Vec<_> = (0..5).map(|x| (x, 3, 100)).collect();
        let fit = fit_line(&stats_from_points(&pts), &FitConfig::default()).unwrap();
        assert!(fit.slope.abs() < 1e-15);
        assert_eq!(fit.r2, 0.0);
    }

    #[test]
    fn thin_buckets_are_excluded() {
        let pts = [(0, 1, 100), (1, 1, 4), (2, 0, 3)];
        let err = fit_line(&stats_from_points(&pts), &FitConfig::default()).unwrap_err();
        assert_eq!(err, Error::InsufficientSupport { points: 1, floor: 5 });
    }

    #[test]
    fn q_bound_arithmetic() {
        let mut s = stats_from_points(&[(0, 100, 1000)]);
        s.additions = 100;
        s.deletions = 10;
        s.wedges0 = 2000;
        s.open0 = 1000;
        s.n = 201; // C(201, 2) = 20100
        s.m0 = 201;
        assert!((q_bound(&s).unwrap() - 0.2).abs() < 1e-12);
        s.deletions = 0;
        assert!(q_bound(&s).unwrap().is_infinite());
        s.open0 = 0;
        assert_eq!(q_bound(&s), Err(Error::NoOpenWedges));
    }

    #[test]
    fn inversion_satisfies_both_relations() {
        let s = stats_from_points(&[(0, 2, 4000), (1, 30, 900), (2, 12, 80)]);
        let fit = RegressionFit {
            slope: 3e-4,
            intercept: 2e-6,
            r2: 0.9,
            support: 3,
        };
        for normalization in [Normalization::ClosedForm, Normalization::StepClock] {
            let mut s = s.clone();
            s.end_time = 500;
            let cfg = LearnConfig {
                normalization,
                ..LearnConfig::default()
            };
            let lp = invert_params(&fit, &s, &cfg).unwrap();
            let rel = |x: f64, y: f64| ((x - y) / y).abs();
            assert!(rel(lp.p_raw * lp.m_norm / s.wedges0 as f64, fit.slope) < 1e-9);
            assert!(rel(lp.r_raw * lp.m_norm / s.pairs() as f64, fit.intercept) < 1e-9);
            assert!(lp.accepted);
        }
    }

    #[test]
    fn closed_form_is_self_consistent() {
        // pick (p, r, M) consistent with the definition of M, derive (a, b),
        // and check the closed form returns them
        let s = stats_from_points(&[(0, 5, 4000), (1, 40, 900)]);
        let pairs = s.pairs() as f64;
        let (p, r) = (0.6, 0.02);
        let m = (p * s.open0 as f64 / s.wedges0 as f64 + r * (1.0 - s.m0 as f64 / pairs)) / s.additions as f64;
        let fit = RegressionFit {
            slope: p * m / s.wedges0 as f64,
            intercept: r * m / pairs,
            r2: 1.0,
            support: 2,
        };
        let cfg = LearnConfig {
            normalization: Normalization::ClosedForm,
            ..LearnConfig::default()
        };
        let lp = invert_params(&fit, &s, &cfg).unwrap();
        assert!(((lp.p - p) / p).abs() < 1e-9);
        assert!(((lp.r - r) / r).abs() < 1e-9);
        assert!(((lp.m_norm - m) / m).abs() < 1e-9);
    }

    #[test]
    fn zero_intercept_gives_zero_r() {
        let s = stats_from_points(&[(0, 0, 4000), (1, 40, 900)]);
        let fit = RegressionFit {
            slope: 1e-3,
            intercept: 0.0,
            r2: 1.0,
            support: 2,
        };
        let cfg = LearnConfig {
            normalization: Normalization::ClosedForm,
            ..LearnConfig::default()
        };
        let lp = invert_params(&fit, &s, &cfg).unwrap();
        assert_eq!(lp.r, 0.0);
        let m = lp.m_norm;
        assert!((m * m - 1e-3 * s.open0 as f64 / s.additions as f64).abs() < 1e-15);
    }

    #[test]
    fn negative_coefficients_are_clamped() {
        let s = stats_from_points(&[(0, 1, 4000), (1, 40, 900)]);
        let fit = RegressionFit {
            slope: 1e-3,
            intercept: -1e-5,
            r2: 0.3,
            support: 2,
        };
        let lp = invert_params(&fit, &s, &LearnConfig::default()).unwrap();
        assert_eq!(lp.r, 0.0);
        assert!(!lp.accepted);
    }

    #[test]
    fn no_additions_is_rejected() {
        let mut s = stats_from_points(&[(0, 0, 4000), (1, 0, 900)]);
        s.additions = 0;
        let fit = RegressionFit {
            slope: 0.0,
            intercept: 0.0,
            r2: 0.0,
            support: 2,
        };
        assert_eq!(invert_params(&fit, &s, &LearnConfig::default()), Err(Error::NoAdditions));
    }

    #[test]
    fn deletions_only_window() {
        let g = generators::gnm(20, 60, &mut sim_rng(3));
        let events: Vec<_> = g.edges().take(5).enumerate().map(|(i, (u, v))| TimedUpdate::remove(i as u64 + 1, u, v)).collect();
        let s = collect_window(&g, &events, 0, &WindowConfig { eps: 10.0, monitored_buckets: 2, keying: Keying::WindowStart }).unwrap();
        assert_eq!(s.additions, 0);
        assert!(s.added_by_x.values().all(|&f| f == 0));
        assert_eq!(s.deletions, 5);
        assert_eq!(s.window_len, 5);
    }

    #[test]
    fn empty_stream_gives_zero_window() {
        let g = generators::cycle(5);
        let s = collect_window(&g, &[], 0, &WindowConfig::default()).unwrap();
        assert_eq!(s.window_len, 0);
        assert_eq!(s.additions, 0);
        assert_eq!(s.pairs_by_x.values().sum::<u64>(), choose2(5) - 5);
    }

    #[test]
    fn n0_matches_pair_scan() {
        let g = generators::gnp(30, 0.2, &mut sim_rng(12));
        let mut naive: BTreeMap<u64, u64> = BTreeMap::new();
        for u in 0..30 {
            for v in u + 1..30 {
                if !g.has_edge(u, v) {
                    *naive.entry(g.common_degree(u, v).unwrap()).or_insert(0) += 1;
                }
            }
        }
        assert_eq!(disconnected_pairs_by_common_degree(&g), naive);
    }

    fn naive_counts(start: &DynamicGraph, updates: &[TimedUpdate], keying: Keying) -> BTreeMap<u64, u64> {
        let mut g = start.clone();
        let mut f = BTreeMap::new();
        for u in updates {
            if u.op == Op::Add && keying == Keying::EventTime {
                let x = g.neighbors(u.u).iter().filter(|w| g.has_edge(**w, u.v)).count() as u64;
                *f.entry(x).or_insert(0) += 1;
            }
            u.apply(&mut g).unwrap();
        }
        if keying == Keying::WindowStart {
            for a in 0..start.n() as Vertex {
                for b in a + 1..start.n() as Vertex {
                    if g.has_edge(a, b) && !start.has_edge(a, b) {
                        let x = start.neighbors(a).iter().filter(|w| start.has_edge(**w, b)).count() as u64;
                        *f.entry(x).or_insert(0) += 1;
                    }
                }
            }
        }
        f
    }

    #[test]
    fn counts_match_naive_replay() {
        let mut g = generators::gnm(40, 80, &mut sim_rng(6));
        let start = g.clone();
        let params = ModelParams::new(0.75, 0.05, 0.02).unwrap();
        let trace = run_trace(&mut g, &params, &mut sim_rng(7), StopCondition::steps(150)).unwrap();
        let updates = trace.updates();
        assert!(updates.len() < 80);
        for keying in [Keying::EventTime, Keying::WindowStart] {
            let cfg = WindowConfig { eps: 1e6, monitored_buckets: 0, keying };
            let s = collect_window(&start, &updates, 0, &cfg).unwrap();
            assert_eq!(s.window_len, updates.len());
            let naive = naive_counts(&start, &updates, keying);
            let got: BTreeMap<u64, u64> = s.added_by_x.into_iter().filter(|&(_, c)| c > 0).collect();
            assert_eq!(got, naive, "{keying:?}");
        }
    }

    #[test]
    fn window_never_exceeds_edge_count() {
        let mut g = generators::gnm(60, 40, &mut sim_rng(1));
        let start = g.clone();
        let params = ModelParams::new(0.75, 0.0, 0.05).unwrap();
        let trace = run_trace(&mut g, &params, &mut sim_rng(2), StopCondition::additions(200)).unwrap();
        let s = collect_window(&start, &trace.updates(), 0, &WindowConfig { eps: 100.0, monitored_buckets: 16, keying: Keying::EventTime }).unwrap();
        assert_eq!(s.window_len, 40);
        assert_eq!(s.stop, WindowStop::EdgeCap);
    }
}
