//! Peeling layers for approximate densest subgraphs.
//!
//! Peeling at threshold `T` repeatedly removes, all at once, every vertex
//! whose induced degree (or tri-degree) is below `T`. The layer index of a
//! vertex is the round in which it is removed; vertices never removed form
//! the candidate and carry [`CORE`]. Writing `need = ⌈T⌉`, the levels are the
//! unique solution of
//!
//! ```text
//! level(v) = 1 + (need-th largest support level of v)      (0 if fewer than need)
//! ```
//!
//! where a support of `v` is a neighbor (edges) or a triangle through `v`
//! whose level is the smaller of its two other corners. Batch repair
//! exploits this: insertions only raise levels, deletions only lower them.
//!
//! Thresholds live on the grid `T_i = (1+ε)^i`; the density guess at index `i`
//! is `T_i / (s(1+ε))` with `s = 2` for edges and `s = 3` for triangles. The
//! structure also maintains a probe at `i + 1` so that a denser region
//! appearing away from the current candidate still forces a regrid.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::marker::PhantomData;

use crate::graph::{DynamicGraph, Vertex};
use crate::stream::{Op, TimedUpdate};

/// Level of a vertex that survives peeling.
pub const CORE: u32 = u32::MAX;

/// What a vertex needs enough of to survive a peeling round.
pub trait Support {
    /// Multiplier between the threshold and the density guess.
    const SCALE: f64;

    /// Whether a raised neighbor is one support (so a vertex needs as many
    /// raised lower neighbors as it lacks supports before it can rise).
    const ONE_SUPPORT_PER_NEIGHBOR: bool;

    /// Pushes the level of each support of `v` into `out`.
    fn supports(g: &DynamicGraph, level: &[u32], v: Vertex, out: &mut Vec<u32>);

    /// Vertices whose supports involve the pair `(u, v)`.
    fn touched_by(g: &DynamicGraph, u: Vertex, v: Vertex, out: &mut Vec<Vertex>);

    /// Edges or triangles inside the core, given the maintained core edge count.
    fn core_count(g: &DynamicGraph, level: &[u32], core_edges: u64) -> u64;

    /// Static synchronous peeling of the subgraph induced by `alive`.
    /// Returns per-vertex levels (meaningful for members only).
    fn static_levels(g: &DynamicGraph, alive: Vec<bool>, need: usize) -> Vec<u32>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edges;

impl Support for Edges {
    const SCALE: f64 = 2.0;
    const ONE_SUPPORT_PER_NEIGHBOR: bool = true;

    fn supports(g: &DynamicGraph, level: &[u32], v: Vertex, out: &mut Vec<u32>) {
        out.extend(g.neighbors(v).iter().map(|&w| level[w as usize]));
    }

    fn touched_by(_: &DynamicGraph, u: Vertex, v: Vertex, out: &mut Vec<Vertex>) {
        out.push(u);
        out.push(v);
    }

    fn core_count(_: &DynamicGraph, _: &[u32], core_edges: u64) -> u64 {
        core_edges
    }

    fn static_levels(g: &DynamicGraph, mut alive: Vec<bool>, need: usize) -> Vec<u32> {
        let n = g.n();
        let mut deg: Vec<usize> = (0..n)
            .map(|v| {
                if alive[v] {
                    g.neighbors(v as Vertex).iter().filter(|&&w| alive[w as usize]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut level = vec![0u32; n];
        let mut round: Vec<Vertex> = (0..n as Vertex).filter(|&v| alive[v as usize] && deg[v as usize] < need).collect();
        let mut r = 0u32;
        while !round.is_empty() {
            for &v in &round {
                alive[v as usize] = false;
                level[v as usize] = r;
            }
            let mut next = Vec::new();
            for &v in &round {
                for &w in g.neighbors(v) {
                    let w = w as usize;
                    if alive[w] {
                        deg[w] -= 1;
                        if deg[w] + 1 == need {
                            next.push(w as Vertex);
                        }
                    }
                }
            }
            next.sort_unstable();
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

/// Per-threshold level assignment with core bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMap {
    pub need: usize,
    pub level: Vec<u32>,
    pub core_size: usize,
    pub core_edges: u64,
}

impl LevelMap {
    fn from_levels(g: &DynamicGraph, need: usize, level: Vec<u32>) -> Self {
        let core_size = level.iter().filter(|&&l| l == CORE).count();
        let core_edges = g
            .edges()
            .filter(|&(u, v)| level[u as usize] == CORE && level[v as usize] == CORE)
            .count() as u64;
        LevelMap {
            need,
            level,
            core_size,
            core_edges,
        }
    }

    pub fn core(&self) -> Vec<Vertex> {
        (0..self.level.len() as Vertex).filter(|&v| self.level[v as usize] == CORE).collect()
    }

    fn set(&mut self, g: &DynamicGraph, v: Vertex, to: u32) {
        let from = self.level[v as usize];
        if from == to {
            return;
        }
        if (from == CORE) != (to == CORE) {
            let inside = g.neighbors(v).iter().filter(|&&w| self.level[w as usize] == CORE).count() as u64;
            if to == CORE {
                self.core_size += 1;
                self.core_edges += inside;
            } else {
                self.core_size -= 1;
                self.core_edges -= inside;
            }
        }
        self.level[v as usize] = to;
    }
}

/// Edges whose presence differs between the graph before and after a batch.
#[derive(Debug, Clone, Default)]
pub struct NetChange {
    pub inserted: Vec<(Vertex, Vertex)>,
    pub deleted: Vec<(Vertex, Vertex)>,
}

impl NetChange {
    /// Net effect of `updates`, with `g` already reflecting them.
    pub fn of(g: &DynamicGraph, updates: &[TimedUpdate]) -> Self {
        let mut first = std::collections::HashMap::new();
        for u in updates {
            let k = if u.u < u.v { (u.u, u.v) } else { (u.v, u.u) };
            first.entry(k).or_insert(u.op);
        }
        let mut pairs: Vec<_> = first.into_iter().collect();
        pairs.sort_unstable_by_key(|&(k, _)| k);
        let mut net = NetChange::default();
        for ((u, v), op) in pairs {
            match (op, g.has_edge(u, v)) {
                (Op::Add, true) => net.inserted.push((u, v)),
                (Op::Remove, false) => net.deleted.push((u, v)),
                _ => {}
            }
        }
        net
    }

    pub fn is_empty(&self) -> bool {
        self.inserted.is_empty() && self.deleted.is_empty()
    }
}

fn threshold_need(t: f64) -> usize {
    (t - 1e-9).ceil().max(0.0) as usize
}

/// `1 +` the `need`-th largest value in `buf`, saturating at [`CORE`].
fn level_from(buf: &mut [u32], need: usize) -> u32 {
    if need == 0 {
        return CORE;
    }
    if buf.len() < need {
        return 0;
    }
    let idx = need - 1;
    let (_, kth, _) = buf.select_nth_unstable_by(idx, |a, b| b.cmp(a));
    kth.saturating_add(1)
}

/// Scratch buffers reused across repairs.
#[derive(Debug, Clone, Default)]
struct Scratch {
    stamp: Vec<u32>,
    epoch: u32,
    seen: Vec<u32>,
    raised: Vec<u32>,
    deficit: Vec<u32>,
    buf: Vec<u32>,
    seeds: Vec<Vertex>,
}

impl Scratch {
    fn next_epoch(&mut self, n: usize) -> u32 {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.seen.resize(n, 0);
            self.raised.resize(n, 0);
            self.deficit.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }
}

/// Restores the level fixed point after `net` was applied to `g`.
fn repair<S: Support>(g: &DynamicGraph, map: &mut LevelMap, net: &NetChange, scratch: &mut Scratch) -> usize {
    for &(u, v) in &net.inserted {
        if map.level[u as usize] == CORE && map.level[v as usize] == CORE {
            map.core_edges += 1;
        }
    }
    for &(u, v) in &net.deleted {
        if map.level[u as usize] == CORE && map.level[v as usize] == CORE {
            map.core_edges -= 1;
        }
    }

    // Raise everything an insertion could lift, then walk levels down.
    let epoch = scratch.next_epoch(g.n());
    let mut up = std::mem::take(&mut scratch.seeds);
    up.clear();
    for &(u, v) in &net.inserted {
        S::touched_by(g, u, v, &mut up);
    }
    up.sort_unstable();
    up.dedup();
    let mut closure = Vec::new();
    for &v in &up {
        if scratch.stamp[v as usize] != epoch {
            scratch.stamp[v as usize] = epoch;
            closure.push(v);
        }
    }
    // Only a neighbor below `w` can lift `w`; with one support per neighbor,
    // `w` also needs as many lifted lower neighbors as it is short of supports.
    let mut i = 0;
    while i < closure.len() {
        let x = closure[i];
        let lx = map.level[x as usize];
        for &w in g.neighbors(x) {
            let wi = w as usize;
            let lw = map.level[wi];
            if scratch.stamp[wi] == epoch || lw <= lx || lw == CORE {
                continue;
            }
            if S::ONE_SUPPORT_PER_NEIGHBOR {
                if scratch.seen[wi] != epoch {
                    scratch.seen[wi] = epoch;
                    scratch.raised[wi] = 0;
                    let have = g.neighbors(w).iter().filter(|&&y| map.level[y as usize] >= lw).count();
                    scratch.deficit[wi] = map.need.saturating_sub(have) as u32;
                }
                scratch.raised[wi] += 1;
                if scratch.raised[wi] < scratch.deficit[wi] {
                    continue;
                }
            }
            scratch.stamp[wi] = epoch;
            closure.push(w);
        }
        i += 1;
    }
    for &x in &closure {
        map.set(g, x, CORE);
    }

    let mut down = up;
    down.clear();
    for &(u, v) in &net.deleted {
        S::touched_by(g, u, v, &mut down);
    }
    down.extend_from_slice(&closure);
    down.sort_unstable();
    down.dedup();

    // Settle vertices in increasing order of their new level. Keys are lower
    // bounds on a vertex's support level function; a vertex whose recomputed
    // value equals the smallest key is final, because every later change
    // happens at a level at least as high.
    let queued = scratch.next_epoch(g.n());
    let mut heap: BinaryHeap<Reverse<(u32, Vertex)>> = BinaryHeap::with_capacity(down.len());
    for &v in &down {
        scratch.stamp[v as usize] = queued;
        scratch.raised[v as usize] = 0;
        heap.push(Reverse((0, v)));
    }
    let mut processed = 0;
    let mut buf = std::mem::take(&mut scratch.buf);
    while let Some(Reverse((key, v))) = heap.pop() {
        let vi = v as usize;
        if scratch.stamp[vi] != queued || scratch.raised[vi] != key {
            continue;
        }
        scratch.stamp[vi] = 0;
        processed += 1;
        buf.clear();
        S::supports(g, &map.level, v, &mut buf);
        let f = level_from(&mut buf, map.need);
        if f >= map.level[vi] {
            continue;
        }
        if f > key {
            scratch.stamp[vi] = queued;
            scratch.raised[vi] = f;
            heap.push(Reverse((f, v)));
            continue;
        }
        map.set(g, v, f);
        let bound = f.saturating_add(1);
        for &w in g.neighbors(v) {
            let wi = w as usize;
            if map.level[wi] > bound && (scratch.stamp[wi] != queued || scratch.raised[wi] > bound) {
                scratch.stamp[wi] = queued;
                scratch.raised[wi] = bound;
                heap.push(Reverse((bound, w)));
            }
        }
    }
    scratch.buf = buf;
    scratch.seeds = down;
    processed
}

/// Result of a one-off peel.
#[derive(Debug, Clone, PartialEq)]
pub struct PeelOutcome {
    pub threshold: f64,
    /// `None` for vertices outside the start set.
    pub level: Vec<Option<u32>>,
    /// Surviving vertices, ascending.
    pub core: Vec<Vertex>,
    /// Number of nonempty removal rounds.
    pub rounds: u32,
}

impl PeelOutcome {
    /// Layer `r`: vertices still present after `r` rounds.
    pub fn layer(&self, r: u32) -> Vec<Vertex> {
        (0..self.level.len() as Vertex)
            .filter(|&v| self.level[v as usize].is_some_and(|l| l >= r))
            .collect()
    }
}

pub(crate) fn peel_with<S: Support>(g: &DynamicGraph, start: Option<&[Vertex]>, threshold: f64) -> PeelOutcome {
    let n = g.n();
    let alive = match start {
        None => vec![true; n],
        Some(set) => {
            let mut a = vec![false; n];
            for &v in set {
                a[v as usize] = true;
            }
            a
        }
    };
    let members = alive.clone();
    let raw = S::static_levels(g, alive, threshold_need(threshold));
    let level: Vec<Option<u32>> = (0..n).map(|v| members[v].then_some(raw[v])).collect();
    let core: Vec<Vertex> = (0..n as Vertex).filter(|&v| level[v as usize] == Some(CORE)).collect();
    let rounds = level.iter().flatten().filter(|&&l| l != CORE).map(|&l| l + 1).max().unwrap_or(0);
    PeelOutcome {
        threshold,
        level,
        core,
        rounds,
    }
}

/// Peels the subgraph induced by `start` (all vertices when `None`) at
/// degree threshold `2β(1+ε)`. A vertex with degree exactly at the threshold stays.
pub fn static_peel(g: &DynamicGraph, start: Option<&[Vertex]>, beta: f64, eps: f64) -> PeelOutcome {
    peel_with::<Edges>(g, start, 2.0 * beta * (1.0 + eps))
}

/// Largest grid guess whose peel leaves a nonempty core, with its layers.
/// The candidate's density is at least `β*/(2(1+ε))`.
pub fn grid_search(g: &DynamicGraph, eps: f64) -> DensePeeler {
    DensePeeler::build(g, eps)
}

/// Layer structure maintained under batches of edge updates.
#[derive(Debug, Clone)]
pub struct Peeler<S: Support> {
    eps: f64,
    /// Grid index of the current threshold; `None` when there is nothing to peel.
    index: Option<u32>,
    main: LevelMap,
    probe: LevelMap,
    rebuilds: u64,
    scratch: Scratch,
    _kind: PhantomData<S>,
}

pub type DensePeeler = Peeler<Edges>;

impl<S: Support> Peeler<S> {
    /// Builds layers at the largest grid threshold with a nonempty core.
    pub fn build(g: &DynamicGraph, eps: f64) -> Self {
        assert!(eps > 0.0, "eps must be positive");
        let mut p = Peeler {
            eps,
            index: None,
            main: LevelMap::from_levels(g, 1, vec![0; g.n()]),
            probe: LevelMap::from_levels(g, 1, vec![0; g.n()]),
            rebuilds: 0,
            scratch: Scratch::default(),
            _kind: PhantomData,
        };
        p.regrid(g);
        p
    }

    fn threshold_at(&self, i: u32) -> f64 {
        (1.0 + self.eps).powi(i as i32)
    }

    fn map_at(&self, g: &DynamicGraph, i: u32) -> LevelMap {
        let need = threshold_need(self.threshold_at(i));
        LevelMap::from_levels(g, need, S::static_levels(g, vec![true; g.n()], need))
    }

    fn regrid(&mut self, g: &DynamicGraph) {
        let top = (0..).find(|&i| threshold_need(self.threshold_at(i)) > g.max_degree() * g.max_degree() + 1).unwrap();
        let first = self.map_at(g, 0);
        if first.core_size == 0 {
            self.index = None;
            self.main = first.clone();
            self.probe = first;
            return;
        }
        // Largest index with a nonempty core; emptiness is monotone in the index.
        let (mut lo, mut hi) = (0u32, top);
        let mut best = first;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            let m = self.map_at(g, mid);
            if m.core_size > 0 {
                lo = mid;
                best = m;
            } else {
                hi = mid;
            }
        }
        self.index = Some(lo);
        self.probe = self.map_at(g, lo + 1);
        self.main = best;
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Current density guess (`0` when the graph has nothing to peel).
    pub fn guess(&self) -> f64 {
        match self.index {
            Some(i) => self.threshold_at(i) / (S::SCALE * (1.0 + self.eps)),
            None => 0.0,
        }
    }

    pub fn threshold(&self) -> Option<f64> {
        self.index.map(|i| self.threshold_at(i))
    }

    pub fn levels(&self) -> &LevelMap {
        &self.main
    }

    pub fn probe_levels(&self) -> &LevelMap {
        &self.probe
    }

    pub fn candidate(&self) -> Vec<Vertex> {
        self.main.core()
    }

    /// Density (edges or triangles per vertex) of the candidate.
    pub fn candidate_density(&self, g: &DynamicGraph) -> f64 {
        if self.main.core_size == 0 {
            return 0.0;
        }
        S::core_count(g, &self.main.level, self.main.core_edges) as f64 / self.main.core_size as f64
    }

    pub fn rebuilds(&self) -> u64 {
        self.rebuilds
    }

    /// Whether the candidate density has left `[guess, s·guess·(1+ε)²]`, the
    /// candidate is empty, or the probe found a core one grid step up.
    pub fn needs_rebuild(&self, g: &DynamicGraph) -> bool {
        let Some(_) = self.index else {
            return g.m() > 0 && self.map_at(g, 0).core_size > 0;
        };
        if self.main.core_size == 0 || self.probe.core_size > 0 {
            return true;
        }
        let rho = self.candidate_density(g);
        let beta = self.guess();
        rho < beta * (1.0 - 1e-12) || rho > S::SCALE * beta * (1.0 + self.eps).powi(2) * (1.0 + 1e-12)
    }

    /// Repairs the layers after `updates`, which `g` already reflects.
    /// Returns whether a full regrid was needed.
    pub fn apply_batch(&mut self, g: &DynamicGraph, updates: &[TimedUpdate]) -> bool {
        let net = NetChange::of(g, updates);
        self.apply_net(g, &net)
    }

    pub fn apply_net(&mut self, g: &DynamicGraph, net: &NetChange) -> bool {
        if net.is_empty() {
            return false;
        }
        if self.index.is_some() {
            repair::<S>(g, &mut self.main, net, &mut self.scratch);
            repair::<S>(g, &mut self.probe, net, &mut self.scratch);
        }
        if self.needs_rebuild(g) {
            self.regrid(g);
            self.rebuilds += 1;
            return true;
        }
        false
    }

    /// Compares the maintained levels with a from-scratch peel at the same threshold.
    pub fn audit(&self, g: &DynamicGraph) -> Vec<String> {
        let mut out = Vec::new();
        let Some(i) = self.index else {
            return out;
        };
        for (name, map, idx) in [("main", &self.main, i), ("probe", &self.probe, i + 1)] {
            let fresh = self.map_at(g, idx);
            if fresh.level != map.level {
                let bad = (0..g.n()).filter(|&v| fresh.level[v] != map.level[v]).count();
                out.push(format!("{name}: {bad} vertex level(s) differ"));
            }
            if fresh.core_size != map.core_size || fresh.core_edges != map.core_edges {
                out.push(format!(
                    "{name}: core ({}, {}) expected ({}, {})",
                    map.core_size, map.core_edges, fresh.core_size, fresh.core_edges
                ));
            }
        }
        out
    }
}
