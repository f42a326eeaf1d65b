//! Edge-event files: parsing, cleaning, id remapping and the cleaned format.
//!
//! Each non-comment line is `u v [t] [op]` or the four-column temporal form
//! `u v w t` whose weight column is ignored. A missing timestamp becomes the
//! line number; a missing op means add. Lines starting with `%` or `#` and
//! blank lines are comments.
//!
//! Events are stably sorted by timestamp and then replayed against an empty
//! edge set to drop self-loops, adds of live edges and removes of absent
//! edges. Vertex ids are assigned densely in order of first appearance among
//! the kept events, so writing the cleaned stream and ingesting it again
//! gives the same ids and the same bytes.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::Path;

use indexmap::IndexSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, Vertex};
use crate::stream::{Op, TimedUpdate};

/// How much of the cleaned stream forms the initial graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Split {
    /// Start from the empty graph.
    #[default]
    None,
    /// The first `k` cleaned events.
    Count(usize),
    /// Every event with timestamp at most `t`.
    Time(u64),
    /// Every event: a static graph.
    All,
}

impl std::str::FromStr for Split {
    type Err = Error;

    /// `none`, `all`, `count:K` or `time:T`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("split `{s}`: expected none, all, count:K or time:T"));
        match s.split_once(':') {
            None if s == "none" => Ok(Split::None),
            None if s == "all" => Ok(Split::All),
            Some(("count", k)) => k.parse().map(Split::Count).map_err(|_| bad()),
            Some(("time", t)) => t.parse().map(Split::Time).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Split::None => write!(f, "none"),
            Split::All => write!(f, "all"),
            Split::Count(k) => write!(f, "count:{k}"),
            Split::Time(t) => write!(f, "time:{t}"),
        }
    }
}

/// Line accounting. `comments + self_loops + duplicate_adds + absent_removes
/// + kept == lines`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CleaningReport {
    pub lines: usize,
    pub comments: usize,
    pub self_loops: usize,
    pub duplicate_adds: usize,
    pub absent_removes: usize,
    pub kept: usize,
}

#[derive(Debug, Clone)]
pub struct Ingested {
    /// External id of each dense vertex.
    pub ids: Vec<String>,
    /// Cleaned events, sorted by time, over dense ids.
    pub cleaned: Vec<TimedUpdate>,
    /// `cleaned[..split_at]` builds the initial graph.
    pub split_at: usize,
    /// Time the initial graph is taken at.
    pub start_time: u64,
    pub report: CleaningReport,
}

impl Ingested {
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn initial_graph(&self) -> DynamicGraph {
        let mut g = DynamicGraph::new(self.n());
        for u in &self.cleaned[..self.split_at] {
            u.apply(&mut g).expect("cleaned events replay");
        }
        g
    }

    pub fn events(&self) -> &[TimedUpdate] {
        &self.cleaned[self.split_at..]
    }

    /// The graph after every cleaned event.
    pub fn final_graph(&self) -> DynamicGraph {
        let mut g = DynamicGraph::new(self.n());
        for u in &self.cleaned {
            u.apply(&mut g).expect("cleaned events replay");
        }
        g
    }

    /// One `u v t op` line per cleaned event, external ids, op `+` or `-`.
    pub fn write_cleaned<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.cleaned {
            writeln!(out, "{} {} {} {}", self.ids[e.u as usize], self.ids[e.v as usize], e.t, e.op.symbol())?;
        }
        out.flush()?;
        Ok(())
    }
}

struct RawEvent {
    t: u64,
    u: usize,
    v: usize,
    op: Op,
}

fn parse_op(tok: &str) -> Option<Op> {
    match tok {
        "+" | "add" => Some(Op::Add),
        "-" | "remove" | "del" => Some(Op::Remove),
        _ => None,
    }
}

fn parse_time(tok: &str, line: usize) -> Result<u64> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("timestamp `{tok}` is not a nonnegative integer"),
    })
}

fn parse_line(toks: &[&str], line: usize) -> Result<(u64, Op)> {
    match toks.len() {
        2 => Ok((line as u64, Op::Add)),
        3 => match parse_op(toks[2]) {
            Some(op) => Ok((line as u64, op)),
            None => Ok((parse_time(toks[2], line)?, Op::Add)),
        },
        4 => match parse_op(toks[3]) {
            Some(op) => Ok((parse_time(toks[2], line)?, op)),
            None => {
                toks[2].parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("fourth column `{}` is neither an op nor a timestamp after a weight", toks[3]),
                })?;
                Ok((parse_time(toks[3], line)?, Op::Add))
            }
        },
        k => Err(Error::Parse {
            line,
            msg: format!("expected 2 to 4 columns, found {k}"),
        }),
    }
}

/// Parses and cleans an event stream.
pub fn ingest_reader<R: BufRead>(input: R, split: Split) -> Result<Ingested> {
    let mut report = CleaningReport::default();
    let mut names: IndexSet<String> = IndexSet::new();
    let mut raw = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let no = i + 1;
        report.lines += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            report.comments += 1;
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        let (t, op) = parse_line(&toks, no)?;
        let u = names.insert_full(toks[0].to_string()).0;
        let v = names.insert_full(toks[1].to_string()).0;
        raw.push(RawEvent { t, u, v, op });
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    raw.sort_by_key(|e| e.t);

    let mut live: HashSet<(usize, usize)> = HashSet::new();
    let mut dense: IndexSet<usize> = IndexSet::new();
    let mut cleaned = Vec::with_capacity(raw.len());
    for e in raw {
        if e.u == e.v {
            report.self_loops += 1;
            continue;
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        let keep = match e.op {
            Op::Add => live.insert(key),
            Op::Remove => live.remove(&key),
        };
        if !keep {
            match e.op {
                Op::Add => report.duplicate_adds += 1,
                Op::Remove => report.absent_removes += 1,
            }
            continue;
        }
        let u = dense.insert_full(e.u).0 as Vertex;
        let v = dense.insert_full(e.v).0 as Vertex;
        cleaned.push(TimedUpdate { t: e.t, u, v, op: e.op });
    }
    report.kept = cleaned.len();
    let ids = dense.iter().map(|&i| names[i].clone()).collect();

    let split_at = match split {
        Split::None => 0,
        Split::All => cleaned.len(),
        Split::Count(k) => k.min(cleaned.len()),
        Split::Time(t) => cleaned.partition_point(|e| e.t <= t),
    };
    let start_time = match split {
        Split::Time(t) => t,
        _ if split_at > 0 => cleaned[split_at - 1].t,
        _ => cleaned.first().map_or(0, |e| e.t.saturating_sub(1)),
    };
    Ok(Ingested {
        ids,
        cleaned,
        split_at,
        start_time,
        report,
    })
}

pub fn ingest_path(path: &Path, split: Split) -> Result<Ingested> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ingest_reader(std::io::BufReader::new(file), split)
}

pub fn ingest_str(text: &str, split: Split) -> Result<Ingested> {
    ingest_reader(text.as_bytes(), split)
}

/// Writes an initial graph (at time 0) followed by a trace, in the cleaned
/// format with decimal dense ids.
pub fn write_trace<W: Write>(g0: &DynamicGraph, events: &[TimedUpdate], mut out: W) -> Result<()> {
    for (u, v) in g0.edges() {
        writeln!(out, "{u} {v} 0 +")?;
    }
    for e in events {
        writeln!(out, "{} {} {} {}", e.u, e.v, e.t, e.op.symbol())?;
    }
    out.flush()?;
    Ok(())
}
