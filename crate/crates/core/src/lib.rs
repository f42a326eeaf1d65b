//! Dynamic-graph toolkit built around the wedge picking model of triadic
//! closure: simulation, parameter learning, degree-growth based batch
//! scheduling, and rest-and-run maintenance of approximate densest and
//! tri-densest subgraphs with exact oracles for validation.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod ingest;
pub mod learn;
pub mod oracle;
pub mod peel;
pub mod report;
pub mod runner;
pub mod schedule;
pub mod sim;
pub mod stream;
pub mod tripeel;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{DynamicGraph, Vertex};
pub use sim::ModelParams;
