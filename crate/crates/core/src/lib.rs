//! Exact solvers for the minimum reload-cost diameter spanning tree problem
//! on edge-colored graphs.
//!
//! * [`graph`]: colored graphs, reload-cost tables and tree evaluation.
//! * [`oracle`]: exhaustive spanning-tree enumeration.
//! * [`cactus`]: polynomial-time solver for cacti.
//! * [`twdp`]: dynamic program over a nice tree decomposition.
//! * [`generators`]: reduction-based and random instance generators.

// Symmetric matrix scans read more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod cactus;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod search;
pub mod twdp;
pub mod twosat;

pub use error::{Error, Result};
pub use format::{parse_instance, parse_raw_instance, serialize_instance, RawInstance};
pub use graph::{
    check_triangle_inequality, eccentricity, path_reload_cost, reload_distance, tree_diameter, ColoredGraph,
    Color, Cost, Edge, EdgeId, Instance, ReloadCostTable, SpanningForest, Vertex,
};
