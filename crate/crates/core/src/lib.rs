//! Independent-set / forest partitions of plane graphs whose short cycles are
//! far apart.
//!
//! The crate covers the combinatorial toolkit around such partitions:
//! rotation-system plane graphs ([`plane_graph`]), short-cycle and
//! configuration detection ([`structures`]), exact (I,F)-coloring solvers
//! ([`coloring`]), an exact-rational discharging ledger ([`discharging`]),
//! brute-force reducibility checks on local gadgets ([`reducibility`]) and
//! instance generators, file formats and a batch driver ([`harness`]).

pub mod coloring;
pub mod discharging;
pub mod harness;
pub mod plane_graph;
pub mod reducibility;
pub mod structures;

pub use coloring::{Color, Coloring};
pub use plane_graph::{Adjacency, FaceId, FaceWalk, GraphError, PlaneGraph, SimpleGraph, VertexId};
