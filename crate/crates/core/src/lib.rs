//! Exact tools for the quadratic shortest path problem (QSPP).
//!
//! A QSPP instance `(G, s, t, c, Q)` asks for an `s`-`t` path minimising its
//! linear arc costs plus the pairwise interaction costs of its arcs. The crate
//! provides the instance model over exact rationals, brute-force and
//! special-case solvers, the QAP and arc-disjoint-path reductions, and
//! linearizability checks for complete digraphs and directed grid graphs.

pub mod aqspp;
pub mod bench;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod io;
pub mod linearization;
pub mod parallel;
pub mod rational;
pub mod reductions;
pub mod solve;
pub mod special;

pub use error::{Error, Result};
pub use graph::{ArcId, Digraph, Path, VertexId};
pub use instance::{path_cost, CostVector, InteractionMatrix, QsppInstance, SppInstance};
pub use parallel::Execution;
pub use rational::Rational;
