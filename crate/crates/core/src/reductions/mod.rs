//! Hardness reductions into QSPP and QAPLIB ingestion.

mod disjoint;
mod qap;
mod qaplib;

pub use disjoint::{disjoint_to_aqspp, DisjointPathsInstance};
pub use qap::{brute_force_qap, qap_cost, qap_to_qspp, QapInstance, QapReduction};
pub use qaplib::{parse_qaplib, QaplibInstance};
