//! Wall-clock scaling of the grid linearization.

use std::fmt::Write;
use std::time::Instant;

use crate::error::Result;
use crate::generate::{generate, Family, QFill};
use crate::linearization::linearize_grid_with;
use crate::parallel::Execution;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub p: usize,
    pub q: usize,
    pub arcs: usize,
    pub millis: f64,
    pub linearizable: bool,
}

/// Times the grid linearization on weak-sum instances for every size
/// `2..=max_p` by `2..=max_q`. The instance of size `p x q` uses seed
/// `seed + 1000 p + q`.
pub fn bench_grid(max_p: usize, max_q: usize, seed: u64, exec: Execution) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for p in 2..=max_p {
        for q in 2..=max_q {
            let inst = generate(&Family::Grid { p, q }, QFill::WeakSum { max: 9 }, seed + 1000 * p as u64 + q as u64)?;
            let start = Instant::now();
            let res = linearize_grid_with(&inst, exec)?;
            let millis = start.elapsed().as_secs_f64() * 1000.0;
            rows.push(BenchRow { p, q, arcs: inst.arc_count(), millis, linearizable: res.is_linearizable() });
        }
    }
    Ok(rows)
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = format!("{:>4} {:>4} {:>6} {:>12} {:>13}\n", "p", "q", "arcs", "time_ms", "linearizable");
    for r in rows {
        writeln!(out, "{:>4} {:>4} {:>6} {:>12.3} {:>13}", r.p, r.q, r.arcs, r.millis, r.linearizable).unwrap();
    }
    out
}
