//! Exact solvers: brute force over all s-t paths and the linear shortest path.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{enumerate_st_paths, topological_order, ArcId, Digraph, Path, VertexId};
use crate::instance::{path_cost_unchecked, CostVector, QsppInstance, SppInstance};
use crate::parallel::Execution;
use crate::rational::Rational;

/// Minimum-cost s-t path by enumerating every path. Ties go to the path that
/// comes first in enumeration order.
pub fn brute_force_solve(inst: &QsppInstance, limit: Option<usize>) -> Result<(Path, Rational)> {
    brute_force_solve_with(inst, limit, Execution::default())
}

pub fn brute_force_solve_with(
    inst: &QsppInstance,
    limit: Option<usize>,
    exec: Execution,
) -> Result<(Path, Rational)> {
    let paths = enumerate_st_paths(&inst.graph, inst.s, inst.t, limit)?;
    let costs = exec.map(&paths, |p| path_cost_unchecked(inst, p.arcs()));
    let best = costs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .ok_or(Error::NoPath { from: inst.s, to: inst.t })?;
    Ok((paths[best].clone(), costs[best].clone()))
}

/// Shortest s-t path for linear costs.
///
/// Nonnegative costs use label setting on any graph; costs with negative
/// entries are relaxed in topological order and need an acyclic graph.
pub fn spp_solve(inst: &SppInstance) -> Result<(Path, Rational)> {
    let (arcs, cost) = shortest_path(&inst.graph, inst.s, inst.t, &inst.c)?;
    let path = Path::new(&inst.graph, arcs)?;
    Ok((path, cost))
}

pub(crate) fn shortest_path(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    c: &CostVector,
) -> Result<(Vec<ArcId>, Rational)> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SourceEqualsTarget(s));
    }
    let pred = if c.is_nonnegative() {
        label_setting(g, s, c)
    } else {
        let order = topological_order(g).ok_or(Error::NegativeCostOnCyclicGraph)?;
        dag_relax(g, s, c, &order)
    };
    let mut arcs = Vec::new();
    let mut v = t;
    while v != s {
        let e = pred[v.0].ok_or(Error::NoPath { from: s, to: t })?;
        arcs.push(e);
        v = g.from(e);
    }
    arcs.reverse();
    let cost = arcs.iter().map(|&e| &c[e]).sum();
    Ok((arcs, cost))
}

// Dijkstra; an arc replaces a label only on strict improvement, and arcs are
// scanned in id order.
fn label_setting(g: &Digraph, s: VertexId, c: &CostVector) -> Vec<Option<ArcId>> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[s.0] = Some(Rational::zero());
    heap.push(Reverse((Rational::zero(), s.0)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &e in g.out_arcs(VertexId(v)) {
            let w = g.to(e).0;
            if done[w] {
                continue;
            }
            let nd = &d + &c[e];
            if dist[w].as_ref().is_none_or(|old| nd < *old) {
                dist[w] = Some(nd.clone());
                pred[w] = Some(e);
                heap.push(Reverse((nd, w)));
            }
        }
    }
    pred
}

fn dag_relax(g: &Digraph, s: VertexId, c: &CostVector, order: &[VertexId]) -> Vec<Option<ArcId>> {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![None; n];
    dist[s.0] = Some(Rational::zero());
    for &v in order {
        let Some(d) = dist[v.0].clone() else { continue };
        for &e in g.out_arcs(v) {
            let w = g.to(e).0;
            let nd = &d + &c[e];
            if dist[w].as_ref().is_none_or(|old| nd < *old) {
                dist[w] = Some(nd);
                pred[w] = Some(e);
            }
        }
    }
    pred
}
