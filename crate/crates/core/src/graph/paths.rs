use std::collections::VecDeque;

use num_bigint::BigUint;

use super::{ArcId, Digraph, Path, VertexId};
use crate::error::{Error, Result};

/// Paths returned by [`enumerate_st_paths`] when no limit is given.
pub const DEFAULT_PATH_LIMIT: usize = 1_000_000;

/// All simple `s`-`t` paths, in lexicographic order of their arc-id sequences.
///
/// Fails with [`Error::PathLimitExceeded`] once more than `limit` paths
/// (default [`DEFAULT_PATH_LIMIT`]) have been found.
pub fn enumerate_st_paths(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    limit: Option<usize>,
) -> Result<Vec<Path>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::SourceEqualsTarget(s));
    }
    let limit = limit.unwrap_or(DEFAULT_PATH_LIMIT);
    // vertices that cannot reach t are never entered
    let useful = co_reachable(g, t);
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut arcs: Vec<ArcId> = Vec::new();
    let mut vertices = vec![s];
    // explicit DFS stack of (vertex, next out-arc position)
    let mut stack = vec![(s, 0usize)];
    on_path[s.0] = true;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let outs = g.out_arcs(v);
        if *next == outs.len() {
            stack.pop();
            on_path[v.0] = false;
            vertices.pop();
            arcs.pop();
            continue;
        }
        let e = outs[*next];
        *next += 1;
        let w = g.to(e);
        if on_path[w.0] || !useful[w.0] {
            continue;
        }
        if w == t {
            if out.len() == limit {
                return Err(Error::PathLimitExceeded { limit });
            }
            let mut pa = arcs.clone();
            pa.push(e);
            let mut pv = vertices.clone();
            pv.push(w);
            out.push(Path::from_parts_unchecked(pa, pv));
            continue;
        }
        on_path[w.0] = true;
        arcs.push(e);
        vertices.push(w);
        stack.push((w, 0));
    }
    Ok(out)
}

/// Topological order of the vertices, or `None` if `g` has a directed cycle.
pub fn topological_order(g: &Digraph) -> Option<Vec<VertexId>> {
    let mut indeg: Vec<usize> = g.vertices().map(|v| g.in_arcs(v).len()).collect();
    let mut queue: VecDeque<VertexId> = g.vertices().filter(|v| indeg[v.0] == 0).collect();
    let mut order = Vec::with_capacity(g.vertex_count());
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in g.out_arcs(v) {
            let w = g.to(e);
            indeg[w.0] -= 1;
            if indeg[w.0] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == g.vertex_count()).then_some(order)
}

pub fn is_acyclic(g: &Digraph) -> bool {
    topological_order(g).is_some()
}

/// `mask[v]` is true iff `v` is reachable from `s` (including `s`).
pub fn reachable_from(g: &Digraph, s: VertexId) -> Vec<bool> {
    search(g, s, |v| g.out_arcs(v).iter().map(|&e| g.to(e)).collect())
}

/// `mask[v]` is true iff `t` is reachable from `v` (including `t`).
pub fn co_reachable(g: &Digraph, t: VertexId) -> Vec<bool> {
    search(g, t, |v| g.in_arcs(v).iter().map(|&e| g.from(e)).collect())
}

fn search<F>(g: &Digraph, start: VertexId, next: F) -> Vec<bool>
where
    F: Fn(VertexId) -> Vec<VertexId>,
{
    let mut seen = vec![false; g.vertex_count()];
    seen[start.0] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in next(v) {
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Number of corner-to-corner paths in the `p x q` grid: `C(p+q-2, p-1)`.
pub fn count_grid_paths(p: usize, q: usize) -> BigUint {
    assert!(p >= 2 && q >= 2, "grid needs p, q >= 2");
    let n = p + q - 2;
    let k = (p - 1).min(q - 1);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}
