use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, VertexId};
use crate::instance::QsppInstance;
use crate::rational::int;

/// Two arc-disjoint paths: find an `s`-`t` path and an `s_bar`-`t_bar` path
/// sharing no arc.
#[derive(Debug, Clone)]
pub struct DisjointPathsInstance {
    pub graph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
    pub s_bar: VertexId,
    pub t_bar: VertexId,
}

impl DisjointPathsInstance {
    pub fn new(graph: Digraph, s: VertexId, t: VertexId, s_bar: VertexId, t_bar: VertexId) -> Result<Self> {
        for v in [s, t, s_bar, t_bar] {
            graph.check_vertex(v)?;
        }
        if s == s_bar || t == t_bar {
            return Err(Error::Precondition("the two pairs need distinct sources and distinct targets".into()));
        }
        if s == t || s_bar == t_bar {
            return Err(Error::Precondition("each pair needs distinct endpoints".into()));
        }
        Ok(DisjointPathsInstance { graph, s, t, s_bar, t_bar })
    }
}

/// Builds the adjacent QSPP instance whose optimum is zero exactly when the
/// two arc-disjoint paths exist.
///
/// Vertex `v` is copied to `v` and `n + v`; arc `a = (u, v)` gets a midpoint
/// `2n + a` with arcs `4a..4a+4` being `(u1, N), (N, v1), (u2, N), (N, v2)`.
/// The final arc joins `t1` to `s_bar2`. Crossing copies at a midpoint costs 1.
pub fn disjoint_to_aqspp(dp: &DisjointPathsInstance) -> Result<QsppInstance> {
    let g = &dp.graph;
    let n = g.vertex_count();
    let mut arcs = Vec::with_capacity(4 * g.arc_count() + 1);
    for a in g.arc_ids() {
        let (u, v) = g.ends(a);
        let mid = 2 * n + a.0;
        arcs.extend([(u.0, mid), (mid, v.0), (n + u.0, mid), (mid, n + v.0)]);
    }
    arcs.push((dp.t.0, n + dp.s_bar.0));
    let graph = Digraph::new(2 * n + g.arc_count(), arcs)?;
    let mut inst = QsppInstance::zero(graph, dp.s, VertexId(n + dp.t_bar.0))?;
    for a in g.arc_ids() {
        let base = 4 * a.0;
        inst.q.set_sym(ArcId(base), ArcId(base + 3), int(1));
        inst.q.set_sym(ArcId(base + 2), ArcId(base + 1), int(1));
    }
    Ok(inst)
}
