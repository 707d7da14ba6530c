use super::{ArcId, Digraph, VertexId};
use crate::error::{Error, Result};

/// The directed grid graph with `p` rows and `q` columns.
///
/// Vertex `(i, j)` (0-based row `i`, column `j`) has index `i * q + j`. Arcs are
/// numbered by visiting vertices in index order and emitting the down arc
/// `(i, j) -> (i + 1, j)` before the right arc `(i, j) -> (i, j + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    p: usize,
    q: usize,
    graph: Digraph,
    down: Vec<Option<ArcId>>,
    right: Vec<Option<ArcId>>,
}

impl Grid {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidSize(format!("grid needs p, q >= 2, got {p}x{q}")));
        }
        let mut arcs = Vec::with_capacity(2 * p * q - p - q);
        let mut down = vec![None; p * q];
        let mut right = vec![None; p * q];
        for i in 0..p {
            for j in 0..q {
                let v = i * q + j;
                if i + 1 < p {
                    down[v] = Some(ArcId(arcs.len()));
                    arcs.push((v, v + q));
                }
                if j + 1 < q {
                    right[v] = Some(ArcId(arcs.len()));
                    arcs.push((v, v + 1));
                }
            }
        }
        let graph = Digraph::new(p * q, arcs)?;
        Ok(Grid { p, q, graph, down, right })
    }

    /// Identifies `g` as a grid graph in this crate's numbering.
    pub fn recognize(g: &Digraph) -> Option<Grid> {
        let n = g.vertex_count();
        (2..=n / 2)
            .filter(|&p| n.is_multiple_of(p))
            .filter_map(|p| Grid::new(p, n / p).ok())
            .find(|grid| grid.graph == *g)
    }

    pub fn rows(&self) -> usize {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.q
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }

    pub fn vertex(&self, i: usize, j: usize) -> VertexId {
        debug_assert!(i < self.p && j < self.q);
        VertexId(i * self.q + j)
    }

    pub fn coords(&self, v: VertexId) -> (usize, usize) {
        (v.0 / self.q, v.0 % self.q)
    }

    pub fn source(&self) -> VertexId {
        VertexId(0)
    }

    pub fn target(&self) -> VertexId {
        VertexId(self.p * self.q - 1)
    }

    /// Arc `(i, j) -> (i + 1, j)`.
    pub fn down(&self, i: usize, j: usize) -> ArcId {
        self.down[i * self.q + j].expect("no down arc from the last row")
    }

    /// Arc `(i, j) -> (i, j + 1)`.
    pub fn right(&self, i: usize, j: usize) -> ArcId {
        self.right[i * self.q + j].expect("no right arc from the last column")
    }

    /// Whether arc `e` lies inside the top-left `rows x cols` subgrid.
    pub fn arc_in_subgrid(&self, e: ArcId, rows: usize, cols: usize) -> bool {
        let (a, b) = self.graph.ends(e);
        let (ia, ja) = self.coords(a);
        let (ib, jb) = self.coords(b);
        ia < rows && ib < rows && ja < cols && jb < cols
    }
}

pub fn make_grid(p: usize, q: usize) -> Result<Digraph> {
    Grid::new(p, q).map(Grid::into_graph)
}

/// Complete symmetric digraph on `n` vertices.
///
/// Unsimplified, arcs are all ordered pairs in lexicographic order. Simplified,
/// arcs into `s`, out of `t` and the arc `(s, t)` are dropped and the rest are
/// grouped as: arcs leaving `s`, arcs between inner vertices, arcs entering `t`
/// (each group lexicographic).
pub fn make_complete_symmetric(
    n: usize,
    simplified: bool,
    s: VertexId,
    t: VertexId,
) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("complete digraph needs n >= 2, got {n}")));
    }
    if s.0 >= n {
        return Err(Error::VertexOutOfRange(s.0, n));
    }
    if t.0 >= n {
        return Err(Error::VertexOutOfRange(t.0, n));
    }
    if s == t {
        return Err(Error::SourceEqualsTarget(s));
    }
    let pairs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
    if !simplified {
        return Digraph::new(n, pairs);
    }
    let (s, t) = (s.0, t.0);
    let inner = |v: usize| v != s && v != t;
    let mut arcs: Vec<(usize, usize)> = (0..n).filter(|&v| inner(v)).map(|v| (s, v)).collect();
    arcs.extend(pairs.filter(|&(u, v)| inner(u) && inner(v)));
    arcs.extend((0..n).filter(|&v| inner(v)).map(|v| (v, t)));
    Digraph::new(n, arcs)
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn make_directed_cycle(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("cycle needs n >= 2, got {n}")));
    }
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Directed hypercube: an arc `u -> v` whenever `v` is `u` with one extra bit set.
pub fn make_hypercube(n: usize) -> Result<Digraph> {
    if !(1..=20).contains(&n) {
        return Err(Error::InvalidSize(format!("hypercube dimension must be in 1..=20, got {n}")));
    }
    let size = 1usize << n;
    let arcs = (0..size)
        .flat_map(|u| (0..n).filter(move |b| u & (1 << b) == 0).map(move |b| (u, u | (1 << b))));
    Digraph::new(size, arcs)
}

/// Tournament on `n` vertices.
///
/// Unordered pairs `{i, j}` (`i < j`) are taken in lexicographic order; if the
/// pair's bit in `orientation_bits` is set the arc is `j -> i`, else `i -> j`.
pub fn make_tournament(n: usize, orientation_bits: u64) -> Result<Digraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if n < 2 || pairs > 64 {
        return Err(Error::InvalidSize(format!("tournament size must be in 2..=11, got {n}")));
    }
    if pairs < 64 && orientation_bits >> pairs != 0 {
        return Err(Error::InvalidSize(format!(
            "orientation bits {orientation_bits:#x} exceed the {pairs} vertex pairs"
        )));
    }
    let arcs = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .enumerate()
        .map(|(k, (i, j))| if orientation_bits >> k & 1 == 1 { (j, i) } else { (i, j) });
    Digraph::new(n, arcs)
}
