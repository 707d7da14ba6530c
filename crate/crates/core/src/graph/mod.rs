//! Directed multigraphs with stable arc identities, the generators used
//! throughout the crate, and s-t path machinery.

mod generators;
mod paths;

use std::fmt;

use crate::error::{Error, Result};

pub use generators::{
    make_complete_symmetric, make_directed_cycle, make_grid, make_hypercube, make_tournament,
    Grid,
};
pub use paths::{
    co_reachable, count_grid_paths, enumerate_st_paths, is_acyclic, reachable_from,
    topological_order, DEFAULT_PATH_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArcId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Immutable directed multigraph.
///
/// Arcs are addressed by dense [`ArcId`]s in insertion order; parallel arcs are
/// allowed, self-loops are not. Each arc leaves its `from` vertex and enters
/// its `to` vertex. Adjacency lists are kept sorted by arc id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    ends: Vec<(VertexId, VertexId)>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut ends = Vec::new();
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (from, to) in arcs {
            if from >= n {
                return Err(Error::VertexOutOfRange(from, n));
            }
            if to >= n {
                return Err(Error::VertexOutOfRange(to, n));
            }
            if from == to {
                return Err(Error::SelfLoop(from));
            }
            let id = ArcId(ends.len());
            out_arcs[from].push(id);
            in_arcs[to].push(id);
            ends.push((VertexId(from), VertexId(to)));
        }
        Ok(Digraph { n, ends, out_arcs, in_arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> {
        (0..self.ends.len()).map(ArcId)
    }

    /// `(from, to)` of arc `e`.
    pub fn ends(&self, e: ArcId) -> (VertexId, VertexId) {
        self.ends[e.0]
    }

    pub fn from(&self, e: ArcId) -> VertexId {
        self.ends[e.0].0
    }

    pub fn to(&self, e: ArcId) -> VertexId {
        self.ends[e.0].1
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v.0]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v.0]
    }

    /// Lowest-id arc from `u` to `v`.
    pub fn find_arc(&self, u: VertexId, v: VertexId) -> Option<ArcId> {
        self.out_arcs.get(u.0)?.iter().copied().find(|&e| self.to(e) == v)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v.0, self.n))
        }
    }

    /// Rebuilds the adjacency indices from the arc list and compares.
    pub fn adjacency_consistent(&self) -> bool {
        match Digraph::new(self.n, self.ends.iter().map(|&(a, b)| (a.0, b.0))) {
            Ok(rebuilt) => rebuilt == *self,
            Err(_) => false,
        }
    }
}

/// A simple directed path given by its arcs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    arcs: Vec<ArcId>,
    vertices: Vec<VertexId>,
}

impl Path {
    /// Validates that `arcs` chain, are nonempty and visit no vertex twice.
    pub fn new(g: &Digraph, arcs: Vec<ArcId>) -> Result<Self> {
        let Some(&first) = arcs.first() else {
            return Err(Error::InvalidPath("empty arc sequence".into()));
        };
        if let Some(bad) = arcs.iter().find(|e| e.0 >= g.arc_count()) {
            return Err(Error::ArcOutOfRange(bad.0, g.arc_count()));
        }
        let mut vertices = vec![g.from(first)];
        let mut seen = vec![false; g.vertex_count()];
        seen[g.from(first).0] = true;
        for (k, &e) in arcs.iter().enumerate() {
            let (from, to) = g.ends(e);
            if from != *vertices.last().unwrap() {
                return Err(Error::InvalidPath(format!("arc {e} at position {k} does not chain")));
            }
            if seen[to.0] {
                return Err(Error::InvalidPath(format!("vertex {to} repeated")));
            }
            seen[to.0] = true;
            vertices.push(to);
        }
        Ok(Path { arcs, vertices })
    }

    /// Builds the path through `vertices`, taking the lowest-id arc between
    /// consecutive vertices.
    pub fn from_vertices(g: &Digraph, vertices: &[usize]) -> Result<Self> {
        let arcs = vertices
            .windows(2)
            .map(|w| {
                g.find_arc(VertexId(w[0]), VertexId(w[1]))
                    .ok_or_else(|| Error::InvalidPath(format!("no arc {} -> {}", w[0], w[1])))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::new(g, arcs)
    }

    pub(crate) fn from_parts_unchecked(arcs: Vec<ArcId>, vertices: Vec<VertexId>) -> Self {
        Path { arcs, vertices }
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn contains_arc(&self, e: ArcId) -> bool {
        self.arcs.contains(&e)
    }

    /// 0/1 characteristic vector over `m` arcs.
    pub fn characteristic(&self, m: usize) -> Vec<bool> {
        let mut x = vec![false; m];
        for e in &self.arcs {
            x[e.0] = true;
        }
        x
    }

    pub fn vertex_indices(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.0).collect()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
