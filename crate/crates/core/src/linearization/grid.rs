//! Linearization on directed grid graphs.
//!
//! Vectors are kept in reduced form: at every vertex other than `s` and the
//! target the outgoing arc `f` (right, or down in the last column) carries
//! zero cost, which leaves the support `J` = {down arcs outside the last
//! column} ∪ {the right arc out of `s`}. Sub-instances are top-left windows of
//! the grid whose target is the window's bottom-right corner.

use num_traits::Zero;

use super::{LinearizationResult, Witness};
use crate::error::{Error, Result};
use crate::graph::{is_acyclic, ArcId, Grid, Path, VertexId};
use crate::instance::{path_cost_unchecked, CostVector, InteractionMatrix, QsppInstance};
use crate::parallel::Execution;
use crate::rational::{int, Rational};

/// Processing order of equal-depth vertices during reduction. The result does
/// not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieOrder {
    #[default]
    IncreasingColumn,
    DecreasingColumn,
}

#[derive(Clone, Copy)]
struct Window<'a> {
    grid: &'a Grid,
    rows: usize,
    cols: usize,
}

impl<'a> Window<'a> {
    fn full(grid: &'a Grid) -> Self {
        Window { grid, rows: grid.rows(), cols: grid.cols() }
    }

    fn sub(self, rows: usize, cols: usize) -> Self {
        Window { grid: self.grid, rows, cols }
    }

    fn arcs(&self) -> usize {
        self.grid.graph().arc_count()
    }

    fn down(&self, i: usize, j: usize) -> Option<ArcId> {
        (i + 1 < self.rows && j < self.cols).then(|| self.grid.down(i, j))
    }

    fn right(&self, i: usize, j: usize) -> Option<ArcId> {
        (j + 1 < self.cols && i < self.rows).then(|| self.grid.right(i, j))
    }

    /// Arcs from `(0, 0)` following the legs `(is_down, length)`.
    fn walk(&self, legs: &[(bool, usize)]) -> Vec<ArcId> {
        let (mut i, mut j) = (0, 0);
        let mut arcs = Vec::new();
        for &(is_down, len) in legs {
            for _ in 0..len {
                if is_down {
                    arcs.push(self.grid.down(i, j));
                    i += 1;
                } else {
                    arcs.push(self.grid.right(i, j));
                    j += 1;
                }
            }
        }
        arcs
    }

    fn support(&self) -> Vec<ArcId> {
        if self.rows == 1 || self.cols == 1 {
            return self.right(0, 0).or(self.down(0, 0)).into_iter().collect();
        }
        let mut out = vec![self.grid.right(0, 0)];
        for i in 0..self.rows - 1 {
            for j in 0..self.cols - 1 {
                out.push(self.grid.down(i, j));
            }
        }
        out.sort();
        out
    }

    fn reduce(&self, c: &CostVector, tie: TieOrder) -> CostVector {
        let mut d = CostVector::zeros(self.arcs());
        for e in self.grid.graph().arc_ids() {
            if self.grid.arc_in_subgrid(e, self.rows, self.cols) {
                d[e] = c[e].clone();
            }
        }
        let last = self.rows + self.cols - 2;
        for depth in (1..last).rev() {
            let lo = depth.saturating_sub(self.rows - 1);
            let hi = depth.min(self.cols - 1);
            let columns: Vec<usize> = match tie {
                TieOrder::IncreasingColumn => (lo..=hi).collect(),
                TieOrder::DecreasingColumn => (lo..=hi).rev().collect(),
            };
            for j in columns {
                let i = depth - j;
                let right = self.right(i, j);
                let down = self.down(i, j);
                let f = right.or(down).expect("inner vertex has an outgoing arc");
                let val = std::mem::take(&mut d[f]);
                if val.is_zero() {
                    continue;
                }
                if i > 0 {
                    d[self.grid.down(i - 1, j)] += &val;
                }
                if j > 0 {
                    d[self.grid.right(i, j - 1)] += &val;
                }
                if right.is_some() {
                    if let Some(g) = down {
                        d[g] -= &val;
                    }
                }
            }
        }
        d
    }

    /// Critical paths as `(defining arc, arcs)` in the order used by the
    /// incremental cost update: consecutive paths differ in few arcs.
    fn critical(&self) -> Vec<(ArcId, Vec<ArcId>)> {
        let (r, c) = (self.rows, self.cols);
        if r == 1 {
            return vec![(self.grid.right(0, 0), self.walk(&[(false, c - 1)]))];
        }
        if c == 1 {
            return vec![(self.grid.down(0, 0), self.walk(&[(true, r - 1)]))];
        }
        let mut out = vec![(self.grid.right(0, 0), self.walk(&[(false, c - 1), (true, r - 1)]))];
        for j in (0..c - 1).rev() {
            out.push((self.grid.down(0, j), self.walk(&[(false, j), (true, 1), (false, c - 1 - j), (true, r - 2)])));
        }
        for i in 1..r - 1 {
            for j in 0..c - 1 {
                let legs = [(true, i), (false, j), (true, 1), (false, c - 1 - j), (true, r - 2 - i)];
                out.push((self.grid.down(i, j), self.walk(&legs)));
            }
        }
        out
    }

    /// Quadratic costs of the critical paths, each obtained from the previous
    /// one by removing and adding the arcs in which they differ.
    fn critical_costs(&self, q: &InteractionMatrix) -> Vec<(ArcId, Rational)> {
        let m = self.arcs();
        let mut member = vec![false; m];
        let mut stamp = vec![usize::MAX; m];
        let mut current: Vec<ArcId> = Vec::new();
        let mut cost = Rational::zero();
        let mut out = Vec::new();
        for (step, (arc, path)) in self.critical().into_iter().enumerate() {
            for &e in &path {
                stamp[e.0] = step;
            }
            for &e in &current {
                if stamp[e.0] == step {
                    continue;
                }
                member[e.0] = false;
                let row = q.row(e);
                let mut delta: Rational = current.iter().filter(|g| member[g.0]).map(|g| &row[g.0]).sum();
                delta *= int(2);
                cost -= delta + &row[e.0];
            }
            for &f in &path {
                if member[f.0] {
                    continue;
                }
                let row = q.row(f);
                let mut delta: Rational = path.iter().filter(|g| member[g.0]).map(|g| &row[g.0]).sum();
                delta *= int(2);
                cost += delta + &row[f.0];
                member[f.0] = true;
            }
            current = path;
            out.push((arc, cost.clone()));
        }
        out
    }

    /// Reduced-form vector reproducing the quadratic costs of the critical
    /// paths (linear costs ignored).
    fn pseudo(&self, q: &InteractionMatrix) -> CostVector {
        let costs = self.critical_costs(q);
        let mut v = CostVector::zeros(self.arcs());
        if self.rows == 1 || self.cols == 1 {
            v[costs[0].0] = costs[0].1.clone();
            return v;
        }
        let cols = self.cols - 1;
        let mut crit = vec![vec![Rational::zero(); cols]; self.rows - 1];
        for (e, cost) in &costs[1..] {
            let (i, j) = self.grid.coords(self.grid.graph().from(*e));
            crit[i][j] = cost.clone();
        }
        let top = &costs[0].1;
        v[self.grid.right(0, 0)] = top.clone();
        for i in 0..self.rows - 1 {
            for j in 0..cols {
                let base = match (i, j) {
                    (0, 0) => Rational::zero(),
                    (0, _) => top.clone(),
                    _ => crit[i - 1][0].clone(),
                };
                v[self.grid.down(i, j)] = &crit[i][j] - base;
            }
        }
        v
    }

    /// The explicit vector for a two-row window: the column-`k` path decides
    /// the down arc of column `k`.
    fn two_row(&self, q: &InteractionMatrix) -> CostVector {
        debug_assert_eq!(self.rows, 2);
        let c = self.cols;
        let cost = |k: usize| q.pair_sum(&self.walk(&[(false, k), (true, 1), (false, c - 1 - k)]));
        let last = cost(c - 1);
        let mut v = CostVector::zeros(self.arcs());
        v[self.grid.down(0, 0)] = cost(0);
        for k in 1..c - 1 {
            v[self.grid.down(0, k)] = cost(k) - &last;
        }
        v[self.grid.right(0, 0)] = last;
        v
    }
}

fn grid_of(inst: &QsppInstance) -> Result<Grid> {
    let grid = Grid::recognize(&inst.graph)
        .ok_or_else(|| Error::WrongFamily("not a directed grid graph in canonical numbering".into()))?;
    if inst.s != grid.source() || inst.t != grid.target() {
        return Err(Error::WrongFamily("grid instances must run from the top-left to the bottom-right corner".into()));
    }
    if !inst.q.is_symmetric() || !inst.q.has_zero_diagonal() {
        return Err(Error::Precondition("interaction matrix must be symmetric with zero diagonal".into()));
    }
    Ok(grid)
}

fn check_len(grid: &Grid, c: &CostVector) -> Result<()> {
    let m = grid.graph().arc_count();
    if c.len() != m {
        return Err(Error::Dimension(format!("cost vector has {} entries, grid has {m} arcs", c.len())));
    }
    Ok(())
}

/// The support `J` of reduced forms on `grid`, in arc-id order.
pub fn reduced_support(grid: &Grid) -> Vec<ArcId> {
    Window::full(grid).support()
}

/// Equivalent vector in reduced form (same cost on every `s`-`t` path).
pub fn reduce_cost_vector(grid: &Grid, c: &CostVector) -> Result<CostVector> {
    reduce_cost_vector_with(grid, c, TieOrder::default())
}

pub fn reduce_cost_vector_with(grid: &Grid, c: &CostVector, tie: TieOrder) -> Result<CostVector> {
    check_len(grid, c)?;
    Ok(Window::full(grid).reduce(c, tie))
}

/// The `(p-1)(q-1)+1` critical paths of the `p x q` grid with their defining
/// arcs from `J`.
pub fn critical_paths(p: usize, q: usize) -> Result<Vec<(ArcId, Path)>> {
    let grid = Grid::new(p, q)?;
    Window::full(&grid)
        .critical()
        .into_iter()
        .map(|(e, arcs)| Ok((e, Path::new(grid.graph(), arcs)?)))
        .collect()
}

/// `C(P_e, c, Q)` for every critical path, computed incrementally.
pub fn critical_path_costs(inst: &QsppInstance) -> Result<Vec<(ArcId, Rational)>> {
    let grid = grid_of(inst)?;
    let window = Window::full(&grid);
    let paths = window.critical();
    Ok(window
        .critical_costs(&inst.q)
        .into_iter()
        .zip(paths)
        .map(|((e, cost), (_, arcs))| (e, cost + arcs.iter().map(|&a| &inst.c[a]).sum::<Rational>()))
        .collect())
}

/// The reduced-form vector matching the instance on all critical paths. It is
/// a linearization exactly when the instance is linearizable.
pub fn pseudo_linearize(inst: &QsppInstance) -> Result<CostVector> {
    let grid = grid_of(inst)?;
    let window = Window::full(&grid);
    let mut v = window.pseudo(&inst.q);
    if !inst.c.is_zero() {
        v = v.add(&window.reduce(&inst.c, TieOrder::default()));
    }
    Ok(v)
}

fn shrink(c: &CostVector, q: &InteractionMatrix, inst_graph: &crate::Digraph, s: VertexId, last: ArcId) -> CostVector {
    let extra = &c[last];
    let row = q.row(last);
    CostVector(
        inst_graph
            .arc_ids()
            .map(|e| {
                let mut v = &c[e] - int(2) * &row[e.0];
                if inst_graph.from(e) == s {
                    v += extra;
                }
                v
            })
            .collect(),
    )
}

/// Moves the target from `t` to `v` along the arc `(v, t)`: if `c'`
/// linearizes the instance (with zero linear costs) the result linearizes the
/// instance ending at `v`.
pub fn shrink_target(c: &CostVector, inst: &QsppInstance, v: VertexId) -> Result<CostVector> {
    inst.graph.check_vertex(v)?;
    if c.len() != inst.arc_count() {
        return Err(Error::Dimension(format!("cost vector has {} entries, graph has {} arcs", c.len(), inst.arc_count())));
    }
    if !is_acyclic(&inst.graph) {
        return Err(Error::Cyclic);
    }
    let last = inst
        .graph
        .find_arc(v, inst.t)
        .ok_or_else(|| Error::Precondition(format!("no arc from {v} to the target {}", inst.t)))?;
    Ok(shrink(c, &inst.q, &inst.graph, inst.s, last))
}

/// Linearization of an instance on a two-row grid, which always exists.
pub fn linearize_g2q(inst: &QsppInstance) -> Result<CostVector> {
    let grid = grid_of(inst)?;
    if grid.rows() != 2 {
        return Err(Error::WrongFamily(format!("expected a grid with 2 rows, got {}", grid.rows())));
    }
    let window = Window::full(&grid);
    let mut v = window.two_row(&inst.q);
    if !inst.c.is_zero() {
        v = v.add(&window.reduce(&inst.c, TieOrder::default()));
    }
    Ok(v)
}

/// Decides sign-unrestricted linearizability on a grid.
///
/// On success the vector is the pseudo-linearization, i.e. the unique
/// linearization in reduced form; it may have negative entries. On failure
/// the witness is a path whose cost the pseudo-linearization gets wrong.
pub fn linearize_grid(inst: &QsppInstance) -> Result<LinearizationResult> {
    linearize_grid_with(inst, Execution::default())
}

pub fn linearize_grid_with(inst: &QsppInstance, exec: Execution) -> Result<LinearizationResult> {
    let grid = grid_of(inst)?;
    let (p, q) = (grid.rows(), grid.cols());
    let g = grid.graph();
    let s = grid.source();
    let full = Window::full(&grid);
    let pc = full.pseudo(&inst.q);
    let finish = |v: &CostVector| {
        if inst.c.is_zero() { v.clone() } else { full.reduce(&v.add(&inst.c), TieOrder::default()) }
    };

    let mut current = pc.clone();
    let mut mismatch = None;
    'levels: for r in (3..=p).rev() {
        let mut candidates = vec![CostVector::zeros(0); q + 1];
        let mut w = current.clone();
        for j in (1..=q).rev() {
            let u = shrink(&w, &inst.q, g, s, grid.down(r - 2, j - 1));
            candidates[j] = full.sub(r - 1, j).reduce(&u, TieOrder::default());
            if j > 1 {
                w = shrink(&w, &inst.q, g, s, grid.right(r - 1, j - 2));
            }
        }
        let columns: Vec<usize> = (1..q).collect();
        let expected = exec.map(&columns, |&j| full.sub(r - 1, j).pseudo(&inst.q));
        for (&j, e) in columns.iter().zip(&expected) {
            if candidates[j] != *e {
                mismatch = Some((r - 1, j, std::mem::take(&mut candidates[j])));
                break 'levels;
            }
        }
        current = std::mem::take(&mut candidates[q]);
    }
    if mismatch.is_none() && current != full.sub(2, q).two_row(&inst.q) {
        mismatch = Some((2, q, current));
    }

    let Some((rows, cols, candidate)) = mismatch else {
        return Ok(LinearizationResult::linearizable(finish(&pc)));
    };
    let window = full.sub(rows, cols);
    let (_, mut arcs) = window
        .critical()
        .into_iter()
        .find(|(_, arcs)| arcs.iter().map(|&a| &candidate[a]).sum::<Rational>() != inst.q.pair_sum(arcs))
        .expect("differing reduced forms disagree on a critical path");
    arcs.push(grid.down(rows - 1, cols - 1));
    arcs.extend((cols - 1..q - 1).map(|j| grid.right(rows, j)));
    arcs.extend((rows..p - 1).map(|i| grid.down(i, q - 1)));
    let path = Path::new(g, arcs)?;
    let expected = path_cost_unchecked(inst, path.arcs());
    let got = finish(&pc).path_sum(&path);
    debug_assert_ne!(expected, got);
    Ok(LinearizationResult::not_linearizable(Witness::Path { path, expected, got }))
}
