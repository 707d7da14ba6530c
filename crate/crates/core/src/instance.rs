//! QSPP and SPP instances over exact rationals and the quadratic path cost.

use std::ops::{Index, IndexMut};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, Path, VertexId};
use crate::rational::{format_rational, Rational};

/// Per-arc linear costs. Entries may be negative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CostVector(pub Vec<Rational>);

impl CostVector {
    pub fn zeros(m: usize) -> Self {
        CostVector(vec![Rational::zero(); m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.0.iter().any(Signed::is_negative)
    }

    /// Linear cost of `path`.
    pub fn path_sum(&self, path: &Path) -> Rational {
        path.arcs().iter().map(|&e| &self[e]).sum()
    }

    pub fn add(&self, other: &CostVector) -> CostVector {
        CostVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, alpha: &Rational) -> CostVector {
        CostVector(self.0.iter().map(|a| a * alpha).collect())
    }

    /// Space-separated rationals, as written after `c` in instance files.
    pub fn to_line(&self) -> String {
        self.0.iter().map(format_rational).collect::<Vec<_>>().join(" ")
    }
}

impl Index<ArcId> for CostVector {
    type Output = Rational;
    fn index(&self, e: ArcId) -> &Rational {
        &self.0[e.0]
    }
}

impl IndexMut<ArcId> for CostVector {
    fn index_mut(&mut self, e: ArcId) -> &mut Rational {
        &mut self.0[e.0]
    }
}

/// Dense `m x m` interaction matrix indexed by arcs.
///
/// Symmetry and the zero diagonal are not enforced on construction so that
/// malformed inputs can be loaded and reported by [`validate_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionMatrix {
    m: usize,
    data: Vec<Rational>,
}

impl InteractionMatrix {
    pub fn zeros(m: usize) -> Self {
        InteractionMatrix { m, data: vec![Rational::zero(); m * m] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("interaction matrix must be square".into()));
        }
        Ok(InteractionMatrix { m, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, e: ArcId, f: ArcId) -> &Rational {
        &self.data[e.0 * self.m + f.0]
    }

    pub fn set(&mut self, e: ArcId, f: ArcId, v: Rational) {
        self.data[e.0 * self.m + f.0] = v;
    }

    /// Sets both `(e, f)` and `(f, e)`.
    pub fn set_sym(&mut self, e: ArcId, f: ArcId, v: Rational) {
        self.data[f.0 * self.m + e.0] = v.clone();
        self.data[e.0 * self.m + f.0] = v;
    }

    pub fn row(&self, e: ArcId) -> &[Rational] {
        &self.data[e.0 * self.m..(e.0 + 1) * self.m]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.m).all(|e| (e + 1..self.m).all(|f| self.data[e * self.m + f] == self.data[f * self.m + e]))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.m).all(|e| self.data[e * self.m + e].is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.data.iter().any(Signed::is_negative)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, alpha: &Rational) -> InteractionMatrix {
        InteractionMatrix { m: self.m, data: self.data.iter().map(|a| a * alpha).collect() }
    }

    /// `(e, f, value)` for every nonzero entry with `e < f`.
    pub fn upper_nonzeros(&self) -> Vec<(ArcId, ArcId, Rational)> {
        let mut out = Vec::new();
        for e in 0..self.m {
            for f in e + 1..self.m {
                let v = &self.data[e * self.m + f];
                if !v.is_zero() {
                    out.push((ArcId(e), ArcId(f), v.clone()));
                }
            }
        }
        out
    }

    /// Sum over ordered pairs of the arcs in `arcs`.
    pub fn pair_sum(&self, arcs: &[ArcId]) -> Rational {
        let mut total = Rational::zero();
        for &e in arcs {
            let row = self.row(e);
            for &f in arcs {
                total += &row[f.0];
            }
        }
        total
    }
}

/// `(G, s, t, c, Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsppInstance {
    pub graph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
    pub c: CostVector,
    pub q: InteractionMatrix,
}

/// `(G, s, t, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SppInstance {
    pub graph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
    pub c: CostVector,
}

impl QsppInstance {
    /// Checks vertex ranges, `s != t` and dimensions. Matrix properties are
    /// left to [`validate_instance`].
    pub fn new(
        graph: Digraph,
        s: VertexId,
        t: VertexId,
        c: CostVector,
        q: InteractionMatrix,
    ) -> Result<Self> {
        graph.check_vertex(s)?;
        graph.check_vertex(t)?;
        if s == t {
            return Err(Error::SourceEqualsTarget(s));
        }
        let m = graph.arc_count();
        if c.len() != m {
            return Err(Error::Dimension(format!("cost vector has {} entries, graph has {m} arcs", c.len())));
        }
        if q.dim() != m {
            return Err(Error::Dimension(format!("interaction matrix is {0}x{0}, graph has {m} arcs", q.dim())));
        }
        Ok(QsppInstance { graph, s, t, c, q })
    }

    /// Instance with zero linear and quadratic costs.
    pub fn zero(graph: Digraph, s: VertexId, t: VertexId) -> Result<Self> {
        let m = graph.arc_count();
        Self::new(graph, s, t, CostVector::zeros(m), InteractionMatrix::zeros(m))
    }

    pub fn arc_count(&self) -> usize {
        self.graph.arc_count()
    }

    pub fn with_costs(&self, c: CostVector, q: InteractionMatrix) -> Result<Self> {
        Self::new(self.graph.clone(), self.s, self.t, c, q)
    }

    /// The same graph and endpoints with the linear part only.
    pub fn linear_part(&self) -> SppInstance {
        SppInstance { graph: self.graph.clone(), s: self.s, t: self.t, c: self.c.clone() }
    }

    fn check_path(&self, p: &Path) -> Result<()> {
        if p.source() != self.s || p.target() != self.t {
            return Err(Error::InvalidPath(format!(
                "path runs {} -> {}, instance wants {} -> {}",
                p.source(),
                p.target(),
                self.s,
                self.t
            )));
        }
        if p.arcs().iter().any(|e| e.0 >= self.arc_count()) {
            return Err(Error::InvalidPath("arc out of range".into()));
        }
        Ok(())
    }
}

impl SppInstance {
    pub fn new(graph: Digraph, s: VertexId, t: VertexId, c: CostVector) -> Result<Self> {
        graph.check_vertex(s)?;
        graph.check_vertex(t)?;
        if s == t {
            return Err(Error::SourceEqualsTarget(s));
        }
        if c.len() != graph.arc_count() {
            return Err(Error::Dimension(format!(
                "cost vector has {} entries, graph has {} arcs",
                c.len(),
                graph.arc_count()
            )));
        }
        Ok(SppInstance { graph, s, t, c })
    }
}

/// `C(P, c, Q)`: the double sum of `q_ef` over ordered arc pairs of the path
/// plus its linear cost. Unordered pairs therefore count `2 q_ef`.
pub fn path_cost(inst: &QsppInstance, p: &Path) -> Result<Rational> {
    inst.check_path(p)?;
    Ok(path_cost_unchecked(inst, p.arcs()))
}

pub(crate) fn path_cost_unchecked(inst: &QsppInstance, arcs: &[ArcId]) -> Rational {
    inst.q.pair_sum(arcs) + arcs.iter().map(|&e| &inst.c[e]).sum::<Rational>()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Dimension(String),
    SourceEqualsTarget,
    Asymmetric { e: ArcId, f: ArcId },
    NonzeroDiagonal { e: ArcId },
    NegativeLinearCost { e: ArcId },
    NegativeInteraction { e: ArcId, f: ArcId },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structural checks on an instance. With `as_problem` the costs must also be
/// nonnegative, as required of problem inputs (reduced forms and other derived
/// vectors may legitimately be negative).
pub fn validate_instance(inst: &QsppInstance, as_problem: bool) -> ValidationReport {
    let mut violations = Vec::new();
    let m = inst.graph.arc_count();
    if inst.s == inst.t {
        violations.push(Violation::SourceEqualsTarget);
    }
    if inst.c.len() != m || inst.q.dim() != m {
        violations.push(Violation::Dimension(format!(
            "graph has {m} arcs, c has {}, Q is {}x{}",
            inst.c.len(),
            inst.q.dim(),
            inst.q.dim()
        )));
        return ValidationReport { violations };
    }
    for e in 0..m {
        let e = ArcId(e);
        if !inst.q.get(e, e).is_zero() {
            violations.push(Violation::NonzeroDiagonal { e });
        }
        for f in e.0 + 1..m {
            let f = ArcId(f);
            if inst.q.get(e, f) != inst.q.get(f, e) {
                violations.push(Violation::Asymmetric { e, f });
            }
        }
    }
    if as_problem {
        for e in inst.graph.arc_ids() {
            if inst.c[e].is_negative() {
                violations.push(Violation::NegativeLinearCost { e });
            }
            for f in inst.graph.arc_ids() {
                if inst.q.get(e, f).is_negative() {
                    violations.push(Violation::NegativeInteraction { e, f });
                }
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete_symmetric, make_grid};
    use crate::rational::int;

    fn k4_example() -> QsppInstance {
        let g = make_complete_symmetric(4, true, VertexId(0), VertexId(3)).unwrap();
        let mut inst = QsppInstance::zero(g, VertexId(0), VertexId(3)).unwrap();
        // q_{(v1,v2),(v2,v4)} = 1
        inst.q.set_sym(ArcId(0), ArcId(4), int(1));
        inst
    }

    #[test]
    fn k4_single_interaction() {
        let inst = k4_example();
        let p1 = Path::from_vertices(&inst.graph, &[0, 1, 3]).unwrap();
        assert_eq!(path_cost(&inst, &p1).unwrap(), int(2));
        let p2 = Path::from_vertices(&inst.graph, &[0, 2, 3]).unwrap();
        assert_eq!(path_cost(&inst, &p2).unwrap(), int(0));
    }

    #[test]
    fn zero_q_is_linear() {
        let g = make_grid(2, 3).unwrap();
        let c = CostVector((0..7).map(int).collect());
        let inst = QsppInstance::new(g, VertexId(0), VertexId(5), c, InteractionMatrix::zeros(7)).unwrap();
        let p = Path::from_vertices(&inst.graph, &[0, 1, 2, 5]).unwrap();
        assert_eq!(path_cost(&inst, &p).unwrap(), inst.c.path_sum(&p));
    }

    #[test]
    fn rejects_foreign_path() {
        let inst = k4_example();
        let p = Path::from_vertices(&inst.graph, &[0, 1, 2]).unwrap();
        assert!(path_cost(&inst, &p).is_err());
    }

    #[test]
    fn validation_reports() {
        let mut inst = k4_example();
        assert!(validate_instance(&inst, true).is_valid());
        inst.q.set(ArcId(1), ArcId(2), int(3));
        let r = validate_instance(&inst, false);
        assert_eq!(r.violations, vec![Violation::Asymmetric { e: ArcId(1), f: ArcId(2) }]);

        let mut neg = k4_example();
        neg.q.set_sym(ArcId(1), ArcId(5), int(-1));
        assert!(validate_instance(&neg, false).is_valid());
        assert!(!validate_instance(&neg, true).is_valid());

        let mut reduced = k4_example();
        reduced.c[ArcId(2)] = int(-4);
        assert!(validate_instance(&reduced, false).is_valid());
        assert!(validate_instance(&reduced, true)
            .violations
            .contains(&Violation::NegativeLinearCost { e: ArcId(2) }));

        let mut diag = k4_example();
        diag.q.set(ArcId(0), ArcId(0), int(1));
        assert_eq!(validate_instance(&diag, false).violations, vec![Violation::NonzeroDiagonal { e: ArcId(0) }]);
    }

    #[test]
    fn dimension_checks() {
        let g = make_grid(2, 2).unwrap();
        assert!(QsppInstance::new(g.clone(), VertexId(0), VertexId(3), CostVector::zeros(3), InteractionMatrix::zeros(4)).is_err());
        assert!(QsppInstance::new(g.clone(), VertexId(0), VertexId(0), CostVector::zeros(4), InteractionMatrix::zeros(4)).is_err());
        assert!(SppInstance::new(g, VertexId(0), VertexId(3), CostVector::zeros(4)).is_ok());
    }
}
