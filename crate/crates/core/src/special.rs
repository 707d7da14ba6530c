//! Polynomially solvable special cases: weak-sum interaction matrices on
//! graphs whose s-t paths share one length, rank-one product matrices, and
//! directed cycles.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{co_reachable, enumerate_st_paths, reachable_from, topological_order, ArcId, Digraph, Path, VertexId};
use crate::instance::{path_cost, CostVector, InteractionMatrix, QsppInstance, SppInstance};
use crate::rational::{int, rational_sqrt, Rational};
use crate::solve::spp_solve;

/// Generator `a` with `q_ef = a_e + a_f` for every `e != f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSumWitness {
    pub a: Vec<Rational>,
}

/// Nonnegative `a` with `Q + Diag(c) = a a^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub a: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductDetection {
    Product(ProductWitness),
    /// Nonnegative rank-one pattern whose factor is irrational.
    NotRepresentable,
    NotProduct,
}

pub fn detect_weak_sum(q: &InteractionMatrix) -> Option<WeakSumWitness> {
    let m = q.dim();
    let at = |e: usize, f: usize| q.get(ArcId(e), ArcId(f));
    let a = match m {
        0 => Vec::new(),
        1 => vec![Rational::zero()],
        2 => {
            let half = at(0, 1) / int(2);
            vec![half.clone(), half]
        }
        _ => {
            let a0 = (at(0, 1) + at(0, 2) - at(1, 2)) / int(2);
            let mut a = vec![a0.clone()];
            a.extend((1..m).map(|e| at(0, e) - &a0));
            a
        }
    };
    let ok = (0..m).all(|e| (0..m).all(|f| e == f || *at(e, f) == &a[e] + &a[f]));
    ok.then_some(WeakSumWitness { a })
}

/// The common arc count of all s-t paths, if there is one.
///
/// Only vertices lying on some s-t path are considered.
pub fn all_paths_equal_length(g: &Digraph, s: VertexId, t: VertexId) -> Result<Option<usize>> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let order = topological_order(g).ok_or(Error::Cyclic)?;
    let fwd = reachable_from(g, s);
    let bwd = co_reachable(g, t);
    if !fwd[t.0] {
        return Err(Error::NoPath { from: s, to: t });
    }
    let relevant = |v: VertexId| fwd[v.0] && bwd[v.0];
    let n = g.vertex_count();
    let mut shortest: Vec<Option<usize>> = vec![None; n];
    let mut longest: Vec<Option<usize>> = vec![None; n];
    shortest[s.0] = Some(0);
    longest[s.0] = Some(0);
    for &v in &order {
        let (Some(lo), Some(hi)) = (shortest[v.0], longest[v.0]) else { continue };
        for &e in g.out_arcs(v) {
            let w = g.to(e);
            if !relevant(w) {
                continue;
            }
            shortest[w.0] = Some(shortest[w.0].map_or(lo + 1, |x| x.min(lo + 1)));
            longest[w.0] = Some(longest[w.0].map_or(hi + 1, |x| x.max(hi + 1)));
        }
    }
    Ok((shortest[t.0] == longest[t.0]).then_some(shortest[t.0]).flatten())
}

/// `c'_e = 2 (L - 1) a_e + c_e`, which gives every s-t path its quadratic cost.
pub fn linearize_weak_sum(inst: &QsppInstance) -> Result<CostVector> {
    let witness = detect_weak_sum(&inst.q)
        .ok_or_else(|| Error::Precondition("interaction matrix is not a weak sum matrix".into()))?;
    let len = all_paths_equal_length(&inst.graph, inst.s, inst.t)?
        .ok_or_else(|| Error::Precondition("s-t paths do not all have the same length".into()))?;
    let factor = int(2 * (len as i64 - 1));
    Ok(CostVector(witness.a.iter().zip(inst.c.iter()).map(|(a, c)| &factor * a + c).collect()))
}

pub fn detect_product(q: &InteractionMatrix, c: &CostVector) -> ProductDetection {
    let m = q.dim();
    if c.len() != m {
        return ProductDetection::NotProduct;
    }
    let entry = |e: usize, f: usize| -> Rational {
        if e == f {
            q.get(ArcId(e), ArcId(e)) + &c.0[e]
        } else {
            q.get(ArcId(e), ArcId(f)).clone()
        }
    };
    let diag: Vec<Rational> = (0..m).map(|e| entry(e, e)).collect();
    let pairs = || (0..m).flat_map(|e| (0..m).map(move |f| (e, f)));
    if diag.iter().any(Signed::is_negative) || pairs().any(|(e, f)| entry(e, f).is_negative()) {
        return ProductDetection::NotProduct;
    }
    // rank one with nonnegative entries: M_ef^2 = M_ee M_ff and symmetry
    let rank_one = pairs().all(|(e, f)| {
        let v = entry(e, f);
        v == entry(f, e) && &v * &v == &diag[e] * &diag[f]
    });
    if !rank_one {
        return ProductDetection::NotProduct;
    }
    match diag.iter().map(rational_sqrt).collect::<Option<Vec<_>>>() {
        Some(a) => {
            if pairs().all(|(e, f)| entry(e, f) == &a[e] * &a[f]) {
                ProductDetection::Product(ProductWitness { a })
            } else {
                ProductDetection::NotProduct
            }
        }
        None => ProductDetection::NotRepresentable,
    }
}

/// Optimal path when `Q + Diag(c) = a a^T`: a shortest path for weights `a`,
/// whose cost is the square of its `a`-length.
pub fn solve_product_case(inst: &QsppInstance) -> Result<(Path, Rational)> {
    let witness = match detect_product(&inst.q, &inst.c) {
        ProductDetection::Product(w) => w,
        ProductDetection::NotRepresentable => {
            return Err(Error::Precondition(
                "Q + Diag(c) is rank one but its factor is not rational".into(),
            ))
        }
        ProductDetection::NotProduct => {
            return Err(Error::Precondition("Q + Diag(c) is not a nonnegative product matrix".into()))
        }
    };
    let spp = SppInstance::new(inst.graph.clone(), inst.s, inst.t, CostVector(witness.a))?;
    let (path, len) = spp_solve(&spp)?;
    Ok((path, &len * &len))
}

/// Whether `g` is a single directed cycle through all its vertices.
pub fn is_directed_cycle(g: &Digraph) -> bool {
    let n = g.vertex_count();
    if n < 2 || g.arc_count() != n || g.vertices().any(|v| g.out_arcs(v).len() != 1 || g.in_arcs(v).len() != 1) {
        return false;
    }
    let mut seen = 1;
    let mut w = g.to(g.out_arcs(VertexId(0))[0]);
    while w != VertexId(0) {
        seen += 1;
        w = g.to(g.out_arcs(w)[0]);
    }
    seen == n
}

/// Puts the full cost of the unique s-t path on its first arc.
pub fn linearize_directed_cycle(inst: &QsppInstance) -> Result<CostVector> {
    if !is_directed_cycle(&inst.graph) {
        return Err(Error::WrongFamily("graph is not a directed cycle".into()));
    }
    let paths = enumerate_st_paths(&inst.graph, inst.s, inst.t, Some(1))?;
    let path = &paths[0];
    let mut out = CostVector::zeros(inst.arc_count());
    out[path.arcs()[0]] = path_cost(inst, path)?;
    Ok(out)
}
