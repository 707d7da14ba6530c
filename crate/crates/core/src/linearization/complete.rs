//! Complete symmetric digraphs `K_n*` (simplified) and 4-vertex tournaments.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lp::linearize_by_paths;
use super::{LinearizationResult, Witness};
use crate::error::{Error, Result};
use crate::graph::{ArcId, Path, VertexId};
use crate::instance::{path_cost_unchecked, CostVector, QsppInstance};
use crate::rational::{int, Rational};

/// Doubled interaction sums over the six arc-pair classes.
///
/// `H` is the set of arcs leaving `s` or entering `t`; a pair is adjacent if
/// one arc ends where the other starts. Class `T1`/`T2` has both arcs in `H`,
/// `T3`/`T4` exactly one, `T5`/`T6` none; odd classes are the adjacent pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathClassSums {
    pub s: [Rational; 6],
}

impl PathClassSums {
    pub fn total(&self) -> Rational {
        self.s.iter().sum()
    }
}

struct KnStar {
    n: usize,
    inner: Vec<VertexId>,
}

fn recognize_knstar(inst: &QsppInstance) -> Result<KnStar> {
    let g = &inst.graph;
    let n = g.vertex_count();
    let (s, t) = (inst.s, inst.t);
    let wrong = |why: &str| Error::WrongFamily(format!("not a simplified complete digraph: {why}"));
    if n < 4 {
        return Err(wrong("needs at least 4 vertices"));
    }
    let inner: Vec<VertexId> = g.vertices().filter(|&v| v != s && v != t).collect();
    let mut expected: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for &u in &inner {
        expected.insert((s, u));
        expected.insert((u, t));
        for &v in &inner {
            if u != v {
                expected.insert((u, v));
            }
        }
    }
    let actual: BTreeSet<_> = g.arc_ids().map(|e| g.ends(e)).collect();
    if actual.len() != g.arc_count() {
        return Err(wrong("parallel arcs"));
    }
    if actual != expected {
        return Err(wrong("arc set differs"));
    }
    Ok(KnStar { n, inner })
}

fn compatible(inst: &QsppInstance, e: ArcId, f: ArcId) -> bool {
    let (a, b) = inst.graph.ends(e);
    let (c, d) = inst.graph.ends(f);
    a != c && b != d && !(a == d && b == c)
}

/// Zeroes interactions between arcs that never lie on a common `s`-`t` path:
/// arcs with a common start, a common end, or forming a 2-cycle.
pub fn normalize_knstar(inst: &QsppInstance) -> Result<QsppInstance> {
    recognize_knstar(inst)?;
    let mut out = inst.clone();
    for e in inst.graph.arc_ids() {
        for f in inst.graph.arc_ids() {
            if e != f && !compatible(inst, e, f) {
                out.q.set(e, f, Rational::zero());
            }
        }
    }
    Ok(out)
}

fn falling(a: i64, b: i64) -> Rational {
    // C(a, b) * b!
    if b < 0 || a < b {
        return Rational::zero();
    }
    Rational::from_integer(((a - b + 1)..=a).fold(BigInt::one(), |acc, x| acc * x))
}

fn factorial(a: i64) -> Rational {
    falling(a.max(0), a.max(0))
}

/// Number of length-`k` paths through a pair of each class.
fn pair_counts(n: i64, k: i64) -> [Rational; 6] {
    let t1 = if k == 2 { int(1) } else { int(0) };
    let t23 = falling(n - 4, k - 3);
    let t45 = if k >= 4 { falling(n - 5, k - 4) / factorial(k - 4) * factorial(k - 3) } else { int(0) };
    let t6 = if k >= 5 { falling(n - 6, k - 5) / factorial(k - 5) * factorial(k - 3) } else { int(0) };
    [t1, t23.clone(), t23, t45.clone(), t45, t6]
}

/// Sums `s_1..s_6` and the total cost `CP_k` of all paths of length `k` for
/// `k = 2..=n-1`, in closed form. Interactions of pairs that share no path
/// are ignored, so the instance need not be normalized.
pub fn path_class_costs(inst: &QsppInstance) -> Result<(PathClassSums, BTreeMap<usize, Rational>)> {
    let kn = recognize_knstar(inst)?;
    let g = &inst.graph;
    let in_h = |e: ArcId| g.from(e) == inst.s || g.to(e) == inst.t;
    let mut s: [Rational; 6] = Default::default();
    for e in g.arc_ids() {
        for f in g.arc_ids().filter(|f| f.0 > e.0) {
            if !compatible(inst, e, f) {
                continue;
            }
            let q = inst.q.get(e, f);
            if q.is_zero() {
                continue;
            }
            let adjacent = g.to(e) == g.from(f) || g.from(e) == g.to(f);
            let class = match (in_h(e) as usize + in_h(f) as usize, adjacent) {
                (2, true) => 0,
                (2, false) => 1,
                (1, true) => 2,
                (1, false) => 3,
                (_, true) => 4,
                (_, false) => 5,
            };
            s[class] += int(2) * q;
        }
    }
    let linear_h: Rational = g.arc_ids().filter(|&e| in_h(e)).map(|e| &inst.c[e]).sum();
    let linear_rest: Rational = g.arc_ids().filter(|&e| !in_h(e)).map(|e| &inst.c[e]).sum();
    let n = kn.n as i64;
    let mut cp = BTreeMap::new();
    for k in 2..n {
        let counts = pair_counts(n, k);
        let mut total: Rational = counts.iter().zip(&s).map(|(t, s)| t * s).sum();
        total += falling(n - 3, k - 2) * &linear_h;
        if k >= 3 {
            total += falling(n - 4, k - 3) * int(k - 2) * &linear_rest;
        }
        cp.insert(k as usize, total);
    }
    Ok((PathClassSums { s }, cp))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    /// `CP_k <= CP_{k+1} / (n-k-1)`.
    Increasing,
    /// `CP_k <= (n-k)(k-2)/(k-3) * CP_{k-1}`.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub kind: ConditionKind,
    pub k: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Necessary conditions for (nonnegative) linearizability on `K_n*`. A failed
/// check proves the instance is not linearizable; passing all is inconclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryConditionReport {
    pub cp: BTreeMap<usize, Rational>,
    pub checks: Vec<ConditionCheck>,
}

impl NecessaryConditionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

pub fn check_necessary_conditions(inst: &QsppInstance) -> Result<NecessaryConditionReport> {
    let (_, cp) = path_class_costs(inst)?;
    let n = inst.graph.vertex_count();
    let mut checks = Vec::new();
    for k in 2..=n - 2 {
        let lhs = cp[&k].clone();
        let rhs = &cp[&(k + 1)] / int((n - k - 1) as i64);
        checks.push(ConditionCheck { kind: ConditionKind::Increasing, k, holds: lhs <= rhs, lhs, rhs });
    }
    if n >= 5 {
        for k in 4..n {
            let lhs = cp[&k].clone();
            let factor = Rational::new(((n - k) * (k - 2)).into(), (k - 3).into());
            let rhs = factor * &cp[&(k - 1)];
            checks.push(ConditionCheck { kind: ConditionKind::Bounded, k, holds: lhs <= rhs, lhs, rhs });
        }
    }
    Ok(NecessaryConditionReport { cp, checks })
}

/// Decides nonnegative linearizability on simplified `K_4*`.
///
/// With inner vertices `a < b` the paths are `P1 = (s,a,t)`, `P2 = (s,b,t)`,
/// `P3 = (s,a,b,t)`, `P4 = (s,b,a,t)`; the instance is linearizable iff all
/// path costs are nonnegative and `C(P1) + C(P2) <= C(P3) + C(P4)`.
/// Certificates are indexed by `P1..P4`.
pub fn k4_linearize(inst: &QsppInstance) -> Result<LinearizationResult> {
    let kn = recognize_knstar(inst)?;
    if kn.n != 4 {
        return Err(Error::WrongFamily(format!("expected K4*, got K{}*", kn.n)));
    }
    let g = &inst.graph;
    let (s, t, a, b) = (inst.s, inst.t, kn.inner[0], kn.inner[1]);
    let arc = |u, v| g.find_arc(u, v).expect("arc of K4*");
    let (sa, sb, ab, ba, at, bt) = (arc(s, a), arc(s, b), arc(a, b), arc(b, a), arc(a, t), arc(b, t));
    let paths = [vec![sa, at], vec![sb, bt], vec![sa, ab, bt], vec![sb, ba, at]];
    let costs: Vec<Rational> = paths.iter().map(|p| path_cost_unchecked(inst, p)).collect();
    let certificate = |y: Vec<Rational>| {
        let b_dot_y = y.iter().zip(&costs).map(|(y, c)| y * c).sum();
        LinearizationResult::not_linearizable(Witness::Certificate { y, b_dot_y, path_costs: costs.clone() })
    };
    if let Some(i) = costs.iter().position(Signed::is_negative) {
        let y = (0..4).map(|k| if k == i { int(1) } else { int(0) }).collect();
        return Ok(certificate(y));
    }
    let [c1, c2, c3, c4] = [&costs[0], &costs[1], &costs[2], &costs[3]];
    if c1 + c2 > c3 + c4 {
        return Ok(certificate(vec![int(-1), int(-1), int(1), int(1)]));
    }
    let mut v = CostVector::zeros(inst.arc_count());
    if c1 > c3 {
        v[sa] = c3.clone();
        v[sb] = c2.clone();
        v[at] = c1 - c3;
        v[ba] = c4 + c3 - c1 - c2;
    } else if c2 > c4 {
        v[sa] = c1.clone();
        v[sb] = c4.clone();
        v[bt] = c2 - c4;
        v[ab] = c3 + c4 - c1 - c2;
    } else {
        v[sa] = c1.clone();
        v[sb] = c2.clone();
        v[ab] = c3 - c1;
        v[ba] = c4 - c2;
    }
    debug_assert!(paths.iter().zip(&costs).all(|(p, c)| p.iter().map(|&e| &v[e]).sum::<Rational>() == *c));
    Ok(LinearizationResult::linearizable(v))
}

/// Linearizes an instance on a 4-vertex tournament through the path-matrix
/// oracle (nonnegative variant).
pub fn tournament4_linearize(inst: &QsppInstance) -> Result<LinearizationResult> {
    let g = &inst.graph;
    let pairs: BTreeSet<(usize, usize)> = g
        .arc_ids()
        .map(|e| {
            let (u, v) = g.ends(e);
            (u.0.min(v.0), u.0.max(v.0))
        })
        .collect();
    if g.vertex_count() != 4 || g.arc_count() != 6 || pairs.len() != 6 {
        return Err(Error::WrongFamily("not a tournament on 4 vertices".into()));
    }
    if inst.q.is_zero() && inst.c.is_nonnegative() {
        return Ok(LinearizationResult::linearizable(inst.c.clone()));
    }
    linearize_by_paths(inst, true, None)
}

/// Paths `P1..P4` of a `K4*` instance in certificate order.
pub fn k4_paths(inst: &QsppInstance) -> Result<Vec<Path>> {
    let kn = recognize_knstar(inst)?;
    if kn.n != 4 {
        return Err(Error::WrongFamily(format!("expected K4*, got K{}*", kn.n)));
    }
    let (s, t, a, b) = (inst.s.0, inst.t.0, kn.inner[0].0, kn.inner[1].0);
    [vec![s, a, t], vec![s, b, t], vec![s, a, b, t], vec![s, b, a, t]]
        .iter()
        .map(|vs| Path::from_vertices(&inst.graph, vs))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_st_paths, make_complete_symmetric, make_tournament};
    use crate::linearization::lp::{build_path_matrix, verify_certificate};

    fn knstar(n: usize) -> QsppInstance {
        let g = make_complete_symmetric(n, true, VertexId(0), VertexId(n - 1)).unwrap();
        QsppInstance::zero(g, VertexId(0), VertexId(n - 1)).unwrap()
    }

    fn set(inst: &mut QsppInstance, e: (usize, usize), f: (usize, usize), v: i64) {
        let a = inst.graph.find_arc(VertexId(e.0), VertexId(e.1)).unwrap();
        let b = inst.graph.find_arc(VertexId(f.0), VertexId(f.1)).unwrap();
        inst.q.set_sym(a, b, int(v));
    }

    fn example_k4() -> QsppInstance {
        let mut inst = knstar(4);
        set(&mut inst, (0, 1), (1, 3), 1);
        set(&mut inst, (0, 2), (2, 3), 1);
        inst
    }

    fn example_k5() -> QsppInstance {
        let mut inst = knstar(5);
        set(&mut inst, (2, 3), (3, 4), 1);
        inst
    }

    fn enumerated_cp(inst: &QsppInstance) -> BTreeMap<usize, Rational> {
        let mut cp = BTreeMap::new();
        for p in enumerate_st_paths(&inst.graph, inst.s, inst.t, None).unwrap() {
            *cp.entry(p.len()).or_insert_with(Rational::zero) += path_cost_unchecked(inst, p.arcs());
        }
        cp
    }

    #[test]
    fn k5_example() {
        let inst = example_k5();
        let (sums, cp) = path_class_costs(&inst).unwrap();
        assert_eq!(cp, BTreeMap::from([(2, int(0)), (3, int(2)), (4, int(2))]));
        assert_eq!(sums.total(), int(2));
        assert_eq!(cp, enumerated_cp(&inst));
        assert!(check_necessary_conditions(&inst).unwrap().all_hold());
        assert!(!linearize_by_paths(&inst, true, None).unwrap().is_linearizable());
    }

    #[test]
    fn k4_example() {
        let inst = example_k4();
        let report = check_necessary_conditions(&inst).unwrap();
        assert_eq!(report.cp, BTreeMap::from([(2, int(4)), (3, int(0))]));
        let fail = report.first_failure().unwrap();
        assert_eq!((fail.kind, fail.k), (ConditionKind::Increasing, 2));
        let res = k4_linearize(&inst).unwrap();
        match res.witness {
            Some(Witness::Certificate { y, b_dot_y, path_costs }) => {
                assert_eq!(y, vec![int(-1), int(-1), int(1), int(1)]);
                assert_eq!(b_dot_y, int(-4));
                assert_eq!(path_costs, vec![int(2), int(2), int(0), int(0)]);
                assert!(verify_certificate(&build_path_matrix(&inst, None).unwrap(), &y, true));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn k4_case_one() {
        let mut inst = knstar(4);
        set(&mut inst, (0, 1), (1, 2), 1);
        let res = k4_linearize(&inst).unwrap();
        let v = res.vector.unwrap();
        let ab = inst.graph.find_arc(VertexId(1), VertexId(2)).unwrap();
        let mut expected = CostVector::zeros(6);
        expected[ab] = int(2);
        assert_eq!(v, expected);
        for p in k4_paths(&inst).unwrap() {
            assert_eq!(v.path_sum(&p), path_cost_unchecked(&inst, p.arcs()));
        }
        assert_eq!(k4_linearize(&knstar(4)).unwrap().vector, Some(CostVector::zeros(6)));
    }

    #[test]
    fn k4_cases_two_and_three() {
        // C1 > C3 and C2 > C4 respectively
        for (e, f) in [((0, 1), (1, 3)), ((0, 2), (2, 3))] {
            let mut inst = knstar(4);
            set(&mut inst, e, f, 1);
            set(&mut inst, (1, 2), (2, 3), 1);
            set(&mut inst, (2, 1), (1, 3), 1);
            let res = k4_linearize(&inst).unwrap();
            let v = res.vector.expect("linearizable");
            assert!(v.is_nonnegative());
            for p in k4_paths(&inst).unwrap() {
                assert_eq!(v.path_sum(&p), path_cost_unchecked(&inst, p.arcs()));
            }
        }
    }

    #[test]
    fn normalization() {
        let mut inst = knstar(4);
        set(&mut inst, (0, 1), (2, 1), 5);
        set(&mut inst, (0, 1), (1, 2), 3);
        let norm = normalize_knstar(&inst).unwrap();
        let a = inst.graph.find_arc(VertexId(0), VertexId(1)).unwrap();
        let b = inst.graph.find_arc(VertexId(2), VertexId(1)).unwrap();
        let c = inst.graph.find_arc(VertexId(1), VertexId(2)).unwrap();
        assert!(norm.q.get(a, b).is_zero());
        assert_eq!(norm.q.get(a, c), &int(3));
        for p in enumerate_st_paths(&inst.graph, inst.s, inst.t, None).unwrap() {
            assert_eq!(path_cost_unchecked(&inst, p.arcs()), path_cost_unchecked(&norm, p.arcs()));
        }
    }

    #[test]
    fn dense_knstar_matches_enumeration() {
        for n in 4..=7 {
            let mut inst = knstar(n);
            let m = inst.arc_count();
            for e in 0..m {
                inst.c[ArcId(e)] = int((e % 3) as i64);
                for f in e + 1..m {
                    inst.q.set_sym(ArcId(e), ArcId(f), int(((e * 7 + f * 3) % 5) as i64));
                }
            }
            assert_eq!(path_class_costs(&inst).unwrap().1, enumerated_cp(&inst), "n = {n}");
        }
    }

    #[test]
    fn zero_q_passes() {
        for n in 4..=6 {
            let report = check_necessary_conditions(&knstar(n)).unwrap();
            assert!(report.all_hold());
            assert!(report.cp.values().all(Zero::is_zero));
        }
    }

    #[test]
    fn wrong_family() {
        let g = crate::graph::make_grid(2, 2).unwrap();
        let inst = QsppInstance::zero(g, VertexId(0), VertexId(3)).unwrap();
        assert!(matches!(path_class_costs(&inst), Err(Error::WrongFamily(_))));
        assert!(matches!(k4_linearize(&knstar(5)), Err(Error::WrongFamily(_))));
        assert!(matches!(tournament4_linearize(&inst), Err(Error::WrongFamily(_))));
    }

    #[test]
    fn tournament() {
        let g = make_tournament(4, 0).unwrap();
        let mut inst = QsppInstance::zero(g, VertexId(0), VertexId(3)).unwrap();
        inst.c[ArcId(1)] = int(4);
        assert_eq!(tournament4_linearize(&inst).unwrap().vector, Some(inst.c.clone()));
        inst.q.set_sym(ArcId(0), ArcId(3), int(2));
        let res = tournament4_linearize(&inst).unwrap();
        let v = res.vector.unwrap();
        for p in enumerate_st_paths(&inst.graph, inst.s, inst.t, None).unwrap() {
            assert_eq!(v.path_sum(&p), path_cost_unchecked(&inst, p.arcs()));
        }
    }
}
