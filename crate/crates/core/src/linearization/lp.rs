//! The path matrix `B`, its cost vector `b` and exact feasibility of `B c' = b`.

use num_traits::{One, Signed, Zero};

use super::{LinearizationResult, Witness};
use crate::error::{Error, Result};
use crate::graph::{enumerate_st_paths, Path};
use crate::instance::{path_cost_unchecked, CostVector, QsppInstance};
use crate::rational::Rational;

/// Largest number of rows or columns accepted by [`lp_oracle`].
pub const LP_MAX_SIZE: usize = 1000;

/// Rows are the characteristic vectors of all `s`-`t` paths, ordered by length
/// and then lexicographically by arc ids; `b` holds the quadratic path costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMatrix {
    pub paths: Vec<Path>,
    pub rows: Vec<Vec<bool>>,
    pub b: Vec<Rational>,
    pub arcs: usize,
}

impl PathMatrix {
    /// `B^T y`.
    pub fn transpose_times(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.arcs];
        for (path, yi) in self.paths.iter().zip(y) {
            for &e in path.arcs() {
                out[e.0] += yi;
            }
        }
        out
    }

    pub fn b_dot(&self, y: &[Rational]) -> Rational {
        self.b.iter().zip(y).map(|(b, y)| b * y).sum()
    }
}

pub fn build_path_matrix(inst: &QsppInstance, limit: Option<usize>) -> Result<PathMatrix> {
    let mut paths = enumerate_st_paths(&inst.graph, inst.s, inst.t, limit)?;
    paths.sort_by(|a, b| (a.len(), a.arcs()).cmp(&(b.len(), b.arcs())));
    let m = inst.arc_count();
    let rows = paths.iter().map(|p| p.characteristic(m)).collect();
    let b = paths.iter().map(|p| path_cost_unchecked(inst, p.arcs())).collect();
    Ok(PathMatrix { paths, rows, b, arcs: m })
}

/// Checks a Farkas certificate: `b^T y < 0` together with `B^T y >= 0`
/// (nonnegative system) or `B^T y = 0` (sign-unrestricted system).
pub fn verify_certificate(pm: &PathMatrix, y: &[Rational], require_nonneg: bool) -> bool {
    if y.len() != pm.paths.len() || !pm.b_dot(y).is_negative() {
        return false;
    }
    let bty = pm.transpose_times(y);
    if require_nonneg {
        !bty.iter().any(Signed::is_negative)
    } else {
        bty.iter().all(Zero::is_zero)
    }
}

/// Decides `B c' = b` (with `c' >= 0` when `require_nonneg`) exactly.
///
/// A feasible system yields a basic solution; an infeasible one yields a
/// verified Farkas certificate.
pub fn lp_oracle(pm: &PathMatrix, require_nonneg: bool) -> Result<LinearizationResult> {
    if pm.paths.len() > LP_MAX_SIZE || pm.arcs > LP_MAX_SIZE {
        return Err(Error::TooLarge(format!(
            "path matrix is {}x{}, limit is {LP_MAX_SIZE} per side",
            pm.paths.len(),
            pm.arcs
        )));
    }
    let outcome = if require_nonneg { phase_one(pm) } else { eliminate(pm) };
    match outcome {
        Ok(x) => Ok(LinearizationResult::linearizable(CostVector(x))),
        Err(y) => {
            assert!(verify_certificate(pm, &y, require_nonneg), "internal error: invalid Farkas certificate");
            let b_dot_y = pm.b_dot(&y);
            Ok(LinearizationResult::not_linearizable(Witness::Certificate { y, b_dot_y, path_costs: pm.b.clone() }))
        }
    }
}

/// Builds the path matrix of `inst` and runs [`lp_oracle`].
pub fn linearize_by_paths(inst: &QsppInstance, require_nonneg: bool, limit: Option<usize>) -> Result<LinearizationResult> {
    lp_oracle(&build_path_matrix(inst, limit)?, require_nonneg)
}

fn dense(pm: &PathMatrix) -> Vec<Vec<Rational>> {
    pm.rows
        .iter()
        .map(|row| row.iter().map(|&x| if x { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Gauss-Jordan on `[B | b | I]`. An inconsistent row carries `y` in its
/// identity block.
fn eliminate(pm: &PathMatrix) -> std::result::Result<Vec<Rational>, Vec<Rational>> {
    let (r, m) = (pm.paths.len(), pm.arcs);
    let mut t = dense(pm);
    for (i, row) in t.iter_mut().enumerate() {
        row.push(pm.b[i].clone());
        row.extend((0..r).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m {
        let Some(p) = (next..r).find(|&i| !t[i][col].is_zero()) else {
            continue;
        };
        t.swap(next, p);
        let inv = t[next][col].recip();
        for v in t[next].iter_mut() {
            *v *= &inv;
        }
        for i in 0..r {
            if i != next && !t[i][col].is_zero() {
                let factor = t[i][col].clone();
                for k in col..t[i].len() {
                    let delta = &factor * &t[next][k];
                    t[i][k] -= delta;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    if let Some(row) = t[next..].iter().find(|row| !row[m].is_zero()) {
        let mut y = row[m + 1..].to_vec();
        if row[m].is_positive() {
            y.iter_mut().for_each(|v| *v = -v.clone());
        }
        return Err(y);
    }
    let mut x = vec![Rational::zero(); m];
    for (k, &col) in pivots.iter().enumerate() {
        x[col] = t[k][m].clone();
    }
    Ok(x)
}

/// Phase-one simplex with Bland's rule on `B x = b, x >= 0`.
fn phase_one(pm: &PathMatrix) -> std::result::Result<Vec<Rational>, Vec<Rational>> {
    let (r, m) = (pm.paths.len(), pm.arcs);
    let width = m + r;
    let sign: Vec<bool> = pm.b.iter().map(|b| b.is_negative()).collect();
    let mut t = dense(pm);
    for (i, row) in t.iter_mut().enumerate() {
        row.extend((0..r).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(pm.b[i].clone());
        if sign[i] {
            for v in row[..m].iter_mut() {
                *v = -v.clone();
            }
            row[width] = -row[width].clone();
        }
    }
    let mut obj = vec![Rational::zero(); width + 1];
    for row in &t {
        for k in (0..m).chain([width]) {
            obj[k] -= &row[k];
        }
    }
    let mut basis: Vec<usize> = (m..width).collect();
    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..r {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (l, _) = leave.expect("phase one is bounded");
        let inv = t[l][enter].recip();
        for v in t[l].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
        let factor = obj[enter].clone();
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            *v -= &factor * p;
        }
        basis[l] = enter;
    }
    if obj[width].is_negative() {
        // duals of the flipped system are 1 - (reduced cost of artificial i)
        let y = (0..r)
            .map(|i| {
                let v = &obj[m + i] - Rational::one();
                if sign[i] { -v } else { v }
            })
            .collect();
        return Err(y);
    }
    let mut x = vec![Rational::zero(); m];
    for (i, &j) in basis.iter().enumerate() {
        if j < m {
            x[j] = t[i][width].clone();
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete_symmetric, make_grid, ArcId, VertexId};
    use crate::rational::int;

    fn k4() -> QsppInstance {
        let g = make_complete_symmetric(4, true, VertexId(0), VertexId(3)).unwrap();
        QsppInstance::zero(g, VertexId(0), VertexId(3)).unwrap()
    }

    fn example_k4() -> QsppInstance {
        let mut inst = k4();
        inst.q.set_sym(ArcId(0), ArcId(4), int(1));
        inst.q.set_sym(ArcId(1), ArcId(5), int(1));
        inst
    }

    fn rows_as_ints(pm: &PathMatrix) -> Vec<Vec<u8>> {
        pm.rows.iter().map(|r| r.iter().map(|&x| x as u8).collect()).collect()
    }

    #[test]
    fn k4_path_matrix() {
        let pm = build_path_matrix(&example_k4(), None).unwrap();
        assert_eq!(
            rows_as_ints(&pm),
            vec![
                vec![1, 0, 0, 0, 1, 0],
                vec![0, 1, 0, 0, 0, 1],
                vec![1, 0, 1, 0, 0, 1],
                vec![0, 1, 0, 1, 1, 0],
            ]
        );
        assert_eq!(pm.b, vec![int(2), int(2), int(0), int(0)]);
    }

    #[test]
    fn grid_path_matrix() {
        let g = make_grid(2, 2).unwrap();
        let pm = build_path_matrix(&QsppInstance::zero(g, VertexId(0), VertexId(3)).unwrap(), None).unwrap();
        assert_eq!(pm.rows.len(), 2);
        assert!(pm.rows.iter().all(|r| r.iter().filter(|&&x| x).count() == 2));
    }

    #[test]
    fn k4_example_is_infeasible() {
        let pm = build_path_matrix(&example_k4(), None).unwrap();
        let res = lp_oracle(&pm, true).unwrap();
        assert!(!res.is_linearizable());
        match res.witness {
            Some(Witness::Certificate { y, b_dot_y, .. }) => {
                assert!(verify_certificate(&pm, &y, true));
                assert!(b_dot_y.is_negative());
            }
            other => panic!("unexpected witness {other:?}"),
        }
        let reference_y = [int(-1), int(-1), int(1), int(1)];
        assert!(verify_certificate(&pm, &reference_y, true));
        assert_eq!(pm.b_dot(&reference_y), int(-4));
        // without the sign constraint the same system is solvable
        assert!(lp_oracle(&pm, false).unwrap().is_linearizable());
    }

    #[test]
    fn zero_costs_are_feasible() {
        let pm = build_path_matrix(&k4(), None).unwrap();
        for nonneg in [true, false] {
            let res = lp_oracle(&pm, nonneg).unwrap();
            assert_eq!(res.vector, Some(CostVector::zeros(6)));
        }
    }

    #[test]
    fn single_interaction_is_feasible() {
        let mut inst = k4();
        inst.q.set_sym(ArcId(0), ArcId(2), int(1));
        let pm = build_path_matrix(&inst, None).unwrap();
        assert_eq!(pm.b, vec![int(0), int(0), int(2), int(0)]);
        for nonneg in [true, false] {
            let v = lp_oracle(&pm, nonneg).unwrap().vector.unwrap();
            for (path, b) in pm.paths.iter().zip(&pm.b) {
                assert_eq!(&v.path_sum(path), b);
            }
            if nonneg {
                assert!(v.is_nonnegative());
            }
        }
    }

    #[test]
    fn negative_costs_and_unrestricted_certificate() {
        // a direct arc of cost -1 beside a two-arc route of cost 0
        let g = crate::Digraph::new(3, [(0, 2), (0, 1), (1, 2)]).unwrap();
        let mut inst = QsppInstance::zero(g, VertexId(0), VertexId(2)).unwrap();
        inst.c[ArcId(0)] = int(-1);
        let pm = build_path_matrix(&inst, None).unwrap();
        let res = lp_oracle(&pm, true).unwrap();
        assert!(!res.is_linearizable());
        assert!(lp_oracle(&pm, false).unwrap().is_linearizable());
    }

    #[test]
    fn size_limit() {
        let pm = PathMatrix { paths: vec![], rows: vec![], b: vec![], arcs: LP_MAX_SIZE + 1 };
        assert!(matches!(lp_oracle(&pm, false), Err(Error::TooLarge(_))));
    }
}
