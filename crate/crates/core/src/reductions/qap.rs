use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, Path, VertexId};
use crate::instance::{CostVector, InteractionMatrix, QsppInstance};
use crate::rational::{int, Rational};

/// Koopmans-Beckmann QAP: minimise
/// `sum_{i,k} a_ik * b_{pi(i) pi(k)} + sum_i c_{i pi(i)}` over permutations `pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QapInstance {
    pub n: usize,
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Vec<Rational>>,
    pub c: Vec<Vec<Rational>>,
}

fn check_square(name: &str, m: &[Vec<Rational>], n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("matrix {name} is not {n}x{n}")));
    }
    Ok(())
}

fn is_symmetric(m: &[Vec<Rational>]) -> bool {
    (0..m.len()).all(|i| (0..i).all(|k| m[i][k] == m[k][i]))
}

impl QapInstance {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Vec<Rational>>, c: Option<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidSize("QAP size must be positive".into()));
        }
        let c = c.unwrap_or_else(|| vec![vec![Rational::zero(); n]; n]);
        check_square("A", &a, n)?;
        check_square("B", &b, n)?;
        check_square("C", &c, n)?;
        for (name, m) in [("A", &a), ("B", &b)] {
            if !is_symmetric(m) {
                return Err(Error::Precondition(format!("matrix {name} must be symmetric")));
            }
        }
        Ok(QapInstance { n, a, b, c })
    }
}

/// Objective value of `perm`, where `perm[i]` is the location of facility `i`.
pub fn qap_cost(qap: &QapInstance, perm: &[usize]) -> Rational {
    let mut total = Rational::zero();
    for i in 0..qap.n {
        for k in 0..qap.n {
            total += &qap.a[i][k] * &qap.b[perm[i]][perm[k]];
        }
        total += &qap.c[i][perm[i]];
    }
    total
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exhaustive QAP solver over permutations in lexicographic order; the first
/// optimum wins.
pub fn brute_force_qap(qap: &QapInstance) -> Result<(Vec<usize>, Rational)> {
    if qap.n > 10 {
        return Err(Error::TooLarge(format!("brute-force QAP limited to n <= 10, got {}", qap.n)));
    }
    let mut perm: Vec<usize> = (0..qap.n).collect();
    let mut best = (perm.clone(), qap_cost(qap, &perm));
    while next_permutation(&mut perm) {
        let cost = qap_cost(qap, &perm);
        if cost < best.1 {
            best = (perm.clone(), cost);
        }
    }
    Ok(best)
}

/// Layered multigraph produced from a QAP instance.
///
/// Layer `j` joins `w_j` to `w_{j+1}` by `n` parallel arcs, one per facility;
/// arc `j * n + i` places facility `i` at location `j`.
#[derive(Debug, Clone)]
pub struct QapReduction {
    pub instance: QsppInstance,
    pub n: usize,
    pub big_m: Rational,
}

impl QapReduction {
    pub fn arc(&self, layer: usize, facility: usize) -> ArcId {
        ArcId(layer * self.n + facility)
    }

    /// `(layer, facility)` label of an arc.
    pub fn label(&self, e: ArcId) -> (usize, usize) {
        (e.0 / self.n, e.0 % self.n)
    }

    /// Permutation encoded by a path (`perm[facility] = layer`), or `None` if
    /// some facility is used twice.
    pub fn decode(&self, path: &Path) -> Option<Vec<usize>> {
        let mut perm = vec![usize::MAX; self.n];
        for &e in path.arcs() {
            let (layer, facility) = self.label(e);
            if perm[facility] != usize::MAX {
                return None;
            }
            perm[facility] = layer;
        }
        Some(perm)
    }

    /// Path selecting facility `i` in layer `perm[i]`.
    pub fn encode(&self, perm: &[usize]) -> Result<Path> {
        let mut by_layer = vec![0; self.n];
        for (i, &j) in perm.iter().enumerate() {
            by_layer[j] = i;
        }
        let arcs = by_layer.iter().enumerate().map(|(j, &i)| self.arc(j, i)).collect();
        Path::new(&self.instance.graph, arcs)
    }
}

pub fn qap_to_qspp(qap: &QapInstance) -> Result<QapReduction> {
    let n = qap.n;
    let m = n * n;
    let arcs = (0..n).flat_map(|j| (0..n).map(move |_| (j, j + 1)));
    let graph = Digraph::new(n + 1, arcs)?;

    let mut big_m = int(1);
    for i in 0..n {
        for j in 0..n {
            big_m += qap.c[i][j].abs();
            for k in 0..n {
                for l in 0..n {
                    big_m += (&qap.a[i][k] * &qap.b[j][l]).abs();
                }
            }
        }
    }

    let mut c = CostVector::zeros(m);
    let mut q = InteractionMatrix::zeros(m);
    for j in 0..n {
        for i in 0..n {
            let e = ArcId(j * n + i);
            c[e] = &qap.c[i][j] + &qap.a[i][i] * &qap.b[j][j];
            for l in 0..n {
                if l == j {
                    continue;
                }
                for k in 0..n {
                    let f = ArcId(l * n + k);
                    let v = if i == k { big_m.clone() } else { &qap.a[i][k] * &qap.b[j][l] };
                    q.set(e, f, v);
                }
            }
        }
    }
    let instance = QsppInstance::new(graph, VertexId(0), VertexId(n), c, q)?;
    Ok(QapReduction { instance, n, big_m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::brute_force_solve;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn two_by_two() {
        let qap = QapInstance::new(mat(&[&[0, 1], &[1, 0]]), mat(&[&[0, 2], &[2, 0]]), None).unwrap();
        assert_eq!(qap_cost(&qap, &[0, 1]), int(4));
        assert_eq!(qap_cost(&qap, &[1, 0]), int(4));
        let red = qap_to_qspp(&qap).unwrap();
        assert_eq!(red.instance.graph.vertex_count(), 3);
        assert_eq!(red.instance.arc_count(), 4);
        let (path, cost) = brute_force_solve(&red.instance, None).unwrap();
        assert_eq!(cost, int(4));
        assert_eq!(red.decode(&path), Some(vec![0, 1]));
    }

    #[test]
    fn sizes_and_big_m() {
        let qap = QapInstance::new(vec![vec![int(0); 3]; 3], vec![vec![int(0); 3]; 3], None).unwrap();
        let red = qap_to_qspp(&qap).unwrap();
        assert_eq!((red.instance.graph.vertex_count(), red.instance.arc_count()), (4, 9));
        assert_eq!(red.big_m, int(1));
        assert_eq!(brute_force_solve(&red.instance, None).unwrap().1, int(0));
    }

    #[test]
    fn diagonal_is_shifted() {
        let qap = QapInstance::new(mat(&[&[2, 0], &[0, 1]]), mat(&[&[3, 0], &[0, 5]]), None).unwrap();
        let red = qap_to_qspp(&qap).unwrap();
        assert_eq!(red.instance.c[red.arc(1, 0)], int(10));
        assert_eq!(brute_force_qap(&qap).unwrap().1, brute_force_solve(&red.instance, None).unwrap().1);
    }

    #[test]
    fn encode_decode_round_trip() {
        let qap = QapInstance::new(vec![vec![int(0); 3]; 3], vec![vec![int(0); 3]; 3], None).unwrap();
        let red = qap_to_qspp(&qap).unwrap();
        let perm = vec![2, 0, 1];
        assert_eq!(red.decode(&red.encode(&perm).unwrap()), Some(perm));
        let repeated = Path::new(&red.instance.graph, vec![red.arc(0, 1), red.arc(1, 1), red.arc(2, 0)]).unwrap();
        assert_eq!(red.decode(&repeated), None);
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(QapInstance::new(mat(&[&[0, 1], &[2, 0]]), mat(&[&[0, 0], &[0, 0]]), None).is_err());
    }
}
