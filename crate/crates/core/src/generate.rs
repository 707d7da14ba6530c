//! Seeded instance generators. All randomness comes from a ChaCha8 stream
//! seeded with an explicit `u64`, so equal seeds give equal instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aqspp::make_cyclic_counterexample;
use crate::error::{Error, Result};
use crate::graph::{
    enumerate_st_paths, make_complete_symmetric, make_directed_cycle, make_grid, make_hypercube, make_tournament,
    ArcId, Digraph, VertexId,
};
use crate::instance::{CostVector, InteractionMatrix, QsppInstance};
use crate::rational::{int, Rational};
use crate::reductions::{disjoint_to_aqspp, qap_to_qspp, DisjointPathsInstance, QapInstance};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// How to fill the interaction matrix. Entries are integers in `0..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QFill {
    Zero,
    /// Independent symmetric entries.
    Random { max: u32 },
    /// `q_ef = a_e + a_f` for a random generator `a`.
    WeakSum { max: u32 },
    /// `q_ef = a_e a_f` with the diagonal `a_e^2` moved into the linear costs.
    Product { max: u32 },
    /// Random entries on head-to-tail adjacent pairs only.
    Adjacent { max: u32 },
}

fn draw(rng: &mut ChaCha8Rng, max: u32) -> Rational {
    int(rng.random_range(0..=max) as i64)
}

/// Interaction matrix and linear costs for `g`. Linear costs are zero except
/// for [`QFill::Product`].
pub fn fill_costs(g: &Digraph, fill: QFill, rng: &mut ChaCha8Rng) -> (CostVector, InteractionMatrix) {
    let m = g.arc_count();
    let mut c = CostVector::zeros(m);
    let mut q = InteractionMatrix::zeros(m);
    let pairs = || (0..m).flat_map(|e| (e + 1..m).map(move |f| (ArcId(e), ArcId(f))));
    match fill {
        QFill::Zero => {}
        QFill::Random { max } => {
            for (e, f) in pairs() {
                q.set_sym(e, f, draw(rng, max));
            }
        }
        QFill::WeakSum { max } => {
            let a: Vec<Rational> = (0..m).map(|_| draw(rng, max)).collect();
            for (e, f) in pairs() {
                q.set_sym(e, f, &a[e.0] + &a[f.0]);
            }
        }
        QFill::Product { max } => {
            let a: Vec<Rational> = (0..m).map(|_| draw(rng, max)).collect();
            for (e, f) in pairs() {
                q.set_sym(e, f, &a[e.0] * &a[f.0]);
            }
            for e in g.arc_ids() {
                c[e] = &a[e.0] * &a[e.0];
            }
        }
        QFill::Adjacent { max } => {
            for (e, f) in pairs() {
                let (i, j) = g.ends(e);
                let (k, l) = g.ends(f);
                if (j == k && i != l) || (i == l && j != k) {
                    q.set_sym(e, f, draw(rng, max));
                }
            }
        }
    }
    (c, q)
}

/// Random linear costs in `0..=max`.
pub fn random_linear(m: usize, max: u32, rng: &mut ChaCha8Rng) -> CostVector {
    CostVector((0..m).map(|_| draw(rng, max)).collect())
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidSize(format!("density must lie in [0, 1], got {density}")));
    }
    Ok(())
}

/// Random DAG on `n` vertices: each `i -> j` with `i < j` is present with
/// probability `density`.
pub fn random_dag(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<Digraph> {
    check_density(density)?;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::new(n, arcs)
}

/// Random digraph on `n` vertices: each ordered pair is an arc with
/// probability `density`.
pub fn random_digraph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<Digraph> {
    check_density(density)?;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(density) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::new(n, arcs)
}

/// Random QAP with symmetric `A`, `B` and arbitrary `C`, entries in `0..=max`.
pub fn random_qap(n: usize, max: u32, rng: &mut ChaCha8Rng) -> Result<QapInstance> {
    let sym = |rng: &mut ChaCha8Rng| {
        let mut m = vec![vec![int(0); n]; n];
        for i in 0..n {
            for k in i..n {
                let v = draw(rng, max);
                m[i][k] = v.clone();
                m[k][i] = v;
            }
        }
        m
    };
    let a = sym(rng);
    let b = sym(rng);
    let c = (0..n).map(|_| (0..n).map(|_| draw(rng, max)).collect()).collect();
    QapInstance::new(a, b, Some(c))
}

/// Whether some `s`-`t` path exists.
pub fn has_path(g: &Digraph, s: VertexId, t: VertexId) -> bool {
    crate::graph::reachable_from(g, s)[t.0]
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `p x q` grid, corner to corner.
    Grid { p: usize, q: usize },
    /// Simplified `K_n*` from vertex 0 to `n-1`; `example` selects the
    /// fixed `K4*` or `K5*` instances instead of a filled one.
    Complete { n: usize, example: bool },
    /// Directed cycle from 0 to `t`.
    Cycle { n: usize, t: usize },
    /// Hypercube from the all-zeros to the all-ones vertex.
    Hypercube { d: usize },
    /// Tournament from 0 to `n-1`; `None` draws the orientation.
    Tournament { n: usize, bits: Option<u64> },
    /// Reduction of the given QAP, or of a random one of size `n`.
    QapReduce { qap: Option<QapInstance>, n: usize },
    /// Reduction of a random digraph with pairs `(0, n-1)` and `(1, n-2)`.
    DisjointReduce { n: usize, density: f64 },
    /// The five-vertex cyclic instance on which the auxiliary graph fails.
    Counterexample { epsilon: Rational },
}

type ArcPair = ((usize, usize), (usize, usize));

fn fixed_complete(n: usize) -> Result<QsppInstance> {
    let (s, t) = (VertexId(0), VertexId(n - 1));
    let g = make_complete_symmetric(n, true, s, t)?;
    let mut inst = QsppInstance::zero(g, s, t)?;
    let pairs: &[ArcPair] = match n {
        4 => &[((0, 1), (1, 3)), ((0, 2), (2, 3))],
        5 => &[((2, 3), (3, 4))],
        _ => return Err(Error::InvalidSize(format!("the fixed examples exist for n = 4 and 5, got {n}"))),
    };
    for &((a, b), (c, d)) in pairs {
        let e = inst.graph.find_arc(VertexId(a), VertexId(b)).expect("arc");
        let f = inst.graph.find_arc(VertexId(c), VertexId(d)).expect("arc");
        inst.q.set_sym(e, f, int(1));
    }
    Ok(inst)
}

/// Builds an instance of `family`, filling costs with `fill` where the
/// family has free costs.
pub fn generate(family: &Family, fill: QFill, seed: u64) -> Result<QsppInstance> {
    let mut rng = seeded_rng(seed);
    let (graph, s, t) = match family {
        Family::Grid { p, q } => (make_grid(*p, *q)?, VertexId(0), VertexId(p * q - 1)),
        Family::Complete { n, example: true } => return fixed_complete(*n),
        Family::Complete { n, example: false } => {
            (make_complete_symmetric(*n, true, VertexId(0), VertexId(n - 1))?, VertexId(0), VertexId(n - 1))
        }
        Family::Cycle { n, t } => (make_directed_cycle(*n)?, VertexId(0), VertexId(*t)),
        Family::Hypercube { d } => (make_hypercube(*d)?, VertexId(0), VertexId((1 << d) - 1)),
        Family::Tournament { n, bits } => {
            let pairs = n * n.saturating_sub(1) / 2;
            let bits = bits.unwrap_or_else(|| if pairs >= 64 { rng.random() } else { rng.random_range(0..1u64 << pairs) });
            (make_tournament(*n, bits)?, VertexId(0), VertexId(n.saturating_sub(1)))
        }
        Family::QapReduce { qap, n } => {
            let qap = match qap {
                Some(qap) => qap.clone(),
                None => random_qap(*n, 9, &mut rng)?,
            };
            return Ok(qap_to_qspp(&qap)?.instance);
        }
        Family::DisjointReduce { n, density } => {
            if *n < 4 {
                return Err(Error::InvalidSize(format!("disjoint-paths graphs need n >= 4, got {n}")));
            }
            let g = random_digraph(*n, *density, &mut rng)?;
            let dp = DisjointPathsInstance::new(g, VertexId(0), VertexId(n - 1), VertexId(1), VertexId(n - 2))?;
            return disjoint_to_aqspp(&dp);
        }
        Family::Counterexample { epsilon } => return make_cyclic_counterexample(epsilon),
    };
    let (c, q) = fill_costs(&graph, fill, &mut rng);
    QsppInstance::new(graph, s, t, c, q)
}

/// Number of `s`-`t` paths, failing once `limit` is exceeded.
pub fn path_count(inst: &QsppInstance, limit: usize) -> Result<usize> {
    Ok(enumerate_st_paths(&inst.graph, inst.s, inst.t, Some(limit))?.len())
}
