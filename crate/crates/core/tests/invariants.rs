use std::collections::BTreeMap;

use itertools::Itertools;
use proptest::prelude::*;

use qspp::generate::{fill_costs, random_dag, random_digraph, random_linear, random_qap, seeded_rng, QFill};
use qspp::graph::{enumerate_st_paths, make_complete_symmetric, make_grid, Grid};
use qspp::linearization::{
    build_path_matrix, find_mismatch, k4_linearize, linearize_by_paths, linearize_grid, path_class_costs,
    reduce_cost_vector, verify_certificate, Witness,
};
use qspp::rational::{int, ratio};
use qspp::reductions::{brute_force_qap, disjoint_to_aqspp, qap_to_qspp, DisjointPathsInstance, QapInstance};
use qspp::solve::{brute_force_solve, spp_solve};
use qspp::{path_cost, CostVector, Digraph, Path, QsppInstance, Rational, VertexId};

fn dag_instance(seed: u64, n: usize, fill: QFill) -> Option<QsppInstance> {
    let mut rng = seeded_rng(seed);
    let g = random_dag(n, 0.5, &mut rng).unwrap();
    let (s, t) = (VertexId(0), VertexId(n - 1));
    if enumerate_st_paths(&g, s, t, None).unwrap().is_empty() {
        return None;
    }
    let (_, q) = fill_costs(&g, fill, &mut rng);
    let c = random_linear(g.arc_count(), 9, &mut rng);
    Some(QsppInstance::new(g, s, t, c, q).unwrap())
}

fn characteristic_cost(inst: &QsppInstance, path: &Path) -> Rational {
    let m = inst.arc_count();
    let x = path.characteristic(m);
    let mut total = int(0);
    for e in 0..m {
        if !x[e] {
            continue;
        }
        total += &inst.c.0[e];
        for f in 0..m {
            if x[f] {
                total += inst.q.row(qspp::ArcId(e))[f].clone();
            }
        }
    }
    total
}

fn direct_qap_cost(qap: &QapInstance, perm: &[usize]) -> Rational {
    let n = qap.n;
    let pairs: Rational = (0..n).cartesian_product(0..n).map(|(i, k)| &qap.a[i][k] * &qap.b[perm[i]][perm[k]]).sum();
    pairs + (0..n).map(|i| &qap.c[i][perm[i]]).sum::<Rational>()
}

fn has_disjoint_pair(dp: &DisjointPathsInstance) -> bool {
    let first = enumerate_st_paths(&dp.graph, dp.s, dp.t, None).unwrap();
    let second = enumerate_st_paths(&dp.graph, dp.s_bar, dp.t_bar, None).unwrap();
    first.iter().any(|p| second.iter().any(|r| r.arcs().iter().all(|e| !p.contains_arc(*e))))
}

fn potential_kernel(g: &Digraph, s: VertexId, t: VertexId, seed: u64) -> CostVector {
    let mut pi = random_linear(g.vertex_count(), 20, &mut seeded_rng(seed)).0;
    pi[t.0] = pi[s.0].clone();
    CostVector(g.arc_ids().map(|e| &pi[g.to(e).0] - &pi[g.from(e).0]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn path_cost_is_the_characteristic_quadratic_form(seed in any::<u64>(), n in 4usize..=8) {
        if let Some(inst) = dag_instance(seed, n, QFill::Random { max: 9 }) {
            for p in enumerate_st_paths(&inst.graph, inst.s, inst.t, None).unwrap() {
                prop_assert_eq!(path_cost(&inst, &p).unwrap(), characteristic_cost(&inst, &p));
            }
        }
    }

    #[test]
    fn path_cost_scales(seed in any::<u64>(), n in 4usize..=7, num in -5i64..=5, den in 1i64..=4) {
        if let Some(inst) = dag_instance(seed, n, QFill::Random { max: 9 }) {
            let alpha = ratio(num, den);
            let scaled = inst.with_costs(inst.c.scale(&alpha), inst.q.scale(&alpha)).unwrap();
            for p in enumerate_st_paths(&inst.graph, inst.s, inst.t, None).unwrap() {
                prop_assert_eq!(path_cost(&scaled, &p).unwrap(), &alpha * path_cost(&inst, &p).unwrap());
            }
        }
    }

    #[test]
    fn spp_matches_brute_force_on_dags(seed in any::<u64>(), n in 3usize..=9) {
        if let Some(inst) = dag_instance(seed, n, QFill::Zero) {
            let shifted = CostVector(inst.c.iter().map(|v| v - int(3)).collect());
            let inst = inst.with_costs(shifted, inst.q.clone()).unwrap();
            let (path, cost) = spp_solve(&inst.linear_part()).unwrap();
            prop_assert_eq!(inst.c.path_sum(&path), cost.clone());
            prop_assert_eq!(brute_force_solve(&inst, None).unwrap().1, cost);
        }
    }

    #[test]
    fn qap_reduction_preserves_costs(seed in any::<u64>(), n in 1usize..=4) {
        let qap = random_qap(n, 9, &mut seeded_rng(seed)).unwrap();
        let red = qap_to_qspp(&qap).unwrap();
        let mut best = None::<Rational>;
        for perm in (0..n).permutations(n) {
            let direct = direct_qap_cost(&qap, &perm);
            let path = red.encode(&perm).unwrap();
            prop_assert_eq!(red.decode(&path), Some(perm.clone()));
            prop_assert_eq!(path_cost(&red.instance, &path).unwrap(), direct.clone());
            best = Some(best.map_or(direct.clone(), |b| b.min(direct)));
        }
        let best = best.unwrap();
        prop_assert_eq!(brute_force_qap(&qap).unwrap().1, best.clone());
        prop_assert_eq!(brute_force_solve(&red.instance, None).unwrap().1, best);
    }

    #[test]
    fn disjoint_reduction_detects_arc_disjoint_pairs(seed in any::<u64>(), n in 4usize..=6) {
        let g = random_digraph(n, 0.35, &mut seeded_rng(seed)).unwrap();
        let dp = DisjointPathsInstance::new(g, VertexId(0), VertexId(n - 1), VertexId(1), VertexId(n - 2)).unwrap();
        let inst = disjoint_to_aqspp(&dp).unwrap();
        let zero = match brute_force_solve(&inst, None) {
            Ok((_, cost)) => cost == int(0),
            Err(_) => false,
        };
        prop_assert_eq!(zero, has_disjoint_pair(&dp));
    }

    #[test]
    fn closed_form_path_class_costs(seed in any::<u64>(), n in 5usize..=7) {
        let (s, t) = (VertexId(0), VertexId(n - 1));
        let g = make_complete_symmetric(n, true, s, t).unwrap();
        let mut rng = seeded_rng(seed);
        let (_, q) = fill_costs(&g, QFill::Random { max: 9 }, &mut rng);
        let c = random_linear(g.arc_count(), 9, &mut rng);
        let inst = QsppInstance::new(g, s, t, c, q).unwrap();
        let mut by_length: BTreeMap<usize, Rational> = (2..n).map(|k| (k, int(0))).collect();
        for p in enumerate_st_paths(&inst.graph, s, t, None).unwrap() {
            *by_length.get_mut(&p.len()).unwrap() += path_cost(&inst, &p).unwrap();
        }
        prop_assert_eq!(path_class_costs(&inst).unwrap().1, by_length);
    }

    #[test]
    fn k4_agrees_with_nonnegative_oracle(seed in any::<u64>()) {
        let (s, t) = (VertexId(0), VertexId(3));
        let g = make_complete_symmetric(4, true, s, t).unwrap();
        let mut rng = seeded_rng(seed);
        let (_, q) = fill_costs(&g, QFill::Random { max: 4 }, &mut rng);
        let c = CostVector(random_linear(6, 9, &mut rng).iter().map(|v| v - int(2)).collect());
        let inst = QsppInstance::new(g, s, t, c, q).unwrap();
        let k4 = k4_linearize(&inst).unwrap();
        let lp = linearize_by_paths(&inst, true, None).unwrap();
        prop_assert_eq!(k4.verdict, lp.verdict);
        match (&k4.vector, &k4.witness) {
            (Some(v), _) => {
                prop_assert!(v.is_nonnegative());
                prop_assert_eq!(find_mismatch(&inst, v, None).unwrap(), None);
            }
            (None, Some(Witness::Certificate { y, .. })) => {
                let pm = build_path_matrix(&inst, None).unwrap();
                prop_assert!(verify_certificate(&pm, y, true));
            }
            _ => prop_assert!(false, "rejection without certificate"),
        }
    }

    #[test]
    fn reduced_form_ignores_potential_kernel(seed in any::<u64>(), p in 2usize..=5, q in 2usize..=5) {
        let grid = Grid::new(p, q).unwrap();
        let c = random_linear(grid.graph().arc_count(), 9, &mut seeded_rng(seed));
        let z = potential_kernel(grid.graph(), grid.source(), grid.target(), seed ^ 0x5eed);
        prop_assert_eq!(reduce_cost_vector(&grid, &c).unwrap(), reduce_cost_vector(&grid, &c.add(&z)).unwrap());
    }

    #[test]
    fn grid_verdict_is_scale_invariant(seed in any::<u64>(), p in 2usize..=4, q in 2usize..=4, num in 1i64..=7) {
        let g = make_grid(p, q).unwrap();
        let mut rng = seeded_rng(seed);
        let fill = if seed % 2 == 0 { QFill::WeakSum { max: 9 } } else { QFill::Random { max: 3 } };
        let (c, qm) = fill_costs(&g, fill, &mut rng);
        let inst = QsppInstance::new(g, VertexId(0), VertexId(p * q - 1), c, qm).unwrap();
        let verdict = linearize_grid(&inst).unwrap().verdict;
        for alpha in [ratio(num, 3), ratio(-num, 2)] {
            let scaled = inst.with_costs(inst.c.scale(&alpha), inst.q.scale(&alpha)).unwrap();
            prop_assert_eq!(linearize_grid(&scaled).unwrap().verdict, verdict);
        }
    }
}
