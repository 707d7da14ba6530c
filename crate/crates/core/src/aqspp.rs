//! Adjacent QSPP: only pairs of arcs that follow each other on a path may
//! interact. On acyclic graphs the problem reduces to a shortest path in the
//! auxiliary graph whose vertices are the arcs of the input.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{is_acyclic, ArcId, Digraph, Path, VertexId};
use crate::instance::{CostVector, InteractionMatrix, QsppInstance};
use crate::rational::{int, Rational};
use crate::solve::shortest_path;

/// Arc-to-vertex lifting of an adjacent instance.
///
/// Vertex 0 stands for `s`, vertex `e + 1` for arc `e`, vertex `m + 1` for `t`.
/// There is an arc `V_(i,j) -> V_(j,l)` whenever `i != l`; arcs into the `s`
/// vertex and out of the `t` vertex are omitted since no source-to-target path
/// can use them.
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    pub graph: Digraph,
    pub cost: CostVector,
    /// Original arc represented by each auxiliary vertex (`None` for the
    /// endpoints).
    pub arc_of_vertex: Vec<Option<ArcId>>,
}

impl AuxiliaryGraph {
    pub fn source(&self) -> VertexId {
        VertexId(0)
    }

    pub fn target(&self) -> VertexId {
        VertexId(self.arc_of_vertex.len() - 1)
    }

    /// Original arcs visited by an auxiliary path.
    pub fn original_arcs(&self, aux_arcs: &[ArcId]) -> Vec<ArcId> {
        aux_arcs.iter().filter_map(|&a| self.arc_of_vertex[self.graph.to(a).0]).collect()
    }
}

/// First pair `(e, f)` with a nonzero interaction that is not head-to-tail
/// adjacent.
pub fn first_non_adjacent_pair(g: &Digraph, q: &InteractionMatrix) -> Option<(ArcId, ArcId)> {
    for e in g.arc_ids() {
        for f in g.arc_ids() {
            if q.get(e, f).is_zero() {
                continue;
            }
            let (i, j) = g.ends(e);
            let (k, l) = g.ends(f);
            let adjacent = (j == k && i != l) || (i == l && j != k);
            if !adjacent {
                return Some((e, f));
            }
        }
    }
    None
}

pub fn is_adjacent_qspp(inst: &QsppInstance) -> bool {
    first_non_adjacent_pair(&inst.graph, &inst.q).is_none()
}

pub fn build_auxiliary(inst: &QsppInstance) -> Result<AuxiliaryGraph> {
    if let Some((e, f)) = first_non_adjacent_pair(&inst.graph, &inst.q) {
        return Err(Error::NotAdjacent(e.0, f.0));
    }
    let g = &inst.graph;
    let m = g.arc_count();
    let tt = m + 1;
    let mut arcs = Vec::new();
    let mut cost = Vec::new();
    for &f in g.out_arcs(inst.s) {
        arcs.push((0, f.0 + 1));
        cost.push(inst.c[f].clone());
    }
    for e in g.arc_ids() {
        let (i, j) = g.ends(e);
        for &f in g.out_arcs(j) {
            if g.to(f) != i {
                arcs.push((e.0 + 1, f.0 + 1));
                cost.push(&inst.c[f] + int(2) * inst.q.get(e, f));
            }
        }
        if j == inst.t {
            arcs.push((e.0 + 1, tt));
            cost.push(Rational::zero());
        }
    }
    let mut arc_of_vertex = vec![None];
    arc_of_vertex.extend(g.arc_ids().map(Some));
    arc_of_vertex.push(None);
    Ok(AuxiliaryGraph { graph: Digraph::new(m + 2, arcs)?, cost: CostVector(cost), arc_of_vertex })
}

/// Optimal path of an adjacent instance on an acyclic graph.
///
/// Cyclic graphs are refused: there the auxiliary shortest path may be a walk
/// (see [`make_cyclic_counterexample`]).
pub fn solve_aqspp(inst: &QsppInstance) -> Result<(Path, Rational)> {
    if let Some((e, f)) = first_non_adjacent_pair(&inst.graph, &inst.q) {
        return Err(Error::NotAdjacent(e.0, f.0));
    }
    if !is_acyclic(&inst.graph) {
        return Err(Error::AuxiliaryRequiresAcyclic);
    }
    let aux = build_auxiliary(inst)?;
    let (aux_arcs, value) = shortest_path(&aux.graph, aux.source(), aux.target(), &aux.cost)?;
    let path = Path::new(&inst.graph, aux.original_arcs(&aux_arcs))?;
    Ok((path, value))
}

/// Result of running the auxiliary shortest path without the acyclicity guard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryWalk {
    pub arcs: Vec<ArcId>,
    pub vertices: Vec<VertexId>,
    pub value: Rational,
}

impl AuxiliaryWalk {
    /// Whether the walk visits some vertex twice.
    pub fn repeats_vertex(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.vertices.iter().all(|v| seen.insert(*v))
    }
}

/// Shortest auxiliary path mapped back to a walk in the input graph, on any
/// graph. Needs nonnegative auxiliary costs when the input is cyclic.
pub fn auxiliary_shortest_walk(inst: &QsppInstance) -> Result<AuxiliaryWalk> {
    let aux = build_auxiliary(inst)?;
    let (aux_arcs, value) = shortest_path(&aux.graph, aux.source(), aux.target(), &aux.cost)?;
    let arcs = aux.original_arcs(&aux_arcs);
    let mut vertices = vec![inst.s];
    vertices.extend(arcs.iter().map(|&e| inst.graph.to(e)));
    Ok(AuxiliaryWalk { arcs, vertices, value })
}

/// The five-vertex cyclic instance on which the auxiliary construction fails.
///
/// Vertices `0..5` stand for `1..=5`; arcs are `1->2, 2->3, 3->4, 4->2, 2->5`
/// (ids 0 to 4), `c_(3,4) = epsilon`, `q_(1,2),(2,5) = 1`, `s = 1`, `t = 5`.
pub fn make_cyclic_counterexample(epsilon: &Rational) -> Result<QsppInstance> {
    if !(epsilon > &Rational::zero() && epsilon < &int(1)) {
        return Err(Error::Precondition(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let g = Digraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 1), (1, 4)])?;
    let mut inst = QsppInstance::zero(g, VertexId(0), VertexId(4))?;
    inst.c[ArcId(2)] = epsilon.clone();
    inst.q.set_sym(ArcId(0), ArcId(4), int(1));
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_st_paths;
    use crate::rational::ratio;
    use crate::solve::{brute_force_solve, spp_solve};

    #[test]
    fn adjacency_recognition() {
        let inst = make_cyclic_counterexample(&ratio(1, 2)).unwrap();
        assert!(is_adjacent_qspp(&inst));
        let mut far = QsppInstance::zero(Digraph::new(4, [(0, 1), (2, 3)]).unwrap(), VertexId(0), VertexId(1)).unwrap();
        assert!(is_adjacent_qspp(&far));
        far.q.set_sym(ArcId(0), ArcId(1), int(1));
        assert!(!is_adjacent_qspp(&far));
        // a 2-cycle pair shares both endpoints and is not adjacent in the path sense
        let mut two = QsppInstance::zero(Digraph::new(2, [(0, 1), (1, 0)]).unwrap(), VertexId(0), VertexId(1)).unwrap();
        two.q.set_sym(ArcId(0), ArcId(1), int(1));
        assert!(!is_adjacent_qspp(&two));
    }

    #[test]
    fn counterexample_auxiliary_graph() {
        let inst = make_cyclic_counterexample(&ratio(1, 2)).unwrap();
        let aux = build_auxiliary(&inst).unwrap();
        assert_eq!(aux.graph.vertex_count(), 7);
        let mut arcs: Vec<(usize, usize)> = aux.graph.arc_ids().map(|a| (aux.graph.from(a).0, aux.graph.to(a).0)).collect();
        arcs.sort();
        // V11=0, V12=1, V23=2, V34=3, V42=4, V25=5, V55=6; the arc V42 -> V23
        // closes the auxiliary cycle V23 -> V34 -> V42 -> V23
        assert_eq!(arcs, vec![(0, 1), (1, 2), (1, 5), (2, 3), (3, 4), (4, 2), (4, 5), (5, 6)]);
    }

    #[test]
    fn counterexample_values() {
        let eps = ratio(1, 2);
        let inst = make_cyclic_counterexample(&eps).unwrap();
        let (path, cost) = brute_force_solve(&inst, None).unwrap();
        assert_eq!(path.vertex_indices(), vec![0, 1, 4]);
        assert_eq!(cost, int(2));
        let walk = auxiliary_shortest_walk(&inst).unwrap();
        assert_eq!(walk.value, eps);
        assert!(walk.repeats_vertex());
        assert_eq!(walk.vertices.iter().map(|v| v.0).collect::<Vec<_>>(), vec![0, 1, 2, 3, 1, 4]);
        assert_eq!(solve_aqspp(&inst), Err(Error::AuxiliaryRequiresAcyclic));
        assert!(make_cyclic_counterexample(&int(1)).is_err());
        assert!(make_cyclic_counterexample(&int(0)).is_err());
    }

    #[test]
    fn single_arc() {
        let mut inst = QsppInstance::zero(Digraph::new(2, [(0, 1)]).unwrap(), VertexId(0), VertexId(1)).unwrap();
        inst.c[ArcId(0)] = int(3);
        let aux = build_auxiliary(&inst).unwrap();
        assert_eq!((aux.graph.vertex_count(), aux.graph.arc_count()), (3, 2));
        assert_eq!(solve_aqspp(&inst).unwrap().1, int(3));
    }

    #[test]
    fn zero_q_matches_spp_and_bijection() {
        let g = Digraph::new(6, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (1, 5)]).unwrap();
        let c = CostVector((0..9).map(|k| int((k * 7 % 5) as i64)).collect());
        let inst = QsppInstance::new(g.clone(), VertexId(0), VertexId(5), c.clone(), InteractionMatrix::zeros(9)).unwrap();
        let spp = inst.linear_part();
        assert_eq!(solve_aqspp(&inst).unwrap().1, spp_solve(&spp).unwrap().1);
        let aux = build_auxiliary(&inst).unwrap();
        let n_aux = enumerate_st_paths(&aux.graph, aux.source(), aux.target(), None).unwrap().len();
        let n = enumerate_st_paths(&g, VertexId(0), VertexId(5), None).unwrap().len();
        assert_eq!(n, n_aux);
    }
}
