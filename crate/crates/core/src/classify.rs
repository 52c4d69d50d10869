//! Unitary invariants of the left algebra and the classification of graphs
//! up to isomorphism.

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::fourier::commutant_residual;
use crate::graph::{find_isomorphism, strongly_connected_components, DirectedMultigraph, Isomorphism, TransitionMatrix};
use crate::path::Path;
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;

/// `a_{yx} = rank(P_y E_1 Q_x)`, indexed `[y][x]`.
pub fn edge_rank_matrix(space: &FockSpace) -> Result<TransitionMatrix> {
    if space.level() == 0 {
        return Err(Error::LevelTooSmall { level: 0, required: 1 });
    }
    let g = space.graph();
    let e1 = space.level_projection::<i64>(1)?;
    let mut a = vec![vec![0; g.vertex_count()]; g.vertex_count()];
    for y in g.vertex_ids() {
        let py = &space.vertex_projection::<i64>(y) * &e1;
        for x in g.vertex_ids() {
            // a product of commuting diagonal projections: its rank is its trace
            let m = &py * &space.source_projection::<i64>(x);
            a[y.0][x.0] = m.entries().iter().filter(|e| e.0 == e.1).count();
        }
    }
    Ok(a)
}

/// Membership in the ideal of algebra elements with `A*ξ_x = 0` for every
/// vertex; the vacuum coefficients `⟨Aξ_x, ξ_x⟩` must vanish as well.
pub fn ideal_l0_membership<T: Scalar>(a: &SparseOperator<T>, space: &FockSpace, tol: f64) -> Result<bool> {
    let residual = commutant_residual(a, space).max();
    if residual > tol {
        return Err(Error::NotInAlgebra { residual });
    }
    let nv = space.graph().vertex_count();
    let vacuum = (0..nv).all(|x| a.get(x, x).magnitude() <= tol);
    let rows = a.entries().iter().all(|(r, _, v)| *r >= nv || v.magnitude() <= tol);
    Ok(vacuum && rows)
}

/// The permutation `ξ_w ↦ ξ_{φ(w)}` from the first space to the second.
pub fn intertwining_unitary(s1: &FockSpace, s2: &FockSpace, iso: &Isomorphism) -> Result<SparseOperator<i64>> {
    let (g1, g2) = (s1.graph(), s2.graph());
    if !iso.is_valid(g1, g2) {
        return Err(Error::Degenerate("maps are not a graph isomorphism".into()));
    }
    if s1.level() != s2.level() {
        return Err(Error::DimensionMismatch {
            expected: s1.level(),
            found: s2.level(),
        });
    }
    let mut triplets = Vec::with_capacity(s1.dim());
    for (i, p) in s1.table().paths().iter().enumerate() {
        let image = if p.is_vertex() {
            Path::vertex(iso.vertex_map[p.source().0])
        } else {
            Path::word(g2, p.edges().iter().map(|e| iso.edge_map[e.0]).collect())?
        };
        let j = s2.index_of(&image).expect("isomorphic graphs have matching path tables");
        triplets.push((j, i, 1i64));
    }
    Ok(SparseOperator::from_triplets(s1.dim(), 0, triplets))
}

/// `max` over generators of `|U* L′_{φ(e)} U − L_e|` and `|U* P′_{φ(x)} U − P_x|`.
pub fn intertwining_residual(s1: &FockSpace, s2: &FockSpace, iso: &Isomorphism, u: &SparseOperator<i64>) -> i64 {
    let g1 = s1.graph();
    let ua = u.adjoint();
    let mut worst = 0;
    for e in g1.edge_ids() {
        let conj = &(&ua * &s2.left::<i64>(iso.edge_map[e.0])) * u;
        worst = worst.max((&conj - &s1.left::<i64>(e)).entries().iter().map(|t| t.2.abs()).max().unwrap_or(0));
    }
    for x in g1.vertex_ids() {
        let conj = &(&ua * &s2.vertex_projection::<i64>(iso.vertex_map[x.0])) * u;
        worst = worst.max(
            (&conj - &s1.vertex_projection::<i64>(x))
                .entries()
                .iter()
                .map(|t| t.2.abs())
                .max()
                .unwrap_or(0),
        );
    }
    worst
}

/// The cheapest invariant on which two graphs disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariant {
    VertexCount(usize, usize),
    EdgeCount(usize, usize),
    /// Sorted `(in, out, loops)` per vertex.
    DegreeSignature(Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>),
    /// Sorted `(size, internal edges)` per strongly connected component.
    ComponentSignature(Vec<(usize, usize)>, Vec<(usize, usize)>),
    /// No vertex bijection carries one transition matrix to the other.
    TransitionMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassificationVerdict {
    Isomorphic {
        iso: Isomorphism,
        /// Largest entry of the intertwining defect; zero for a verified witness.
        residual: i64,
    },
    Distinguished(Invariant),
}

impl ClassificationVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, ClassificationVerdict::Isomorphic { .. })
    }
}

fn degree_signature(g: &DirectedMultigraph) -> Vec<(usize, usize, usize)> {
    let mut s: Vec<_> = g
        .vertex_ids()
        .map(|v| (g.in_edges(v).len(), g.out_edges(v).len(), g.loops_at(v).count()))
        .collect();
    s.sort_unstable();
    s
}

fn component_signature(g: &DirectedMultigraph) -> Vec<(usize, usize)> {
    let c = strongly_connected_components(g);
    let mut s: Vec<_> = (0..c.len()).map(|i| (c.components[i].len(), c.internal_edges(g, i).len())).collect();
    s.sort_unstable();
    s
}

/// Decides whether the two left algebras are unitarily equivalent: an
/// isomorphism comes with an intertwining unitary checked at level `n`,
/// otherwise the first disagreeing invariant is reported.
pub fn classify_pair(g1: &DirectedMultigraph, g2: &DirectedMultigraph, n: usize) -> Result<ClassificationVerdict> {
    if let Some(iso) = find_isomorphism(g1, g2) {
        let s1 = FockSpace::new(g1, n)?;
        let s2 = FockSpace::new(g2, n)?;
        let u = intertwining_unitary(&s1, &s2, &iso)?;
        let residual = intertwining_residual(&s1, &s2, &iso, &u);
        return Ok(ClassificationVerdict::Isomorphic { iso, residual });
    }
    let inv = if g1.vertex_count() != g2.vertex_count() {
        Invariant::VertexCount(g1.vertex_count(), g2.vertex_count())
    } else if g1.edge_count() != g2.edge_count() {
        Invariant::EdgeCount(g1.edge_count(), g2.edge_count())
    } else if degree_signature(g1) != degree_signature(g2) {
        Invariant::DegreeSignature(degree_signature(g1), degree_signature(g2))
    } else if component_signature(g1) != component_signature(g2) {
        Invariant::ComponentSignature(component_signature(g1), component_signature(g2))
    } else {
        Invariant::TransitionMatrix
    };
    Ok(ClassificationVerdict::Distinguished(inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::gauge::{gauge_unitary, GaugeData};
    use crate::graph::{EdgeId, VertexId};
    use num_complex::Complex64 as C;

    #[test]
    fn rank_matrix_examples() {
        let g = corpus::loop_bridge_loop();
        let s = FockSpace::new(&g, 2).unwrap();
        assert_eq!(edge_rank_matrix(&s).unwrap(), vec![vec![1, 0], vec![1, 1]]);
        let g = corpus::fork();
        let s = FockSpace::new(&g, 1).unwrap();
        assert_eq!(edge_rank_matrix(&s).unwrap(), vec![vec![0, 0, 0], vec![1, 0, 0], vec![1, 0, 0]]);
        let bare = DirectedMultigraph::new(["a", "b"], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(edge_rank_matrix(&FockSpace::new(&bare, 1).unwrap()).unwrap(), vec![vec![0, 0]; 2]);
        assert!(edge_rank_matrix(&FockSpace::new(&bare, 0).unwrap()).is_err());
    }

    #[test]
    fn ideal_membership() {
        let g = corpus::loops(1);
        let s = FockSpace::new(&g, 4).unwrap();
        let l: SparseOperator<C> = s.left(EdgeId(0));
        let p: SparseOperator<C> = s.vertex_projection(VertexId(0));
        assert!(ideal_l0_membership(&l, &s, 1e-12).unwrap());
        assert!(!ideal_l0_membership(&p, &s, 1e-12).unwrap());
        let a = &l - &p.scale(&C::new(0.5, 0.0));
        assert!(!ideal_l0_membership(&a, &s, 1e-12).unwrap());
    }

    #[test]
    fn swapped_loops_match_the_gauge_swap() {
        let g = corpus::loops(2);
        let s = FockSpace::new(&g, 3).unwrap();
        let iso = Isomorphism {
            vertex_map: vec![VertexId(0)],
            edge_map: vec![EdgeId(1), EdgeId(0)],
        };
        let u = intertwining_unitary(&s, &s, &iso).unwrap();
        assert_eq!(intertwining_residual(&s, &s, &iso, &u), 0);
        let one = C::new(1.0, 0.0);
        let zero = C::new(0.0, 0.0);
        let gd = GaugeData {
            blocks: [((VertexId(0), VertexId(0)), vec![vec![zero, one], vec![one, zero]])].into_iter().collect(),
        };
        let swap = gauge_unitary(&s, &gd, 1e-12).unwrap();
        assert_eq!(u.map(|v| C::new(*v as f64, 0.0)), swap);
    }

    #[test]
    fn verdicts() {
        let c3 = corpus::cycle(3);
        let rot = DirectedMultigraph::new(["a", "b", "c"], [("p", "b", "c"), ("q", "c", "a"), ("r", "a", "b")]).unwrap();
        match classify_pair(&c3, &rot, 5).unwrap() {
            ClassificationVerdict::Isomorphic { residual, .. } => assert_eq!(residual, 0),
            v => panic!("{v:?}"),
        }
        assert_eq!(
            classify_pair(&corpus::loops(2), &corpus::cycle(2), 4).unwrap(),
            ClassificationVerdict::Distinguished(Invariant::VertexCount(1, 2))
        );
        assert_eq!(
            classify_pair(&corpus::loop_tail(), &corpus::loop_bridge_loop(), 4).unwrap(),
            ClassificationVerdict::Distinguished(Invariant::EdgeCount(2, 3))
        );
    }

    #[test]
    fn invalid_maps_are_rejected() {
        let g = corpus::loop_tail();
        let s = FockSpace::new(&g, 2).unwrap();
        let bad = Isomorphism {
            vertex_map: vec![VertexId(1), VertexId(0)],
            edge_map: vec![EdgeId(0), EdgeId(1)],
        };
        assert!(intertwining_unitary(&s, &s, &bad).is_err());
    }
}
