//! Pairs of partial isometries with orthogonal ranges built from double
//! cycles, the standard form of partial isometries, and inner-outer
//! factorization.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{FockSpace, Side};
use crate::fourier::{commutant_residual, CoefficientTable};
use crate::graph::{double_cycles, DirectedMultigraph, EdgeId, VertexId};
use crate::linalg::{inner, norm, orthonormalize};
use crate::path::Path;
use crate::scalar::{Real, Scalar};
use crate::sparse::SparseOperator;
use crate::spectral::{column_vectors, wandering_basis};

/// `U`, `V` as sums of words with the residuals of
/// `U*U = V*V = P_S`, `UU* ≤ P_S`, `VV* ≤ P_S` and `U*V = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryPairReport {
    pub u_terms: CoefficientTable<i64>,
    pub v_terms: CoefficientTable<i64>,
    pub u: SparseOperator<i64>,
    pub v: SparseOperator<i64>,
    /// Vertices `S` of the common initial projection `P_S`.
    pub initial_vertices: Vec<VertexId>,
    /// `max(‖U*U − P_S‖, ‖V*V − P_S‖)` on safe levels.
    pub initial_residual: i64,
    /// Largest violation of `UU* ≤ P_S` or `VV* ≤ P_S`, over all levels.
    pub range_residual: i64,
    /// `‖U*V‖` over all levels.
    pub cross_residual: i64,
    /// Columns on which the initial projections are compared.
    pub safe_bound: usize,
    /// Basis size of the truncation.
    pub dim: usize,
}

impl IsometryPairReport {
    pub fn passed(&self) -> bool {
        self.initial_residual == 0 && self.range_residual == 0 && self.cross_residual == 0 && self.safe_bound > 0
    }

    /// `U*U = V*V = I`, i.e. `S` is every vertex.
    pub fn isometric(&self, g: &DirectedMultigraph) -> bool {
        self.passed() && self.initial_vertices.len() == g.vertex_count()
    }
}

fn sum_of_words(space: &FockSpace, words: &[Path]) -> Result<(CoefficientTable<i64>, SparseOperator<i64>)> {
    let mut tbl = CoefficientTable::new();
    let mut op = SparseOperator::zeros(space.dim());
    for w in words {
        tbl.add(w.clone(), 1);
        op = &op + &space.word_operator::<i64>(Side::L, w)?;
    }
    Ok((tbl, op))
}

/// A range projection `RR*` is at most `P` when it is diagonal with its
/// support inside that of `P`; returns the largest violation.
fn range_excess(r: &SparseOperator<i64>, p: &SparseOperator<i64>) -> i64 {
    let rr = r * &r.adjoint();
    rr.entries()
        .iter()
        .map(|&(i, j, v)| if i != j { v.abs() } else { (v - p.get(i, i)).max(0) + (v * v - v).abs() })
        .max()
        .unwrap_or(0)
}

fn verify_pair(space: &FockSpace, u_words: &[Path], v_words: &[Path], s: Vec<VertexId>) -> Result<IsometryPairReport> {
    let (u_terms, u) = sum_of_words(space, u_words)?;
    let (v_terms, v) = sum_of_words(space, v_words)?;
    let p = s
        .iter()
        .fold(SparseOperator::zeros(space.dim()), |acc, &x| &acc + &space.vertex_projection::<i64>(x));
    let uu = &u.adjoint() * &u;
    let vv = &v.adjoint() * &v;
    let bound = space.safe_bound(uu.degree().max(vv.degree()));
    let initial_residual = (&uu - &p)
        .restrict_columns(bound)
        .entries()
        .iter()
        .chain((&vv - &p).restrict_columns(bound).entries())
        .map(|e| e.2.abs())
        .max()
        .unwrap_or(0);
    let range_residual = range_excess(&u, &p).max(range_excess(&v, &p));
    let cross_residual = (&u.adjoint() * &v).entries().iter().map(|e| e.2.abs()).max().unwrap_or(0);
    Ok(IsometryPairReport {
        u_terms,
        v_terms,
        u,
        v,
        initial_vertices: s,
        initial_residual,
        range_residual,
        cross_residual,
        safe_bound: bound,
        dim: space.dim(),
    })
}

/// `U = L_w`, `V = L_{w′}` for the first double cycle `(x, w, w′)`; `None`
/// when the graph has no double cycle.
pub fn double_cycle_pair(space: &FockSpace) -> Result<Option<IsometryPairReport>> {
    let g = space.graph();
    let Some(dc) = double_cycles(g).into_iter().next() else {
        return Ok(None);
    };
    let required = 2 * dc.first.len().max(dc.second.len());
    if space.level() < required {
        return Err(Error::LevelTooSmall {
            level: space.level(),
            required,
        });
    }
    let w1 = Path::word(g, dc.first)?;
    let w2 = Path::word(g, dc.second)?;
    verify_pair(space, &[w1], &[w2], vec![dc.vertex]).map(Some)
}

/// One basin of the isometry construction: the vertices `B` that reach the
/// base `x`, the two cycles at `x`, the word length `k` and the connectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basin {
    pub base: VertexId,
    pub cycles: [Vec<EdgeId>; 2],
    pub k: usize,
    /// `(y, v_y)` with `v_y` a shortest path from `y` to `x`.
    pub connectors: Vec<(VertexId, Vec<EdgeId>)>,
}

impl Basin {
    /// Longest word `u v_y` used by this basin.
    pub fn degree(&self) -> usize {
        let c = self.cycles[0].len().max(self.cycles[1].len());
        self.k * c + self.connectors.iter().map(|(_, v)| v.len()).max().unwrap_or(0)
    }

    /// The `j`-th word of length `k` over the two cycles, in lexicographic
    /// order with the first applied letter most significant.
    fn cycle_word(&self, j: usize) -> Vec<EdgeId> {
        (0..self.k)
            .flat_map(|i| self.cycles[(j >> (self.k - 1 - i)) & 1].iter().copied())
            .collect()
    }

    /// Words `u_y^{(1)} v_y` and `u_y^{(2)} v_y` as edge lists; the first
    /// `|B|` cycle words go to `U`, the next `|B|` to `V`.
    fn words(&self) -> (Vec<Vec<EdgeId>>, Vec<Vec<EdgeId>>) {
        let n = self.connectors.len();
        let build = |j: usize, v: &[EdgeId]| {
            let mut w = v.to_vec();
            w.extend(self.cycle_word(j));
            w
        };
        let u = self.connectors.iter().enumerate().map(|(i, (_, v))| build(i, v)).collect();
        let v = self.connectors.iter().enumerate().map(|(i, (_, v))| build(n + i, v)).collect();
        (u, v)
    }
}

/// Greedy basins in component order of the double cycles; `None` if some
/// vertex reaches no double cycle.
pub fn basins(g: &DirectedMultigraph) -> Option<Vec<Basin>> {
    let mut remaining: Vec<bool> = vec![true; g.vertex_count()];
    let mut out = Vec::new();
    for dc in double_cycles(g) {
        let connectors: Vec<(VertexId, Vec<EdgeId>)> = g
            .vertex_ids()
            .filter(|y| remaining[y.0])
            .filter_map(|y| g.shortest_path(y, dc.vertex).map(|p| (y, p)))
            .collect();
        if connectors.is_empty() {
            continue;
        }
        for (y, _) in &connectors {
            remaining[y.0] = false;
        }
        let mut k = 1;
        while (1usize << k) < 2 * connectors.len() {
            k += 1;
        }
        out.push(Basin {
            base: dc.vertex,
            cycles: [dc.first, dc.second],
            k,
            connectors,
        });
    }
    remaining.iter().all(|r| !r).then_some(out)
}

/// Isometries `U`, `V` with `U*V = 0` from the strong double-cycle property;
/// `None` when the property fails. The level must be at least twice the word
/// degree so that the initial projections can be compared.
pub fn strong_isometry_pair(space: &FockSpace) -> Result<Option<IsometryPairReport>> {
    let g = space.graph();
    let Some(bs) = basins(g) else {
        return Ok(None);
    };
    let required = 2 * bs.iter().map(Basin::degree).max().unwrap_or(0);
    if space.level() < required {
        return Err(Error::LevelTooSmall {
            level: space.level(),
            required,
        });
    }
    let mut u_words = Vec::new();
    let mut v_words = Vec::new();
    for b in &bs {
        let (u, v) = b.words();
        for w in u {
            u_words.push(Path::word(g, w)?);
        }
        for w in v {
            v_words.push(Path::word(g, w)?);
        }
    }
    verify_pair(space, &u_words, &v_words, g.vertex_ids().collect()).map(Some)
}

/// `V = Σ_x L_{η_x}` with `η_x = Vξ_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm<T> {
    pub pieces: Vec<(VertexId, Vec<T>)>,
    /// `‖V − Σ L_{η_x}‖` on safe levels.
    pub reconstruction: f64,
    /// `‖V*V − Σ_{x ∈ S} P_x‖` on safe levels.
    pub initial_residual: f64,
}

/// Splits a partial isometry in the algebra into creation operators of its
/// vacuum images.
pub fn standard_form<T: Scalar>(v: &SparseOperator<T>, space: &FockSpace, tol: f64) -> Result<StandardForm<T>> {
    let residual = commutant_residual(v, space).max();
    if residual > tol {
        return Err(Error::NotInAlgebra { residual });
    }
    let vv = &v.adjoint() * v;
    let ww = v * &v.adjoint();
    let bound = space.safe_bound(vv.degree());
    let idem = (&(&vv * &vv) - &vv)
        .restrict_columns(space.safe_bound(2 * vv.degree()))
        .max_abs()
        .max((&(&ww * &ww) - &ww).restrict_columns(space.safe_bound(2 * ww.degree())).max_abs());
    if idem > tol {
        return Err(Error::NotPartialIsometry { residual: idem });
    }
    let g = space.graph();
    let mut pieces = Vec::new();
    let mut recon = SparseOperator::zeros(space.dim());
    let mut p = SparseOperator::zeros(space.dim());
    for x in g.vertex_ids() {
        let mut eta = vec![T::zero(); space.dim()];
        for (r, z) in v.column(x.0) {
            eta[r] = z;
        }
        if eta.iter().all(|z| z.magnitude() <= tol) {
            continue;
        }
        recon = &recon + &space.creation_from_vector(Side::L, Some(x), &eta)?;
        p = &p + &space.vertex_projection(x);
        pieces.push((x, eta));
    }
    let rbound = space.safe_bound(v.degree());
    Ok(StandardForm {
        pieces,
        reconstruction: (v - &recon).restrict_columns(rbound).max_abs(),
        initial_residual: (&vv - &p).restrict_columns(bound).max_abs(),
    })
}

/// `A = VB` with `V` inner on `P_S` and `B` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerOuter<F> {
    pub support: Vec<VertexId>,
    /// `(x, η_x)`: unit right-wandering vectors with `Q_x η_x = η_x`.
    pub wandering: Vec<(VertexId, Vec<Complex<F>>)>,
    pub inner: SparseOperator<Complex<F>>,
    pub outer: SparseOperator<Complex<F>>,
    /// `‖A − VB‖` on safe levels.
    pub factor_residual: f64,
    /// `‖V*V − P_S‖` on safe levels.
    pub initial_residual: f64,
    /// `rank(P_S) − rank(B)` on the levels where `B` is exact. Zero for an
    /// outer `B`; a truncation cannot see every failure of outerness.
    pub outer_deficit: usize,
}

/// Factors `A` through the wandering vectors of its range, which is
/// invariant under the right creation operators.
pub fn inner_outer_factor<F: Real>(
    a: &SparseOperator<Complex<F>>,
    space: &FockSpace,
    tol: F,
) -> Result<InnerOuter<F>> {
    let ftol = tol.to_f64().unwrap_or(0.0);
    let residual = commutant_residual(a, space).max();
    if residual > ftol {
        return Err(Error::NotInAlgebra { residual });
    }
    if a.prune(ftol).is_zero() {
        return Err(Error::Degenerate("the zero operator has no inner-outer factorization".into()));
    }
    let g = space.graph();
    let support: Vec<VertexId> = g
        .vertex_ids()
        .filter(|x| a.column(x.0).iter().any(|(_, z)| z.norm() > tol))
        .collect();
    let w = wandering_basis(space, &column_vectors(a), Side::R, tol)?;
    let mut wandering = Vec::new();
    let mut inner_op = SparseOperator::zeros(space.dim());
    let mut p = SparseOperator::zeros(space.dim());
    for &x in &support {
        let mut found: Vec<&Vec<Complex<F>>> = w.vectors.iter().filter(|(y, _)| *y == x).map(|(_, v)| v).collect();
        if found.len() != 1 {
            return Err(Error::Degenerate(format!(
                "range has {} wandering vectors at {}",
                found.len(),
                g.vertex_label(x)
            )));
        }
        let mut eta = found.pop().unwrap().clone();
        // fix the phase so that ⟨Aξ_x, η_x⟩ > 0
        let mut col = vec![Complex::zero(); space.dim()];
        for (r, z) in a.column(x.0) {
            col[r] = z;
        }
        let c = inner(&col, &eta);
        if c.norm() > F::zero() {
            let phase = c / Complex::new(c.norm(), F::zero());
            for z in eta.iter_mut() {
                *z = *z * phase;
            }
        }
        let eta: Vec<Complex<F>> = eta
            .into_iter()
            .map(|z| if z.norm() <= tol { Complex::zero() } else { z })
            .collect();
        inner_op = &inner_op + &space.creation_from_vector(Side::L, Some(x), &eta)?;
        p = &p + &space.vertex_projection::<Complex<F>>(x);
        wandering.push((x, eta));
    }
    let outer = &inner_op.adjoint() * a;
    let fbound = space.safe_bound(inner_op.degree() + outer.degree());
    let factor_residual = (a - &(&inner_op * &outer)).restrict_columns(fbound).max_abs();
    let vv = &inner_op.adjoint() * &inner_op;
    let initial_residual = (&vv - &p).restrict_columns(space.safe_bound(vv.degree())).max_abs();
    // rows and columns at levels ≤ N − deg V are computed exactly
    let m = space.safe_bound(inner_op.degree());
    let corner = p.entries().iter().filter(|e| e.0 < m).count();
    let rank = orthonormalize(&column_vectors(&outer.filter(|r, c| r < m && c < m)), &[], tol).len();
    Ok(InnerOuter {
        support,
        wandering,
        inner: inner_op,
        outer,
        factor_residual,
        initial_residual,
        outer_deficit: corner.saturating_sub(rank),
    })
}

/// Unit-norm check used by callers comparing factorizations up to phase.
pub fn unimodular_ratio<F: Real>(a: &[Complex<F>], b: &[Complex<F>], tol: F) -> Option<Complex<F>> {
    let i = a.iter().position(|z| z.norm() > tol)?;
    if b[i].norm() <= tol {
        return None;
    }
    let r = b[i] / a[i];
    let scaled: Vec<Complex<F>> = a.iter().zip(b).map(|(x, y)| *x * r - *y).collect();
    ((r.norm() - F::one()).abs() <= tol && norm(&scaled) <= tol).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_complex::Complex64 as C;

    #[test]
    fn two_loops_give_the_free_generators() {
        let g = corpus::loops(2);
        let s = FockSpace::new(&g, 4).unwrap();
        let r = double_cycle_pair(&s).unwrap().unwrap();
        assert!(r.passed());
        assert_eq!(r.u, s.left(EdgeId(0)));
        assert_eq!(r.v, s.left(EdgeId(1)));
        let r = strong_isometry_pair(&s).unwrap().unwrap();
        assert!(r.isometric(&g));
        assert_eq!(r.u, s.left(EdgeId(0)));
    }

    #[test]
    fn cycles_give_nothing() {
        for n in 1..5 {
            let s = FockSpace::new(&corpus::cycle(n), 6).unwrap();
            assert!(double_cycle_pair(&s).unwrap().is_none());
            assert!(strong_isometry_pair(&s).unwrap().is_none());
        }
        let s = FockSpace::new(&corpus::loop_tail(), 6).unwrap();
        assert!(double_cycle_pair(&s).unwrap().is_none());
    }

    #[test]
    fn double_loop_with_return_edge() {
        let g = corpus::double_loop_return();
        let bs = basins(&g).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].connectors.len(), 2);
        assert_eq!(bs[0].k, 2);
        assert_eq!(bs[0].degree(), 3);
        let s = FockSpace::new(&g, 5).unwrap();
        assert_eq!(
            strong_isometry_pair(&s),
            Err(Error::LevelTooSmall { level: 5, required: 6 })
        );
        let s = FockSpace::new(&g, 6).unwrap();
        let r = strong_isometry_pair(&s).unwrap().unwrap();
        assert!(r.isometric(&g), "{r:?}");
        assert_eq!(r.u_terms.len(), 2);
        assert_eq!(r.v_terms.len(), 2);
    }

    #[test]
    fn strong_pair_needs_every_vertex_to_reach_a_double_cycle() {
        // x has two loops, y only receives from x
        let g = DirectedMultigraph::new(["x", "y"], [("a", "x", "x"), ("b", "x", "x"), ("c", "x", "y")]).unwrap();
        let s = FockSpace::new(&g, 4).unwrap();
        assert!(double_cycle_pair(&s).unwrap().unwrap().passed());
        assert!(strong_isometry_pair(&s).unwrap().is_none());
    }

    #[test]
    fn standard_form_of_words_and_projections() {
        let g = corpus::loop_bridge_loop();
        let s = FockSpace::new(&g, 4).unwrap();
        let w = Path::parse(&g, "f.e").unwrap();
        let lw: SparseOperator<i64> = s.word_operator(Side::L, &w).unwrap();
        let sf = standard_form(&lw, &s, 1e-12).unwrap();
        assert_eq!(sf.pieces.len(), 1);
        assert_eq!(sf.pieces[0].1, s.basis_vector::<i64>(s.index_of(&w).unwrap()));
        assert_eq!((sf.reconstruction, sf.initial_residual), (0.0, 0.0));

        let px: SparseOperator<i64> = s.vertex_projection(VertexId(0));
        let sf = standard_form(&px, &s, 1e-12).unwrap();
        assert_eq!(sf.pieces, vec![(VertexId(0), s.basis_vector::<i64>(0))]);
    }

    #[test]
    fn standard_form_rejects_non_partial_isometries() {
        let s = FockSpace::new(&corpus::loops(1), 4).unwrap();
        let l: SparseOperator<i64> = s.left(EdgeId(0));
        let a = &l + &s.identity();
        assert!(matches!(standard_form(&a, &s, 1e-12), Err(Error::NotPartialIsometry { .. })));
    }

    #[test]
    fn inner_outer_of_simple_elements() {
        let g = corpus::loop_bridge_loop();
        let s = FockSpace::new(&g, 5).unwrap();
        let w = Path::parse(&g, "f.e").unwrap();
        let lw: SparseOperator<C> = s.word_operator(Side::L, &w).unwrap();
        let f = inner_outer_factor(&lw, &s, 1e-9).unwrap();
        assert_eq!(f.support, vec![g.vertex("x").unwrap()]);
        assert!(f.inner.max_abs_diff(&lw) < 1e-12);
        let px: SparseOperator<C> = s.vertex_projection(g.vertex("x").unwrap());
        assert!(f.outer.restrict_columns(s.safe_bound(2)).max_abs_diff(&px.restrict_columns(s.safe_bound(2))) < 1e-12);

        let f = inner_outer_factor(&px, &s, 1e-9).unwrap();
        assert!(f.inner.max_abs_diff(&px) < 1e-12);
        assert_eq!(f.outer_deficit, 0);
    }

    #[test]
    fn inner_outer_of_a_loop_polynomial() {
        let s = FockSpace::new(&corpus::loops(1), 8).unwrap();
        let l: SparseOperator<C> = s.left(EdgeId(0));
        let a = &l + &(&l * &l);
        let f = inner_outer_factor(&a, &s, 1e-9).unwrap();
        assert!(f.factor_residual < 1e-8);
        assert!(f.initial_residual < 1e-9);
        assert!(f.inner.max_abs_diff(&l) < 1e-9);
        assert_eq!(f.outer_deficit, 0);
        assert!(matches!(
            inner_outer_factor(&SparseOperator::<C>::zeros(s.dim()), &s, 1e-9),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn phases() {
        let a = vec![C::new(0.0, 0.0), C::new(1.0, 0.0)];
        let b = vec![C::new(0.0, 0.0), C::new(0.0, 1.0)];
        assert_eq!(unimodular_ratio(&a, &b, 1e-12), Some(C::new(0.0, 1.0)));
        assert_eq!(unimodular_ratio(&a, &a.iter().map(|z| z * 2.0).collect::<Vec<_>>(), 1e-12), None);
    }
}
