//! Eigenvectors of the adjoint algebra, point functionals, wandering
//! subspaces and the Beurling decomposition of invariant subspaces.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fock::{FockSpace, Side};
use crate::graph::{DirectedMultigraph, EdgeId, VertexId};
use crate::linalg::{distance_to_span, inner, norm, orthonormalize};
use crate::scalar::Real;
use crate::sparse::SparseOperator;

/// A point of the open unit ball supported on the loops at one vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPoint<F> {
    pub vertex: VertexId,
    /// `λ_e` for loop edges `e` at `vertex`; other coordinates are zero.
    pub lambda: Vec<(EdgeId, Complex<F>)>,
}

impl<F: Real> EigenPoint<F> {
    /// Validates the support and `‖λ‖₂ < 1`. Nonzero coordinates off the
    /// loops at `vertex` are rejected, so a loopless vertex only admits `λ = 0`.
    pub fn new(g: &DirectedMultigraph, vertex: VertexId, lambda: Vec<(EdgeId, Complex<F>)>) -> Result<Self> {
        if vertex.0 >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{}", vertex.0)));
        }
        let mut kept = Vec::new();
        for (e, l) in lambda {
            if e.0 >= g.edge_count() {
                return Err(Error::UnknownEdge(format!("#{}", e.0)));
            }
            if l.is_zero() {
                continue;
            }
            let edge = g.edge(e);
            if edge.src != vertex || edge.dst != vertex {
                return Err(Error::EigenPointRejected(format!(
                    "{} is not a loop at {}; only loops at the vertex may carry a nonzero coordinate",
                    edge.label,
                    g.vertex_label(vertex)
                )));
            }
            if kept.iter().any(|(f, _)| *f == e) {
                return Err(Error::EigenPointRejected(format!("{} given twice", edge.label)));
            }
            kept.push((e, l));
        }
        let p = EigenPoint { vertex, lambda: kept };
        if p.norm() >= F::one() {
            return Err(Error::EigenPointRejected(format!(
                "norm {} is not below 1",
                p.norm().to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(p)
    }

    pub fn norm(&self) -> F {
        self.lambda
            .iter()
            .fold(F::zero(), |s, (_, l)| s + l.norm_sqr())
            .sqrt()
    }

    pub fn value(&self, e: EdgeId) -> Complex<F> {
        self.lambda
            .iter()
            .find(|(f, _)| *f == e)
            .map_or_else(Complex::zero, |(_, l)| *l)
    }
}

/// A truncated eigenvector with its distance to the untruncated one.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenvector<F> {
    pub vector: Vec<Complex<F>>,
    /// `‖ν_∞ − ν_N‖ = ‖λ‖^{N+1}`; it also bounds `‖L_e*ν − λ̄_e ν‖`.
    pub tail: F,
}

/// `ν = (1 − ‖λ‖²)^{1/2} Σ_{w ∈ W_x, |w| ≤ N} conj(w(λ)) ξ_w`, where `W_x` are
/// the words in loops at `x`.
///
/// Because `w(λ)` is a product of commuting scalars, the same vector is the
/// eigenvector of the adjoint right algebra (`R_e* ν = λ̄_e ν`), so both
/// sides return it.
pub fn eigenvector<F: Real>(space: &FockSpace, p: &EigenPoint<F>, _side: Side) -> Eigenvector<F> {
    let r = p.norm();
    let c = (F::one() - r * r).sqrt();
    let mut v = vec![Complex::zero(); space.dim()];
    let x = p.vertex;
    v[x.0] = Complex::new(c, F::zero());
    if !p.lambda.is_empty() {
        let g = space.graph();
        let is_loop = |e: &EdgeId| g.source(*e) == x && g.range(*e) == x;
        for (i, w) in space.table().paths().iter().enumerate().skip(g.vertex_count()) {
            if w.source() == x && w.edges().iter().all(is_loop) {
                let wl = w.eval(|e| p.value(e));
                v[i] = wl.conj() * c;
            }
        }
    }
    Eigenvector {
        vector: v,
        tail: r.powi(space.level() as i32 + 1),
    }
}

/// `⟨Aν, ν⟩`, with the truncation tail of `ν` as a caveat on accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValue<F> {
    pub value: Complex<F>,
    pub tail: F,
}

pub fn point_functional<F: Real>(a: &SparseOperator<Complex<F>>, nu: &Eigenvector<F>) -> PointValue<F> {
    let av = a.apply(&nu.vector);
    PointValue {
        value: inner(&av, &nu.vector),
        tail: nu.tail,
    }
}

fn generators<F: Real>(space: &FockSpace, side: Side) -> Vec<SparseOperator<Complex<F>>> {
    space
        .graph()
        .edge_ids()
        .map(|e| match side {
            Side::L => space.left(e),
            Side::R => space.right(e),
        })
        .collect()
}

/// Orthonormal basis of `W = M ⊖ Σ_e g_e M` for the generators `g_e` of the
/// chosen side, grouped by corner: vectors for `P_x` (side `L`) or `Q_x`
/// (side `R`), in vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Wandering<F> {
    pub vectors: Vec<(VertexId, Vec<Complex<F>>)>,
    /// Orthonormal basis of `M`.
    pub subspace: Vec<Vec<Complex<F>>>,
    /// Largest distance of `g_e m` from `M` over basis vectors `m`.
    pub invariance_residual: F,
}

impl<F: Real> Wandering<F> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Computes the wandering subspace of the span of `spanning`, which must be
/// invariant under the chosen side's creation operators up to `tol`.
pub fn wandering_basis<F: Real>(
    space: &FockSpace,
    spanning: &[Vec<Complex<F>>],
    side: Side,
    tol: F,
) -> Result<Wandering<F>> {
    for v in spanning {
        if v.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: v.len(),
            });
        }
    }
    let m = orthonormalize(spanning, &[], tol);
    let gens = generators::<F>(space, side);
    let mut moved = Vec::with_capacity(gens.len() * m.len());
    let mut invariance = F::zero();
    for g in &gens {
        for v in &m {
            let gv = g.apply(v);
            invariance = invariance.max(distance_to_span(&gv, &m));
            moved.push(gv);
        }
    }
    if invariance > tol {
        return Err(Error::NotInvariant {
            residual: invariance.to_f64().unwrap_or(f64::NAN),
        });
    }
    let shifted = orthonormalize(&moved, &[], tol);
    let w = orthonormalize(&m, &shifted, tol);

    let g = space.graph();
    let mut vectors = Vec::new();
    for x in g.vertex_ids() {
        let corner: Vec<Vec<Complex<F>>> = w
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, z)| {
                        let p = space.path(i);
                        let inside = match side {
                            Side::L => p.range() == x,
                            Side::R => p.source() == x,
                        };
                        if inside { *z } else { Complex::zero() }
                    })
                    .collect()
            })
            .collect();
        for v in orthonormalize(&corner, &[], tol) {
            vectors.push((x, v));
        }
    }
    Ok(Wandering {
        vectors,
        subspace: m,
        invariance_residual: invariance,
    })
}

/// One minimal cyclic piece of an invariant subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct BeurlingPiece<F> {
    pub vertex: VertexId,
    pub wandering: Vec<Complex<F>>,
    /// Partial isometry from the opposite side whose range is the piece.
    pub isometry: SparseOperator<Complex<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeurlingSplit<F> {
    pub pieces: Vec<BeurlingPiece<F>>,
    /// Largest `‖V_i* V_j‖` over distinct pieces, on safe levels.
    pub overlap: F,
    /// Largest distance of a vector of `M` from the span of all piece ranges.
    pub reconstruction: F,
}

/// Splits an invariant subspace into cyclic pieces generated by its
/// wandering vectors, each realized as the range of a creation operator from
/// the opposite side.
pub fn beurling_split<F: Real>(
    space: &FockSpace,
    spanning: &[Vec<Complex<F>>],
    side: Side,
    tol: F,
) -> Result<BeurlingSplit<F>> {
    let w = wandering_basis(space, spanning, side, tol)?;
    let opposite = match side {
        Side::L => Side::R,
        Side::R => Side::L,
    };
    let mut pieces = Vec::with_capacity(w.dim());
    for (x, zeta) in w.vectors {
        let isometry = space.creation_from_vector(opposite, Some(x), &zeta)?;
        pieces.push(BeurlingPiece {
            vertex: x,
            wandering: zeta,
            isometry,
        });
    }
    let mut overlap = F::zero();
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            let bound = space.safe_bound(a.isometry.degree() + b.isometry.degree());
            let ab = (&a.isometry.adjoint() * &b.isometry).restrict_columns(bound);
            overlap = overlap.max(F::lit(ab.max_abs()));
        }
    }
    let mut range_vectors = Vec::new();
    for p in &pieces {
        for col in p.isometry.columns() {
            if col.is_empty() {
                continue;
            }
            let mut v = vec![Complex::zero(); space.dim()];
            for (r, z) in col {
                v[r] = z;
            }
            range_vectors.push(v);
        }
    }
    let span = orthonormalize(&range_vectors, &[], tol);
    let reconstruction = w
        .subspace
        .iter()
        .map(|m| distance_to_span(m, &span))
        .fold(F::zero(), F::max);
    Ok(BeurlingSplit {
        pieces,
        overlap,
        reconstruction,
    })
}

/// Columns of an operator as dense vectors, skipping zero columns.
pub fn column_vectors<F: Real>(op: &SparseOperator<Complex<F>>) -> Vec<Vec<Complex<F>>> {
    op.columns()
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| {
            let mut v = vec![Complex::zero(); op.dim()];
            for (r, z) in c {
                v[r] = z;
            }
            v
        })
        .collect()
}

/// Norm helper re-exported for report code.
pub fn vector_norm<F: Real>(v: &[Complex<F>]) -> F {
    norm(v)
}
