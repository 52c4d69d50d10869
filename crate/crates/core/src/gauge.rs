//! Gauge unitaries: level-preserving unitaries acting by a block unitary on
//! every edge slot of a path, and the automorphisms they induce.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::fourier::{commutant_residual, fourier_coefficients, CoefficientTable};
use crate::graph::{DirectedMultigraph, EdgeId, VertexId};
use crate::path::Path;
use crate::scalar::Real;
use crate::sparse::SparseOperator;

/// Dense square complex matrix, row-major.
pub type Block<F> = Vec<Vec<Complex<F>>>;

/// One unitary per `(source, range)` pair carrying edges, acting on those
/// edges in edge order: `U ξ_e = Σ_f U[f][e] ξ_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeData<F> {
    pub blocks: BTreeMap<(VertexId, VertexId), Block<F>>,
}

/// Edges from `src` to `dst`, in edge order.
pub fn edge_class(g: &DirectedMultigraph, src: VertexId, dst: VertexId) -> Vec<EdgeId> {
    g.out_edges(src).iter().copied().filter(|&e| g.range(e) == dst).collect()
}

fn key_label(g: &DirectedMultigraph, (s, r): (VertexId, VertexId)) -> String {
    format!("{}->{}", g.vertex_label(s), g.vertex_label(r))
}

fn classes(g: &DirectedMultigraph) -> BTreeMap<(VertexId, VertexId), Vec<EdgeId>> {
    let mut out: BTreeMap<_, Vec<EdgeId>> = BTreeMap::new();
    for e in g.edge_ids() {
        out.entry((g.source(e), g.range(e))).or_default().push(e);
    }
    out
}

fn identity_block<F: Real>(n: usize) -> Block<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Complex::one() } else { Complex::zero() }).collect())
        .collect()
}

fn matmul<F: Real>(a: &Block<F>, b: &Block<F>) -> Block<F> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Complex::zero(), |s, k| s + a[i][k] * b[k][j]))
                .collect()
        })
        .collect()
}

impl<F: Real> GaugeData<F> {
    pub fn identity(g: &DirectedMultigraph) -> Self {
        GaugeData {
            blocks: classes(g)
                .into_iter()
                .map(|(k, es)| (k, identity_block(es.len())))
                .collect(),
        }
    }

    /// Blockwise product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        GaugeData {
            blocks: self
                .blocks
                .iter()
                .filter_map(|(k, a)| other.blocks.get(k).map(|b| (*k, matmul(a, b))))
                .collect(),
        }
    }

    /// Checks coverage, block sizes and `U*U = I` to `tol`.
    pub fn validate(&self, g: &DirectedMultigraph, tol: F) -> Result<()> {
        let cls = classes(g);
        for (k, es) in &cls {
            let Some(b) = self.blocks.get(k) else {
                return Err(Error::CoverageGap(key_label(g, *k)));
            };
            if b.len() != es.len() || b.iter().any(|row| row.len() != es.len()) {
                return Err(Error::BlockSize {
                    key: key_label(g, *k),
                    expected: es.len(),
                    found: b.len(),
                });
            }
            let n = b.len();
            let mut worst = F::zero();
            for i in 0..n {
                for j in 0..n {
                    let s: Complex<F> = (0..n).fold(Complex::zero(), |s, r| s + b[r][i].conj() * b[r][j]);
                    let want = if i == j { F::one() } else { F::zero() };
                    worst = worst.max((s - Complex::new(want, F::zero())).norm());
                }
            }
            if worst > tol {
                return Err(Error::NonUnitaryBlock {
                    key: key_label(g, *k),
                    residual: worst.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if let Some(k) = self.blocks.keys().find(|k| !cls.contains_key(k)) {
            return Err(Error::BlockSize {
                key: key_label(g, *k),
                expected: 0,
                found: self.blocks[k].len(),
            });
        }
        Ok(())
    }

    /// The block column for `e`: pairs `(f, U[f][e])`.
    fn image(&self, g: &DirectedMultigraph, e: EdgeId) -> Vec<(EdgeId, Complex<F>)> {
        let key = (g.source(e), g.range(e));
        let cls = edge_class(g, key.0, key.1);
        let col = cls.iter().position(|&f| f == e).expect("edge lies in its class");
        cls.iter()
            .enumerate()
            .map(|(row, &f)| (f, self.blocks[&key][row][col]))
            .filter(|(_, z)| !z.is_zero())
            .collect()
    }
}

/// `Ũ ξ_w = (Uξ_{e_k}) ⊗ … ⊗ (Uξ_{e_1})`, built level by level from the
/// column of each path's parent.
pub fn gauge_unitary<F: Real>(space: &FockSpace, gd: &GaugeData<F>, tol: F) -> Result<SparseOperator<Complex<F>>> {
    let g = space.graph();
    gd.validate(g, tol)?;
    let table = space.table();
    let images: Vec<Vec<(EdgeId, Complex<F>)>> = g.edge_ids().map(|e| gd.image(g, e)).collect();
    let mut columns: Vec<Vec<(usize, Complex<F>)>> = Vec::with_capacity(space.dim());
    for i in 0..space.dim() {
        let col = match (table.parent_index(i), space.path(i).edges().last()) {
            (Some(parent), Some(&last)) => {
                let mut col = Vec::new();
                for &(r, z) in &columns[parent] {
                    for &(f, u) in &images[last.0] {
                        let j = table.extend_index(r, f).expect("same itinerary stays admissible");
                        col.push((j, z * u));
                    }
                }
                col
            }
            _ => vec![(i, Complex::one())],
        };
        columns.push(col);
    }
    let triplets = columns
        .into_iter()
        .enumerate()
        .flat_map(|(c, col)| col.into_iter().map(move |(r, z)| (r, c, z)));
    Ok(SparseOperator::from_triplets(space.dim(), 0, triplets))
}

/// `Θ(L_e) = Ũ* L_e Ũ` as a Fourier series, which must be
/// `Σ_f conj(U[e][f]) L_f` over the edges `f` parallel to `e`.
pub fn gauge_conjugate_check<F: Real>(
    space: &FockSpace,
    gd: &GaugeData<F>,
    u: &SparseOperator<Complex<F>>,
    e: EdgeId,
    tol: F,
) -> Result<CoefficientTable<Complex<F>>> {
    let g = space.graph();
    let ftol = tol.to_f64().unwrap_or(0.0);
    let theta = &(&u.adjoint() * &space.left(e)) * u;
    let residual = commutant_residual(&theta, space).max();
    if residual > ftol {
        return Err(Error::NotInAlgebra { residual });
    }
    let coeffs = fourier_coefficients(&theta, space).pruned(ftol);
    let mut expected: CoefficientTable<Complex<F>> = CoefficientTable::new();
    let key = (g.source(e), g.range(e));
    let cls = edge_class(g, key.0, key.1);
    let row = cls.iter().position(|&f| f == e).expect("edge lies in its class");
    for (col, &f) in cls.iter().enumerate() {
        expected.add(Path::edge(g, f), gd.blocks[&key][row][col].conj());
    }
    for (p, _) in coeffs.iter() {
        if p.len() != 1 || p.source() != key.0 || p.range() != key.1 {
            return Err(Error::SupportLeak(format!(
                "coefficient at {} for {}",
                p.display(g),
                g.edge(e).label
            )));
        }
    }
    let diff = coeffs.max_abs_diff(&expected);
    if diff > ftol {
        return Err(Error::SupportLeak(format!(
            "coefficients of {} differ from the block row by {diff:e}",
            g.edge(e).label
        )));
    }
    Ok(coeffs)
}

/// `max |Ũ*Ũ − I|`, the largest entry joining different levels, and the
/// largest change of a vacuum vector.
pub fn gauge_properties<F: Real>(space: &FockSpace, u: &SparseOperator<Complex<F>>) -> (f64, f64, f64) {
    let unitary = (&u.adjoint() * u).max_abs_diff(&space.identity());
    let level = u
        .entries()
        .iter()
        .filter(|(r, c, _)| space.path(*r).len() != space.path(*c).len())
        .map(|(_, _, z)| z.norm().to_f64().unwrap_or(f64::NAN))
        .fold(0.0, f64::max);
    let vacuum = space
        .graph()
        .vertex_ids()
        .map(|x| {
            let col = u.column(x.0);
            col.iter()
                .map(|(r, z)| {
                    let want = if *r == x.0 { Complex::one() } else { Complex::zero() };
                    (*z - want).norm().to_f64().unwrap_or(f64::NAN)
                })
                .fold(if col.iter().any(|(r, _)| *r == x.0) { 0.0 } else { 1.0 }, f64::max)
        })
        .fold(0.0, f64::max);
    (unitary, level, vacuum)
}
