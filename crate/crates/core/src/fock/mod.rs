//! The truncated Fock space `H^N` and its creation operators.

mod fpir;
mod relations;

use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, EdgeId, VertexId};
use crate::path::{Path, PathTable, DEFAULT_SIZE_CAP};
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;

pub use fpir::{check_fpir, AtomicReport, Condition, FpirFamily, FpirReport};
pub use relations::{relation_suite, transpose_map, RelationCheck};

/// Which side a translation acts on: `L` prepends letters on the left
/// (`ξ_w ↦ ξ_{ew}`), `R` on the right (`ξ_w ↦ ξ_{we}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    L,
    R,
    P,
    Q,
    E,
}

/// Span of `ξ_w` for all paths `|w| ≤ N`, in canonical path order.
#[derive(Debug, Clone)]
pub struct FockSpace {
    table: PathTable,
}

impl FockSpace {
    pub fn new(g: &DirectedMultigraph, level: usize) -> Result<Self> {
        Self::with_cap(g, level, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(g: &DirectedMultigraph, level: usize, cap: usize) -> Result<Self> {
        Ok(FockSpace {
            table: PathTable::with_cap(g, level, cap)?,
        })
    }

    pub fn graph(&self) -> &DirectedMultigraph {
        self.table.graph()
    }

    pub fn table(&self) -> &PathTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn level(&self) -> usize {
        self.table.level()
    }

    pub fn path(&self, i: usize) -> &Path {
        self.table.path(i)
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.table.index_of(p)
    }

    /// Number of leading basis vectors with level `≤ N − degree`; an identity
    /// between degree-`d` expressions is exact on these columns.
    pub fn safe_bound(&self, degree: usize) -> usize {
        match self.level().checked_sub(degree) {
            Some(top) => self.table.level_range(top).end,
            None => 0,
        }
    }

    pub fn basis_vector<T: Scalar>(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[i] = T::one();
        v
    }

    pub fn identity<T: Scalar>(&self) -> SparseOperator<T> {
        SparseOperator::identity(self.dim())
    }

    /// `L_e`: `ξ_w ↦ ξ_{ew}` when `r(w) = s(e)` and `|w| < N`.
    pub fn left<T: Scalar>(&self, e: EdgeId) -> SparseOperator<T> {
        SparseOperator::from_triplets(
            self.dim(),
            1,
            (0..self.dim())
                .filter_map(|i| self.table.extend_index(i, e).map(|j| (j, i, T::one()))),
        )
    }

    /// `R_e`: `ξ_w ↦ ξ_{we}` when `s(w) = r(e)` and `|w| < N`.
    pub fn right<T: Scalar>(&self, e: EdgeId) -> SparseOperator<T> {
        SparseOperator::from_triplets(
            self.dim(),
            1,
            (0..self.dim())
                .filter_map(|i| self.table.prepend_index(i, e).map(|j| (j, i, T::one()))),
        )
    }

    /// `P_x = L_x`: projection onto paths with range `x`.
    pub fn vertex_projection<T: Scalar>(&self, x: VertexId) -> SparseOperator<T> {
        self.diagonal_where(|p| p.range() == x)
    }

    /// `Q_x = R_x`: projection onto paths with source `x`.
    pub fn source_projection<T: Scalar>(&self, x: VertexId) -> SparseOperator<T> {
        self.diagonal_where(|p| p.source() == x)
    }

    /// `E_k`: projection onto paths of length `k`.
    pub fn level_projection<T: Scalar>(&self, k: usize) -> Result<SparseOperator<T>> {
        if k > self.level() {
            return Err(Error::LevelOutOfRange {
                level: k,
                max: self.level(),
            });
        }
        Ok(self.diagonal_where(|p| p.len() == k))
    }

    fn diagonal_where<T: Scalar>(&self, keep: impl Fn(&Path) -> bool) -> SparseOperator<T> {
        SparseOperator::diagonal(
            self.table
                .paths()
                .iter()
                .enumerate()
                .filter(|(_, p)| keep(p))
                .map(|(i, _)| (i, T::one())),
            self.dim(),
        )
    }

    /// Generator by kind and label (edge, vertex, or level number for `E`).
    pub fn generator<T: Scalar>(&self, kind: GeneratorKind, label: &str) -> Result<SparseOperator<T>> {
        let g = self.graph();
        Ok(match kind {
            GeneratorKind::L => self.left(g.edge_id(label)?),
            GeneratorKind::R => self.right(g.edge_id(label)?),
            GeneratorKind::P => self.vertex_projection(g.vertex(label)?),
            GeneratorKind::Q => self.source_projection(g.vertex(label)?),
            GeneratorKind::E => {
                let k = label
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidLabel(label.to_string()))?;
                self.level_projection(k)?
            }
        })
    }

    /// `L_w` (left) or `R_w` (right); vertices give `P_x` / `Q_x`.
    ///
    /// `L_w ξ_v = ξ_{wv}` and `R_w ξ_v = ξ_{vw}`, truncated above level `N`.
    pub fn word_operator<T: Scalar>(&self, side: Side, w: &Path) -> Result<SparseOperator<T>> {
        self.check_path(w)?;
        if w.is_vertex() {
            return Ok(match side {
                Side::L => self.vertex_projection(w.range()),
                Side::R => self.source_projection(w.source()),
            });
        }
        let triplets = (0..self.dim()).filter_map(|i| {
            self.translate(side, i, w).map(|j| (j, i, T::one()))
        });
        Ok(SparseOperator::from_triplets(self.dim(), w.len(), triplets))
    }

    /// Index of the translate of basis path `i` by `w`, if admissible and in range.
    pub(crate) fn translate(&self, side: Side, i: usize, w: &Path) -> Option<usize> {
        let v = self.table.path(i);
        let admissible = match side {
            Side::L => v.range() == w.source(),
            Side::R => w.range() == v.source(),
        };
        if !admissible || v.len() + w.len() > self.level() {
            return None;
        }
        match side {
            Side::L => w
                .edges()
                .iter()
                .try_fold(i, |j, &e| self.table.extend_index(j, e)),
            Side::R => w
                .edges()
                .iter()
                .rev()
                .try_fold(i, |j, &e| self.table.prepend_index(j, e)),
        }
    }

    fn check_path(&self, w: &Path) -> Result<()> {
        let g = self.graph();
        let valid = w.source().0 < g.vertex_count()
            && w.range().0 < g.vertex_count()
            && w.edges().iter().all(|e| e.0 < g.edge_count())
            && (w.is_vertex() || Path::word(g, w.edges().to_vec()).as_ref() == Ok(w));
        if valid {
            Ok(())
        } else {
            Err(Error::InadmissiblePath(format!("{w:?}")))
        }
    }

    /// Creation operator generated by a vector.
    ///
    /// Side `L` gives `L_η = Σ η_u L_u`, so `L_η ξ_w = R_w η`; side `R` gives
    /// `R_ζ = Σ ζ_u R_u`, so `R_ζ ξ_w = L_w ζ`. Terms landing above level `N`
    /// are dropped. With an anchor `x`, the support must lie in `Q_x` (side `L`)
    /// or `P_x` (side `R`). The degree is the longest path in the support.
    pub fn creation_from_vector<T: Scalar>(
        &self,
        side: Side,
        anchor: Option<VertexId>,
        eta: &[T],
    ) -> Result<SparseOperator<T>> {
        if eta.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: eta.len(),
            });
        }
        let support: Vec<usize> = (0..eta.len()).filter(|&u| !eta[u].is_zero()).collect();
        if let Some(x) = anchor {
            for &u in &support {
                let p = self.table.path(u);
                let ok = match side {
                    Side::L => p.source() == x,
                    Side::R => p.range() == x,
                };
                if !ok {
                    return Err(Error::SupportViolation(format!(
                        "{} is outside the corner of {}",
                        p.display(self.graph()),
                        self.graph().vertex_label(x)
                    )));
                }
            }
        }
        let degree = support
            .iter()
            .map(|&u| self.table.path(u).len())
            .max()
            .unwrap_or(0);
        let mut triplets = Vec::new();
        for &u in &support {
            let pu = self.table.path(u).clone();
            // translating ξ_w by u on the chosen side
            for w in 0..self.dim() {
                if let Some(j) = self.translate(side, w, &pu) {
                    triplets.push((j, w, eta[u].clone()));
                }
            }
        }
        Ok(SparseOperator::from_triplets(self.dim(), degree, triplets))
    }
}
