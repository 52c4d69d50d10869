//! Semisimplicity, the radical, and its nilpotency.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{FockSpace, Side};
use crate::fourier::{commutant_residual, fourier_coefficients};
use crate::graph::{off_cycle_edges, strongly_connected_components, DirectedMultigraph, EdgeId, VertexId};
use crate::path::Path;
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;

/// The algebra is semisimple exactly when every edge lies on a cycle.
pub fn is_semisimple(g: &DirectedMultigraph) -> bool {
    off_cycle_edges(g).is_empty()
}

/// Edges whose creation operators generate the radical.
pub fn radical_generators(g: &DirectedMultigraph) -> Vec<EdgeId> {
    off_cycle_edges(g)
}

/// Whether `A` lies in the radical: every Fourier coefficient above `tol`
/// sits on a path through an off-cycle edge.
pub fn radical_membership<T: Scalar>(a: &SparseOperator<T>, space: &FockSpace, tol: f64) -> Result<bool> {
    let residual = commutant_residual(a, space).max();
    if residual > tol {
        return Err(Error::NotInAlgebra { residual });
    }
    let b = off_cycle_mask(space.graph());
    Ok(fourier_coefficients(a, space)
        .iter()
        .filter(|(_, v)| v.magnitude() > tol)
        .all(|(p, _)| p.edges().iter().any(|e| b[e.0])))
}

fn off_cycle_mask(g: &DirectedMultigraph) -> Vec<bool> {
    let mut mask = vec![false; g.edge_count()];
    for e in off_cycle_edges(g) {
        mask[e.0] = true;
    }
    mask
}

/// A strongly connected component with at least one edge, and its internal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Vertices in no block (trivial components without a loop).
    pub leftover: Vec<VertexId>,
    pub block_of: Vec<Option<usize>>,
    /// Edges between different components; equal to the off-cycle edges.
    pub off_diagonal: Vec<EdgeId>,
}

/// Splits the graph into its maximally transitive components.
pub fn block_decomposition(g: &DirectedMultigraph) -> BlockDecomposition {
    let comps = strongly_connected_components(g);
    let mut blocks = Vec::new();
    let mut leftover = Vec::new();
    let mut block_of = vec![None; g.vertex_count()];
    for (c, members) in comps.components.iter().enumerate() {
        let edges = comps.internal_edges(g, c);
        if edges.is_empty() {
            leftover.extend(members.iter().copied());
        } else {
            for v in members {
                block_of[v.0] = Some(blocks.len());
            }
            blocks.push(Block {
                vertices: members.clone(),
                edges,
            });
        }
    }
    leftover.sort();
    BlockDecomposition {
        blocks,
        leftover,
        block_of,
        off_diagonal: off_cycle_edges(g),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyCertificate {
    /// The vertex count, the bound on the nilpotency degree.
    #[serde(rename = "M")]
    pub m: usize,
    /// Largest number of off-cycle letters on any path of length `≤ scanned_level`.
    pub max_offcycle: usize,
    pub scanned_level: usize,
}

impl NilpotencyCertificate {
    /// `max < M`, witnessing that products of `M` radical elements vanish.
    pub fn holds(&self) -> bool {
        self.max_offcycle < self.m
    }
}

/// Scans all paths of length `≤ level` for the most off-cycle letters, by
/// dynamic programming over path ranges.
pub fn nilpotency_certificate(g: &DirectedMultigraph, level: usize) -> NilpotencyCertificate {
    let b = off_cycle_mask(g);
    let mut best: Vec<Option<usize>> = vec![Some(0); g.vertex_count()];
    let mut max = 0;
    for _ in 0..level {
        let mut next: Vec<Option<usize>> = vec![None; g.vertex_count()];
        for e in g.edge_ids() {
            if let Some(c) = best[g.source(e).0] {
                let c = c + usize::from(b[e.0]);
                let slot = &mut next[g.range(e).0];
                *slot = Some(slot.map_or(c, |s| s.max(c)));
                max = max.max(c);
            }
        }
        best = next;
    }
    NilpotencyCertificate {
        m: g.vertex_count(),
        max_offcycle: max,
        scanned_level: level,
    }
}

/// Exhaustively multiplies letter operators: every product of at most
/// `max_len` letters containing at least `power` off-cycle letters must
/// vanish. Returns the number of products checked, or the first nonzero one.
pub fn offcycle_products_vanish(
    space: &FockSpace,
    power: usize,
    max_len: usize,
) -> std::result::Result<usize, Vec<EdgeId>> {
    let g = space.graph();
    let b = off_cycle_mask(g);
    let letters: Vec<SparseOperator<i64>> = g.edge_ids().map(|e| space.left(e)).collect();
    let mut checked = 0;
    // depth-first over letter sequences, carrying the partial product
    let mut stack: Vec<(Vec<EdgeId>, SparseOperator<i64>, usize)> =
        vec![(Vec::new(), space.identity(), 0)];
    while let Some((word, prod, count)) = stack.pop() {
        if count >= power {
            checked += 1;
            if !prod.is_zero() {
                return Err(word);
            }
        }
        if word.len() == max_len {
            continue;
        }
        for e in g.edge_ids() {
            let mut w = word.clone();
            w.push(e);
            let p = &letters[e.0] * &prod;
            stack.push((w, p, count + usize::from(b[e.0])));
        }
    }
    Ok(checked)
}

/// For `L_v` with no off-cycle letter, finds a return path `u` from `r(v)` to
/// `s(v)` and the largest `k` with `k·|uv| ≤ N`, checking
/// `‖(L_u L_v)^j‖ ≥ 1` for `j ≤ k` by the norm of the image of `ξ_{s(v)}`.
/// `None` if `v` contains an off-cycle edge.
pub fn non_quasinilpotent_witness(space: &FockSpace, v: &Path) -> Option<(Path, usize)> {
    let g = space.graph();
    let b = off_cycle_mask(g);
    if v.edges().iter().any(|e| b[e.0]) {
        return None;
    }
    let back = g.shortest_path(v.range(), v.source())?;
    let u = if back.is_empty() {
        Path::vertex(v.range())
    } else {
        Path::word(g, back).ok()?
    };
    let uv = u.try_concat(v)?;
    let k = if uv.is_empty() { space.level().max(1) } else { space.level() / uv.len() };
    let op: SparseOperator<i64> = space.word_operator(Side::L, &uv).ok()?;
    let mut x = space.basis_vector::<i64>(v.source().0);
    for _ in 0..k {
        x = op.apply(&x);
        let norm_sq: i64 = x.iter().map(|c| c * c).sum();
        if norm_sq < 1 {
            return None;
        }
    }
    Some((u, k))
}
