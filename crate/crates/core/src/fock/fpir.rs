use crate::error::{Error, Result};
use crate::graph::DirectedMultigraph;
use crate::path::PathTable;
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;

use super::FockSpace;

/// A candidate free partial isometry representation: one projection per
/// vertex and one operator per edge, all of the same dimension.
#[derive(Debug, Clone)]
pub struct FpirFamily<T> {
    pub graph: DirectedMultigraph,
    pub projections: Vec<SparseOperator<T>>,
    pub partials: Vec<SparseOperator<T>>,
    /// When set, the initial-projection identity is compared only on
    /// columns below this bound (a truncation's safe levels).
    pub safe_bound: Option<usize>,
}

impl<T: Scalar> FpirFamily<T> {
    /// `{P_x, L_e}` on a truncated Fock space, with the safe cut for degree 1.
    pub fn standard(space: &FockSpace) -> Self {
        let g = space.graph();
        FpirFamily {
            graph: g.clone(),
            projections: g.vertex_ids().map(|x| space.vertex_projection(x)).collect(),
            partials: g.edge_ids().map(|e| space.left(e)).collect(),
            safe_bound: Some(space.safe_bound(1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomicReport {
    /// Vertices whose defect projection `E_x` vanishes.
    pub zero_defects: Vec<String>,
    /// Largest entry of `Σ_w π(w) E_{s(w)} π(w)* − I` over the enumerated words.
    pub residual: f64,
    pub word_level: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FpirReport {
    pub initial_projections: Condition,
    pub vertex_projections: Condition,
    pub range_projections: Condition,
    pub atomic: Option<AtomicReport>,
}

impl FpirReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.initial_projections.passed
            && self.vertex_projections.passed
            && self.range_projections.passed
            && self
                .atomic
                .as_ref()
                .is_none_or(|a| a.zero_defects.is_empty() && a.residual <= tol)
    }
}

fn condition(name: &str, residual: f64, tol: f64) -> Condition {
    Condition {
        name: name.to_string(),
        passed: residual <= tol,
        residual,
    }
}

/// Checks the three defining conditions, and optionally the purely atomic
/// criterion with words of length up to `word_level`.
///
/// (i) `S_e*S_e = P_{s(e)} ≠ 0`; (ii) the `P_x` are pairwise orthogonal
/// projections summing to `I`; (iii) the `S_eS_e*` are pairwise orthogonal
/// and `E_x = P_x − Σ_{r(e)=x} S_eS_e* ≥ 0`. Positivity is certified by `E_x`
/// being a self-adjoint idempotent, which is the case for partial isometries
/// with orthogonal ranges inside `P_x`.
pub fn check_fpir<T: Scalar>(
    fam: &FpirFamily<T>,
    purely_atomic: Option<usize>,
    tol: f64,
) -> Result<FpirReport> {
    let g = &fam.graph;
    if fam.projections.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            found: fam.projections.len(),
        });
    }
    if fam.partials.len() != g.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: g.edge_count(),
            found: fam.partials.len(),
        });
    }
    let dim = fam.projections[0].dim();
    for op in fam.projections.iter().chain(&fam.partials) {
        if op.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: op.dim(),
            });
        }
    }
    let bound = fam.safe_bound.unwrap_or(dim);
    let zero = SparseOperator::<T>::zeros(dim);

    let mut r1: f64 = 0.0;
    for e in g.edge_ids() {
        let s = &fam.partials[e.0];
        let p = &fam.projections[g.source(e).0];
        let d = (&(&s.adjoint() * s) - p).restrict_columns(bound);
        r1 = r1.max(d.max_abs());
        if p.is_zero() {
            r1 = r1.max(1.0);
        }
    }

    let mut r2: f64 = 0.0;
    for (i, p) in fam.projections.iter().enumerate() {
        r2 = r2.max((&(p * p) - p).max_abs());
        r2 = r2.max((&p.adjoint() - p).max_abs());
        for q in &fam.projections[i + 1..] {
            r2 = r2.max((p * q).max_abs());
        }
    }
    let total = fam.projections.iter().fold(zero.clone(), |a, b| &a + b);
    r2 = r2.max(total.max_abs_diff(&SparseOperator::identity(dim)));

    let ranges: Vec<SparseOperator<T>> = fam.partials.iter().map(|s| s * &s.adjoint()).collect();
    let mut r3: f64 = 0.0;
    for (i, a) in ranges.iter().enumerate() {
        for b in &ranges[i + 1..] {
            r3 = r3.max((a * b).max_abs());
        }
    }
    let mut defects = Vec::with_capacity(g.vertex_count());
    for x in g.vertex_ids() {
        let mut ex = fam.projections[x.0].clone();
        for &e in g.in_edges(x) {
            ex = &ex - &ranges[e.0];
        }
        r3 = r3.max((&(&ex * &ex) - &ex).max_abs());
        r3 = r3.max((&ex.adjoint() - &ex).max_abs());
        defects.push(ex);
    }

    let atomic = purely_atomic.map(|level| {
        let zero_defects = g
            .vertex_ids()
            .filter(|x| defects[x.0].max_abs() <= tol)
            .map(|x| g.vertex_label(x).to_string())
            .collect();
        let residual = match PathTable::new(g, level) {
            Ok(words) => {
                // π(w) for every word, built from its parent word
                let mut pis: Vec<SparseOperator<T>> = Vec::with_capacity(words.len());
                let mut sum = zero.clone();
                for (i, w) in words.paths().iter().enumerate() {
                    let pi = if w.is_vertex() {
                        fam.projections[w.source().0].clone()
                    } else {
                        let last = *w.edges().last().unwrap();
                        let parent = if w.len() == 1 {
                            w.source().0
                        } else {
                            let mut pe = w.edges().to_vec();
                            pe.pop();
                            words
                                .index_of(&crate::Path::word(g, pe).expect("prefix of a path"))
                                .expect("prefix enumerated")
                        };
                        &fam.partials[last.0] * &pis[parent]
                    };
                    sum = &sum + &(&(&pi * &defects[w.source().0]) * &pi.adjoint());
                    debug_assert_eq!(pis.len(), i);
                    pis.push(pi);
                }
                sum.max_abs_diff(&SparseOperator::identity(dim))
            }
            Err(_) => f64::INFINITY,
        };
        AtomicReport {
            zero_defects,
            residual,
            word_level: level,
        }
    });

    Ok(FpirReport {
        initial_projections: condition("(i) S_e*S_e = P_s(e) != 0", r1, tol),
        vertex_projections: condition("(ii) P_x orthogonal projections, sum = I", r2, tol),
        range_projections: condition("(iii) S_eS_e* orthogonal, E_x >= 0", r3, tol),
        atomic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn standard_family_passes_exactly() {
        for (name, g) in corpus::all() {
            let s = FockSpace::new(&g, 4).unwrap();
            let fam = FpirFamily::<i64>::standard(&s);
            let rep = check_fpir(&fam, Some(4), 0.0).unwrap();
            assert!(rep.passed(0.0), "{name}: {rep:?}");
        }
    }

    #[test]
    fn shared_range_breaks_condition_three() {
        let g = corpus::loops(2);
        let s = FockSpace::new(&g, 3).unwrap();
        let mut fam = FpirFamily::<i64>::standard(&s);
        fam.partials[1] = fam.partials[0].clone();
        let rep = check_fpir(&fam, None, 0.0).unwrap();
        assert!(rep.initial_projections.passed);
        assert!(!rep.range_projections.passed);
    }

    #[test]
    fn incomplete_projections_break_condition_two() {
        let g = corpus::loop_tail();
        let s = FockSpace::new(&g, 3).unwrap();
        let mut fam = FpirFamily::<i64>::standard(&s);
        fam.projections[1] = SparseOperator::zeros(s.dim());
        let rep = check_fpir(&fam, None, 0.0).unwrap();
        assert!(!rep.vertex_projections.passed);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let s = FockSpace::new(&corpus::loops(1), 2).unwrap();
        let mut fam = FpirFamily::<i64>::standard(&s);
        fam.partials[0] = SparseOperator::zeros(7);
        assert!(matches!(
            check_fpir(&fam, None, 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
