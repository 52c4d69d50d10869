use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;

use super::FockSpace;

/// One identity of the generator relation suite, compared on the columns
/// `< safe_bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub name: String,
    pub safe_bound: usize,
    /// Largest entry of the difference of both sides (exact arithmetic).
    pub residual: i64,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.residual == 0
    }
}

type Op = SparseOperator<i64>;

fn compare(space: &FockSpace, name: String, lhs: &Op, rhs: &Op) -> RelationCheck {
    let degree = lhs.degree().max(rhs.degree());
    let bound = space.safe_bound(degree);
    let diff = (lhs - rhs).restrict_columns(bound);
    RelationCheck {
        name,
        safe_bound: bound,
        residual: diff.entries().iter().map(|e| e.2.abs()).max().unwrap_or(0),
    }
}

/// Runs the defining relations of the left and right creation operators in
/// integer arithmetic, each on its safe levels.
pub fn relation_suite(space: &FockSpace) -> Vec<RelationCheck> {
    let g = space.graph();
    let mut out = Vec::new();
    let lefts: Vec<Op> = g.edge_ids().map(|e| space.left(e)).collect();
    let rights: Vec<Op> = g.edge_ids().map(|e| space.right(e)).collect();
    let ps: Vec<Op> = g.vertex_ids().map(|x| space.vertex_projection(x)).collect();
    let qs: Vec<Op> = g.vertex_ids().map(|x| space.source_projection(x)).collect();
    let id: Op = space.identity();
    let edge = |e: crate::EdgeId| &g.edge(e).label;

    for e in g.edge_ids() {
        let (l, r) = (&lefts[e.0], &rights[e.0]);
        out.push(compare(
            space,
            format!("adj(L[{}]).L[{}] = P[{}]", edge(e), edge(e), g.vertex_label(g.source(e))),
            &(&l.adjoint() * l),
            &ps[g.source(e).0],
        ));
        out.push(compare(
            space,
            format!("adj(R[{}]).R[{}] = Q[{}]", edge(e), edge(e), g.vertex_label(g.range(e))),
            &(&r.adjoint() * r),
            &qs[g.range(e).0],
        ));
        out.push(compare(
            space,
            format!("L[{}] = P[r].L[{}].P[s]", edge(e), edge(e)),
            &(&(&ps[g.range(e).0] * l) * &ps[g.source(e).0]),
            l,
        ));
    }

    let sum = |ops: &[Op]| ops.iter().fold(Op::zeros(space.dim()), |a, b| &a + b);
    out.push(compare(space, "sum P[x] = I".into(), &sum(&ps), &id));
    out.push(compare(space, "sum Q[x] = I".into(), &sum(&qs), &id));

    let ranges: Vec<Op> = lefts.iter().map(|l| l * &l.adjoint()).collect();
    for e in g.edge_ids() {
        for f in g.edge_ids().filter(|f| *f != e) {
            out.push(compare(
                space,
                format!("L[{}]L[{}]* . L[{}]L[{}]* = 0", edge(e), edge(e), edge(f), edge(f)),
                &(&ranges[e.0] * &ranges[f.0]),
                &Op::zeros(space.dim()),
            ));
        }
    }

    let all_ranges = sum(&ranges);
    let e0: Op = space.level_projection(0).expect("level 0 exists");
    out.push(compare(space, "E[0] = I - sum L[e]L[e]*".into(), &e0, &(&id - &all_ranges)));

    for x in g.vertex_ids() {
        let xi = space.table().vertex_index(x);
        let rank_one = Op::diagonal([(xi, 1)], space.dim());
        let q = &qs[x.0];
        out.push(compare(
            space,
            format!("xi_{0} (x) xi_{0}* = Q[{0}] - sum L[e]L[e]*Q[{0}]", g.vertex_label(x)),
            &rank_one,
            &(q - &(&all_ranges * q)),
        ));
    }
    out
}

/// The basis bijection `W: ξ_{v^t} ↦ ξ_v` from the Fock space of the transpose
/// graph onto that of `g`. Transposition keeps edge indices, so `v^t` is `v`
/// with its letters reversed.
pub fn transpose_map<T: Scalar>(space: &FockSpace, transposed: &FockSpace) -> Result<SparseOperator<T>> {
    if space.dim() != transposed.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: transposed.dim(),
        });
    }
    let tg = transposed.graph();
    let mut triplets = Vec::with_capacity(space.dim());
    for (i, v) in space.table().paths().iter().enumerate() {
        let vt = if v.is_vertex() {
            crate::Path::vertex(v.source())
        } else {
            let mut edges = v.edges().to_vec();
            edges.reverse();
            crate::Path::word(tg, edges)?
        };
        let j = transposed
            .index_of(&vt)
            .ok_or_else(|| Error::UnknownPath(format!("{vt:?}")))?;
        triplets.push((i, j, T::one()));
    }
    Ok(SparseOperator::from_triplets(space.dim(), 0, triplets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn suite_passes_on_the_corpus() {
        for (name, g) in corpus::all() {
            let s = FockSpace::new(&g, 5).unwrap();
            for c in relation_suite(&s) {
                assert!(c.passed(), "{name}: {} residual {}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn isometry_relation_fails_without_the_safe_cut() {
        let s = FockSpace::new(&corpus::loops(1), 3).unwrap();
        let l: Op = s.left(crate::EdgeId(0));
        let full = &(&l.adjoint() * &l) - &s.identity();
        assert!(!full.is_zero());
    }

    #[test]
    fn transpose_map_intertwines() {
        for (name, g) in corpus::all() {
            let t = g.transpose();
            let (s, st) = (FockSpace::new(&g, 4).unwrap(), FockSpace::new(&t, 4).unwrap());
            let w: Op = transpose_map(&s, &st).unwrap();
            for e in g.edge_ids() {
                let lhs = &(&w.adjoint() * &s.left::<i64>(e)) * &w;
                assert_eq!(lhs.entries(), st.right::<i64>(e).entries(), "{name}");
            }
        }
    }
}
