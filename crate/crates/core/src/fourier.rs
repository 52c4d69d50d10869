//! Fourier coefficients `A ~ Σ a_w L_w`, Cesàro means, and the commutant
//! membership test.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::{FockSpace, Side};
use crate::graph::VertexId;
use crate::path::Path;
use crate::scalar::{FieldScalar, Scalar};
use crate::sparse::SparseOperator;

/// A finitely supported map from paths to scalars; zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable<T> {
    coeffs: BTreeMap<Path, T>,
}

impl<T: Scalar> Default for CoefficientTable<T> {
    fn default() -> Self {
        CoefficientTable {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<T: Scalar> CoefficientTable<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `value` to the coefficient of `path`.
    pub fn add(&mut self, path: Path, value: T) {
        let entry = self.coeffs.entry(path.clone()).or_insert_with(T::zero);
        *entry = entry.clone() + value;
        if entry.is_zero() {
            self.coeffs.remove(&path);
        }
    }

    pub fn get(&self, path: &Path) -> T {
        self.coeffs.get(path).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &T)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Longest path in the support.
    pub fn max_len(&self) -> usize {
        self.coeffs.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|p| (self.get(p) - other.get(p)).magnitude())
            .fold(0.0, f64::max)
    }

    /// Drops coefficients of modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        CoefficientTable {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, v)| v.magnitude() > tol)
                .map(|(p, v)| (p.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<T: Scalar> FromIterator<(Path, T)> for CoefficientTable<T> {
    fn from_iter<I: IntoIterator<Item = (Path, T)>>(iter: I) -> Self {
        let mut t = CoefficientTable::new();
        for (p, v) in iter {
            t.add(p, v);
        }
        t
    }
}

/// `a_w = ⟨A ξ_{s(w)}, ξ_w⟩` for every basis path `w`.
pub fn fourier_coefficients<T: Scalar>(a: &SparseOperator<T>, space: &FockSpace) -> CoefficientTable<T> {
    let nv = space.graph().vertex_count();
    let mut t = CoefficientTable::new();
    for (row, col, v) in a.entries() {
        if *col < nv {
            let p = space.path(*row);
            if p.source().0 == *col {
                t.add(p.clone(), v.clone());
            }
        }
    }
    t
}

/// `Σ a_w L_w` on the truncated space.
pub fn synthesize<T: Scalar>(tbl: &CoefficientTable<T>, space: &FockSpace) -> Result<SparseOperator<T>> {
    weighted_sum(tbl, space, |_| Some(T::one()))
}

fn weighted_sum<T: Scalar>(
    tbl: &CoefficientTable<T>,
    space: &FockSpace,
    weight: impl Fn(usize) -> Option<T>,
) -> Result<SparseOperator<T>> {
    let mut triplets = Vec::new();
    let mut degree = 0;
    for (w, a) in tbl.iter() {
        if space.index_of(w).is_none() && w.len() <= space.level() {
            return Err(Error::InadmissiblePath(format!("{}", w.display(space.graph()))));
        }
        let Some(wt) = weight(w.len()) else { continue };
        let c = wt * a.clone();
        if c.is_zero() {
            continue;
        }
        degree = degree.max(w.len());
        for v in 0..space.dim() {
            if let Some(j) = space.translate(Side::L, v, w) {
                triplets.push((j, v, c.clone()));
            }
        }
    }
    Ok(SparseOperator::from_triplets(space.dim(), degree, triplets))
}

/// Cesàro mean `Σ_{|w|<k} (1 − |w|/k) a_w L_w`.
pub fn cesaro_operator<T: FieldScalar>(
    tbl: &CoefficientTable<T>,
    space: &FockSpace,
    k: usize,
) -> Result<SparseOperator<T>> {
    if k == 0 {
        return Err(Error::Degenerate("Cesàro index must be at least 1".into()));
    }
    weighted_sum(tbl, space, |len| {
        (len < k).then(|| T::ratio((k - len) as i64, k as i64))
    })
}

/// Per-generator commutator sizes against the right algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutantReport {
    /// `(generator, ‖[A, g]‖_max on safe levels)`.
    pub per_generator: Vec<(String, f64)>,
    pub safe_bound: usize,
}

impl CommutantReport {
    pub fn max(&self) -> f64 {
        self.per_generator.iter().map(|g| g.1).fold(0.0, f64::max)
    }
}

/// `max_g ‖(Ag − gA)‖` over `g ∈ {R_e, Q_x}`, restricted to the columns at
/// levels `≤ N − deg(A) − 1`. Zero exactly when `A` agrees there with an
/// element of the left algebra.
pub fn commutant_residual<T: Scalar>(a: &SparseOperator<T>, space: &FockSpace) -> CommutantReport {
    let g = space.graph();
    let bound = space.safe_bound(a.degree() + 1);
    let mut per_generator = Vec::new();
    let mut check = |name: String, op: SparseOperator<T>| {
        let c = (&(a * &op) - &(&op * a)).restrict_columns(bound);
        per_generator.push((name, c.max_abs()));
    };
    for e in g.edge_ids() {
        check(format!("R[{}]", g.edge(e).label), space.right(e));
    }
    for x in g.vertex_ids() {
        check(format!("Q[{}]", g.vertex_label(x)), space.source_projection(x));
    }
    CommutantReport {
        per_generator,
        safe_bound: bound,
    }
}

/// Returns `{α_x}` with `A = Σ α_x P_x` when `A` is normal on its safe levels,
/// `None` when it is not.
pub fn normal_part_decomposition<T: Scalar>(
    a: &SparseOperator<T>,
    space: &FockSpace,
    tol: f64,
) -> Result<Option<BTreeMap<VertexId, T>>> {
    let residual = commutant_residual(a, space).max();
    if residual > tol {
        return Err(Error::NotInAlgebra { residual });
    }
    let adj = a.adjoint();
    let bound = space.safe_bound(2 * a.degree());
    let comm = (&(a * &adj) - &(&adj * a)).restrict_columns(bound);
    if comm.max_abs() > tol {
        return Ok(None);
    }
    let g = space.graph();
    let alphas: BTreeMap<VertexId, T> = g.vertex_ids().map(|x| (x, a.get(x.0, x.0))).collect();
    let mut recon = SparseOperator::zeros(space.dim());
    for (x, al) in &alphas {
        recon = &recon + &space.vertex_projection::<T>(*x).scale(al);
    }
    let rbound = space.safe_bound(a.degree());
    if (a - &recon).restrict_columns(rbound).max_abs() > tol {
        return Ok(None);
    }
    Ok(Some(alphas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::EdgeId;
    use num_complex::Complex64 as C;
    use num_rational::Ratio;

    fn p(space: &FockSpace, s: &str) -> Path {
        Path::parse(space.graph(), s).unwrap()
    }

    #[test]
    fn projection_has_a_single_vertex_coefficient() {
        let s = FockSpace::new(&corpus::loop_tail(), 3).unwrap();
        let x = s.graph().vertex("x").unwrap();
        let t = fourier_coefficients(&s.vertex_projection::<i64>(x), &s);
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&Path::vertex(x)), 1);
    }

    #[test]
    fn roundtrip_of_a_two_term_series() {
        let s = FockSpace::new(&corpus::loop_bridge_loop(), 3).unwrap();
        let tbl: CoefficientTable<C> = [
            (p(&s, "e"), C::new(2.0, 0.0)),
            (p(&s, "f.e"), C::new(0.0, -3.0)),
        ]
        .into_iter()
        .collect();
        let a = synthesize(&tbl, &s).unwrap();
        assert_eq!(fourier_coefficients(&a, &s), tbl);
        assert_eq!(commutant_residual(&a, &s).max(), 0.0);
    }

    #[test]
    fn rank_one_operator_is_flagged() {
        let s = FockSpace::new(&corpus::loop_bridge_loop(), 3).unwrap();
        let (e, f) = (s.index_of(&p(&s, "e")).unwrap(), s.index_of(&p(&s, "f")).unwrap());
        let a = SparseOperator::from_triplets(s.dim(), 1, [(e, f, 1i64)]);
        assert!(commutant_residual(&a, &s).max() > 0.0);
        assert!(synthesize(&fourier_coefficients(&a, &s), &s).unwrap() != a);
    }

    #[test]
    fn cesaro_weights() {
        let g = corpus::loops(1);
        let s = FockSpace::new(&g, 3).unwrap();
        let tbl: CoefficientTable<Ratio<i64>> = [(p(&s, "e1"), Ratio::from_integer(1))].into_iter().collect();
        let c = cesaro_operator(&tbl, &s, 2).unwrap();
        assert_eq!(c, s.left::<Ratio<i64>>(EdgeId(0)).scale(&Ratio::new(1, 2)));
        let x: CoefficientTable<Ratio<i64>> = [(p(&s, "x"), Ratio::from_integer(1))].into_iter().collect();
        for k in 1..5 {
            assert_eq!(
                cesaro_operator(&x, &s, k).unwrap().entries(),
                s.vertex_projection::<Ratio<i64>>(VertexId(0)).entries()
            );
        }
        assert!(cesaro_operator(&x, &s, 0).is_err());
    }

    #[test]
    fn products_of_words_have_indicator_coefficients() {
        for (_, g) in corpus::all() {
            let s = FockSpace::new(&g, 4).unwrap();
            let short: Vec<Path> = s.table().paths().iter().filter(|p| p.len() <= 2).cloned().collect();
            for w in &short {
                for v in &short {
                    let lw: SparseOperator<i64> = s.word_operator(Side::L, w).unwrap();
                    let lv: SparseOperator<i64> = s.word_operator(Side::L, v).unwrap();
                    let t = fourier_coefficients(&(&lw * &lv), &s);
                    match w.try_concat(v) {
                        Some(wv) => {
                            assert_eq!(t.len(), 1);
                            assert_eq!(t.get(&wv), 1);
                        }
                        None => assert!(t.is_empty()),
                    }
                }
            }
        }
    }

    #[test]
    fn algebra_elements_expand_by_right_translation() {
        let g = corpus::fibonacci();
        let s = FockSpace::new(&g, 5).unwrap();
        let tbl: CoefficientTable<i64> = [(p(&s, "e1"), 2), (p(&s, "e3.e2"), -1), (p(&s, "x2"), 5)]
            .into_iter()
            .collect();
        let a = synthesize(&tbl, &s).unwrap();
        let bound = s.safe_bound(a.degree());
        for v in 0..bound {
            let pv = s.path(v).clone();
            let col: Vec<i64> = a.apply(&s.basis_vector(v));
            let base = a.apply(&s.basis_vector(pv.range().0));
            let rv: SparseOperator<i64> = s.word_operator(Side::R, &pv).unwrap();
            assert_eq!(col, rv.apply(&base));
        }
    }

    #[test]
    fn normal_elements_are_vertex_combinations() {
        let g = corpus::loop_tail();
        let s = FockSpace::new(&g, 3).unwrap();
        let (x, y) = (g.vertex("x").unwrap(), g.vertex("y").unwrap());
        let a = &s.vertex_projection::<C>(x).scale(&C::new(3.0, 0.0))
            + &s.vertex_projection::<C>(y).scale(&C::new(0.0, -1.0));
        let d = normal_part_decomposition(&a, &s, 1e-12).unwrap().unwrap();
        assert_eq!(d[&x], C::new(3.0, 0.0));
        assert_eq!(d[&y], C::new(0.0, -1.0));

        let l: SparseOperator<C> = s.left(EdgeId(0));
        assert_eq!(normal_part_decomposition(&l, &s, 1e-12).unwrap(), None);

        let z = SparseOperator::<C>::zeros(s.dim());
        let d = normal_part_decomposition(&z, &s, 1e-12).unwrap().unwrap();
        assert!(d.values().all(|v| *v == C::new(0.0, 0.0)));

        let (e, f) = (s.index_of(&p(&s, "e")).unwrap(), s.index_of(&p(&s, "f")).unwrap());
        let bad = SparseOperator::from_triplets(s.dim(), 0, [(e, f, C::new(1.0, 0.0))]);
        assert!(matches!(
            normal_part_decomposition(&bad, &s, 1e-12),
            Err(Error::NotInAlgebra { .. })
        ));
    }
}
