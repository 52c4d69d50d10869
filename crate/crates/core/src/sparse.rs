//! Sparse square matrices in sorted coordinate form, with a creation-degree budget.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// A square sparse matrix on a Fock space basis.
///
/// Entries are sorted by `(row, col)`, unique, and never zero. `degree` is a
/// conservative bound on the number of creation letters in the expression
/// that produced the operator: products add degrees, sums take the maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T> {
    dim: usize,
    degree: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> SparseOperator<T> {
    pub fn zeros(dim: usize) -> Self {
        SparseOperator {
            dim,
            degree: 0,
            entries: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|i| (i, T::one())), dim)
    }

    /// Diagonal operator from `(index, value)` pairs.
    pub fn diagonal(diag: impl IntoIterator<Item = (usize, T)>, dim: usize) -> Self {
        Self::from_triplets(dim, 0, diag.into_iter().map(|(i, v)| (i, i, v)))
    }

    /// Builds from unordered triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(
        dim: usize,
        degree: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut raw: Vec<(usize, usize, T)> = triplets.into_iter().collect();
        for &(r, c, _) in &raw {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside dimension {dim}");
        }
        raw.sort_by_key(|a| (a.0, a.1));
        let mut entries: Vec<(usize, usize, T)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => {
                    last.2 = last.2.clone() + v;
                }
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero());
        SparseOperator {
            dim,
            degree,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by `(row, col)`.
    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        match self
            .entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(row, col)))
        {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Nonzero entries of column `col` as `(row, value)`.
    pub fn column(&self, col: usize) -> Vec<(usize, T)> {
        self.entries
            .iter()
            .filter(|e| e.1 == col)
            .map(|e| (e.0, e.2.clone()))
            .collect()
    }

    /// All columns at once, indexed by column.
    pub fn columns(&self) -> Vec<Vec<(usize, T)>> {
        let mut cols = vec![Vec::new(); self.dim];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_triplets(
            self.dim,
            self.degree,
            self.entries
                .iter()
                .map(|(r, c, v)| (*r, *c, s.clone() * v.clone())),
        )
    }

    /// Conjugate transpose; the degree is kept.
    pub fn adjoint(&self) -> Self {
        let mut entries: Vec<(usize, usize, T)> = self
            .entries
            .iter()
            .map(|(r, c, v)| (*c, *r, v.conj()))
            .collect();
        entries.sort_by_key(|a| (a.0, a.1));
        SparseOperator {
            dim: self.dim,
            degree: self.degree,
            entries,
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.dim, "vector length");
        let mut y = vec![T::zero(); self.dim];
        for (r, c, v) in &self.entries {
            y[*r] = y[*r].clone() + v.clone() * x[*c].clone();
        }
        y
    }

    /// Keeps only columns `< bound`. With canonical path order this is
    /// right multiplication by the projection onto all levels below a cut.
    pub fn restrict_columns(&self, bound: usize) -> Self {
        SparseOperator {
            dim: self.dim,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .filter(|e| e.1 < bound)
                .cloned()
                .collect(),
        }
    }

    /// Keeps only the entries whose row and column satisfy the predicates.
    pub fn filter(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        SparseOperator {
            dim: self.dim,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .filter(|e| keep(e.0, e.1))
                .cloned()
                .collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseOperator<U> {
        SparseOperator::from_triplets(
            self.dim,
            self.degree,
            self.entries.iter().map(|(r, c, v)| (*r, *c, f(v))),
        )
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other)
            .entries
            .iter()
            .map(|e| e.2.magnitude())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.2.magnitude())
            .fold(0.0, f64::max)
    }

    /// Drops entries with modulus at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        SparseOperator {
            dim: self.dim,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .filter(|e| e.2.magnitude() > tol)
                .cloned()
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.dim]; self.dim];
        for (r, c, v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimensions differ");
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        let rhs = |v: &T| if negate { -v.clone() } else { v.clone() };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => (x.0, x.1).cmp(&(y.0, y.1)),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, b[j].1, rhs(&b[j].2)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = a[i].2.clone() + rhs(&b[j].2);
                    if !v.is_zero() {
                        out.push((a[i].0, a[i].1, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparseOperator {
            dim: self.dim,
            degree: self.degree.max(other.degree),
            entries: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimensions differ");
        let n = self.dim;
        let mut row_start = vec![0usize; n + 1];
        for e in &other.entries {
            row_start[e.0 + 1] += 1;
        }
        for k in 0..n {
            row_start[k + 1] += row_start[k];
        }
        let mut acc: Vec<Option<T>> = vec![None; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        let mut idx = 0;
        while idx < self.entries.len() {
            let row = self.entries[idx].0;
            while idx < self.entries.len() && self.entries[idx].0 == row {
                let (_, k, ref a) = self.entries[idx];
                for (_, j, b) in &other.entries[row_start[k]..row_start[k + 1]] {
                    let term = a.clone() * b.clone();
                    match &mut acc[*j] {
                        Some(s) => *s = s.clone() + term,
                        slot @ None => {
                            *slot = Some(term);
                            touched.push(*j);
                        }
                    }
                }
                idx += 1;
            }
            touched.sort_unstable();
            for &j in &touched {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out.push((row, j, v));
                }
            }
            touched.clear();
        }
        SparseOperator {
            dim: n,
            degree: self.degree + other.degree,
            entries: out,
        }
    }
}

impl<T: Scalar> Add for &SparseOperator<T> {
    type Output = SparseOperator<T>;
    fn add(self, rhs: Self) -> SparseOperator<T> {
        self.merge(rhs, false)
    }
}

impl<T: Scalar> Sub for &SparseOperator<T> {
    type Output = SparseOperator<T>;
    fn sub(self, rhs: Self) -> SparseOperator<T> {
        self.merge(rhs, true)
    }
}

impl<T: Scalar> Mul for &SparseOperator<T> {
    type Output = SparseOperator<T>;
    fn mul(self, rhs: Self) -> SparseOperator<T> {
        self.product(rhs)
    }
}

impl<T: Scalar> Neg for &SparseOperator<T> {
    type Output = SparseOperator<T>;
    fn neg(self) -> SparseOperator<T> {
        SparseOperator {
            dim: self.dim,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|(r, c, v)| (*r, *c, -v.clone()))
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for SparseOperator<T> {
            type Output = SparseOperator<T>;
            fn $f(self, rhs: Self) -> SparseOperator<T> {
                (&self).$f(&rhs)
            }
        }
        impl<T: Scalar> $tr<&SparseOperator<T>> for SparseOperator<T> {
            type Output = SparseOperator<T>;
            fn $f(self, rhs: &SparseOperator<T>) -> SparseOperator<T> {
                (&self).$f(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        let mut c = vec![vec![0; n]; n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        c
    }

    fn op(n: usize, t: &[(usize, usize, i64)]) -> SparseOperator<i64> {
        SparseOperator::from_triplets(n, 1, t.iter().map(|&(r, c, v)| (r % n, c % n, v)))
    }

    proptest! {
        #[test]
        fn product_matches_dense(
            a in prop::collection::vec((0usize..6, 0usize..6, -3i64..4), 0..20),
            b in prop::collection::vec((0usize..6, 0usize..6, -3i64..4), 0..20),
        ) {
            let (x, y) = (op(6, &a), op(6, &b));
            let p = &x * &y;
            prop_assert_eq!(p.to_dense(), dense_mul(&x.to_dense(), &y.to_dense()));
            prop_assert_eq!(p.degree(), 2);
            prop_assert!(p.entries().iter().all(|e| e.2 != 0));
            prop_assert!(p.entries().windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        }

        #[test]
        fn sum_difference_and_adjoint(
            a in prop::collection::vec((0usize..5, 0usize..5, -3i64..4), 0..15),
            b in prop::collection::vec((0usize..5, 0usize..5, -3i64..4), 0..15),
        ) {
            let (x, y) = (op(5, &a), op(5, &b));
            prop_assert!((&(&x + &y) - &y) == x);
            prop_assert!((&x - &x).is_zero());
            prop_assert_eq!(x.adjoint().adjoint(), x.clone());
            prop_assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
        }
    }

    #[test]
    fn duplicates_sum_and_zeros_vanish() {
        let a = SparseOperator::from_triplets(3, 0, [(0, 1, 2i64), (0, 1, -2), (2, 2, 1), (2, 2, 4)]);
        assert_eq!(a.entries(), &[(2, 2, 5)]);
        assert_eq!(a.get(2, 2), 5);
        assert_eq!(a.get(0, 1), 0);
    }

    #[test]
    fn complex_adjoint_conjugates() {
        use num_complex::Complex;
        let a = SparseOperator::from_triplets(2, 1, [(0, 1, Complex::new(1i64, 2))]);
        assert_eq!(a.adjoint().entries(), &[(1, 0, Complex::new(1, -2))]);
    }
}
