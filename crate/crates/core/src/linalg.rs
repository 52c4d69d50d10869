//! Dense complex vector helpers for the subspace computations.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// `⟨a, b⟩ = Σ a_i conj(b_i)`.
pub fn inner<F: Real>(a: &[Complex<F>], b: &[Complex<F>]) -> Complex<F> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |s, (x, y)| s + x * y.conj())
}

pub fn norm<F: Real>(a: &[Complex<F>]) -> F {
    a.iter()
        .fold(F::zero(), |s, z| s + z.re * z.re + z.im * z.im)
        .sqrt()
}

pub fn scale<F: Real>(a: &[Complex<F>], s: Complex<F>) -> Vec<Complex<F>> {
    a.iter().map(|z| z * s).collect()
}

pub fn sub<F: Real>(a: &[Complex<F>], b: &[Complex<F>]) -> Vec<Complex<F>> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Removes from `v` its components along the orthonormal vectors `basis`.
pub fn project_out<F: Real>(v: &mut [Complex<F>], basis: &[Vec<Complex<F>>]) {
    for q in basis {
        let c = inner(v, q);
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(q) {
            *x = *x - c * y;
        }
    }
}

/// Orthonormal basis of the span of `vectors` orthogonal to the orthonormal
/// set `against`, by Gram–Schmidt with one re-orthogonalization pass. A
/// vector is dropped when projection shrinks it below `tol` times its
/// original norm.
pub fn orthonormalize<F: Real>(
    vectors: &[Vec<Complex<F>>],
    against: &[Vec<Complex<F>>],
    tol: F,
) -> Vec<Vec<Complex<F>>> {
    let mut out: Vec<Vec<Complex<F>>> = Vec::new();
    for v in vectors {
        let n0 = norm(v);
        if n0 <= F::min_positive_value() {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            project_out(&mut w, against);
            project_out(&mut w, &out);
        }
        let n = norm(&w);
        if n > tol * n0 {
            let inv = Complex::new(F::one() / n, F::zero());
            out.push(scale(&w, inv));
        }
    }
    out
}

/// Distance from `v` to the span of the orthonormal set `basis`.
pub fn distance_to_span<F: Real>(v: &[Complex<F>], basis: &[Vec<Complex<F>>]) -> F {
    let mut w = v.to_vec();
    project_out(&mut w, basis);
    project_out(&mut w, basis);
    norm(&w)
}
