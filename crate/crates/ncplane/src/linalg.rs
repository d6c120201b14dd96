//! Dense complex linear algebra helpers.
//!
//! Storage is `ndarray` throughout; the Hermitian eigensolver and large
//! matrix products are routed through `faer`.

use faer::{Mat, MatRef, Side};
use ndarray::{Array1, Array2, ArrayView2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Hermitian eigendecomposition, eigenvalues ascending.
///
/// Returns `(values, vectors)` with eigenvectors as the columns of `vectors`.
pub fn eigh(h: &ArrayView2<C64>) -> Result<(Vec<f64>, Array2<C64>)> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::DimensionMismatch {
            context: "eigh",
            expected: n,
            got: h.ncols(),
        });
    }
    let m = to_faer(h);
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::EigenFailure(format!("{e:?} (dim {n})")))?;
    let values: Vec<f64> = (0..n).map(|i| evd.S()[i].re).collect();
    let u = evd.U();
    let vectors = Array2::from_shape_fn((n, n), |(i, j)| u[(i, j)]);
    Ok((values, vectors))
}

/// Matrix product `a · b` through faer's gemm.
pub fn matmul(a: &ArrayView2<C64>, b: &ArrayView2<C64>) -> Array2<C64> {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape mismatch");
    let fa = to_faer(a);
    let fb = to_faer(b);
    let fc = &fa * &fb;
    Array2::from_shape_fn((a.nrows(), b.ncols()), |(i, j)| fc[(i, j)])
}

/// `a† · b` without materializing the adjoint.
pub fn adjoint_matmul(a: &ArrayView2<C64>, b: &ArrayView2<C64>) -> Array2<C64> {
    assert_eq!(a.nrows(), b.nrows(), "adjoint_matmul shape mismatch");
    let fa = to_faer(a);
    let fb = to_faer(b);
    let fc = fa.adjoint() * &fb;
    Array2::from_shape_fn((a.ncols(), b.ncols()), |(i, j)| fc[(i, j)])
}

fn to_faer(a: &ArrayView2<C64>) -> Mat<C64> {
    if let Some(slice) = a.as_slice() {
        MatRef::from_row_major_slice(slice, a.nrows(), a.ncols()).to_owned()
    } else {
        Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
    }
}

/// Conjugate transpose.
pub fn dagger(a: &ArrayView2<C64>) -> Array2<C64> {
    let mut out = Array2::zeros((a.ncols(), a.nrows()));
    for ((i, j), v) in a.indexed_iter() {
        out[(j, i)] = v.conj();
    }
    out
}

/// Kronecker product with row-major index convention `(i_a * nb + i_b)`.
pub fn kron(a: &ArrayView2<C64>, b: &ArrayView2<C64>) -> Array2<C64> {
    let (ra, ca) = (a.nrows(), a.ncols());
    let (rb, cb) = (b.nrows(), b.ncols());
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for ((ia, ja), &va) in a.indexed_iter() {
        if va == C64::new(0.0, 0.0) {
            continue;
        }
        for ((ib, jb), &vb) in b.indexed_iter() {
            out[(ia * rb + ib, ja * cb + jb)] = va * vb;
        }
    }
    out
}

/// Identity matrix.
pub fn eye(n: usize) -> Array2<C64> {
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Commutator `[a, b] = ab - ba`.
pub fn commutator(a: &ArrayView2<C64>, b: &ArrayView2<C64>) -> Array2<C64> {
    &matmul(a, b) - &matmul(b, a)
}

/// Max absolute deviation from Hermiticity.
pub fn hermiticity_deviation(a: &ArrayView2<C64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in i..a.ncols() {
            dev = dev.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Max absolute entry.
pub fn max_abs(a: &ArrayView2<C64>) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.norm()))
}

/// Max absolute entrywise difference.
pub fn max_abs_diff(a: &ArrayView2<C64>, b: &ArrayView2<C64>) -> f64 {
    assert_eq!(a.dim(), b.dim(), "max_abs_diff shape mismatch");
    let mut dev: f64 = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        dev = dev.max((x - y).norm());
    }
    dev
}

/// Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm(a: &ArrayView2<C64>) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix-vector product.
pub fn matvec(a: &ArrayView2<C64>, v: &Array1<C64>) -> Array1<C64> {
    assert_eq!(a.ncols(), v.len(), "matvec shape mismatch");
    let mut out = Array1::zeros(a.nrows());
    for (i, mut_row) in a.outer_iter().enumerate() {
        let mut acc = C64::new(0.0, 0.0);
        for (x, y) in mut_row.iter().zip(v.iter()) {
            acc += x * y;
        }
        out[i] = acc;
    }
    out
}

/// `a† v`.
pub fn adjoint_matvec(a: &ArrayView2<C64>, v: &Array1<C64>) -> Array1<C64> {
    assert_eq!(a.nrows(), v.len(), "adjoint_matvec shape mismatch");
    let mut out = Array1::zeros(a.ncols());
    for (i, row) in a.outer_iter().enumerate() {
        let vi = v[i];
        for (j, x) in row.iter().enumerate() {
            out[j] += x.conj() * vi;
        }
    }
    out
}
