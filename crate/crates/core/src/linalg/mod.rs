//! Exact dense linear algebra over the rationals or a prime field.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::{QuotientData, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected `q` or `gf:<p>`)")]
    BadField(String),
    #[error("malformed scalar `{0}`")]
    BadScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// The `i`-th standard basis vector of `K^n`.
pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| s * x).collect()
}

/// `acc += s * v`.
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    assert_eq!(acc.len(), v.len(), "vector length mismatch");
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(s * x);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    let field = a.first().map_or(Field::Rationals, Scalar::field);
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `a ⊗ b` with index `i * b.len() + j`.
pub fn tensor_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// The swap `V ⊗ W → W ⊗ V` for `dim V = left`, `dim W = right`, as a matrix.
pub fn swap_matrix(field: Field, left: usize, right: usize) -> Matrix {
    let n = left * right;
    Matrix::from_fn(field, n, n, |row, col| {
        // row indexes W ⊗ V as (w, v); col indexes V ⊗ W as (v, w)
        let (w, v) = (row / left, row % left);
        if col == v * right + w { field.one() } else { field.zero() }
    })
}
