//! Finite-dimensional unital algebras with a trace, and the Frobenius copairing.

use thiserror::Error;

use crate::linalg::{axpy, Field, LinalgError, Matrix, Scalar};
use crate::report::{CheckBuilder, Report, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constant index ({0},{1},{2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("the trace pairing is degenerate, so the algebra is not Frobenius")]
    NotFrobenius,
    #[error("element is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `e_i e_j = Σ_k μ[i][j][k] e_k` together with a unit and a trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    field: Field,
    dim: usize,
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
    trace: Vec<Scalar>,
}

impl AlgebraData {
    /// `structure` is dense, index `(i * dim + j) * dim + k`.
    pub fn new(
        field: Field,
        dim: usize,
        structure: Vec<Scalar>,
        unit: Vec<Scalar>,
        trace: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let check = |expected: usize, found: usize| {
            if expected == found { Ok(()) } else { Err(AlgebraError::DimensionMismatch { expected, found }) }
        };
        check(dim * dim * dim, structure.len())?;
        check(dim, unit.len())?;
        check(dim, trace.len())?;
        Ok(AlgebraData { field, dim, structure, unit, trace })
    }

    /// Builds from the nonzero structure constants `(i, j, k, value)`.
    pub fn from_sparse(
        field: Field,
        dim: usize,
        entries: &[(usize, usize, usize, Scalar)],
        unit: Vec<Scalar>,
        trace: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let mut structure = vec![field.zero(); dim * dim * dim];
        for (i, j, k, v) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(AlgebraError::IndexOutOfRange(*i, *j, *k));
            }
            structure[(i * dim + j) * dim + k] += v;
        }
        Self::new(field, dim, structure, unit, trace)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn trace_vector(&self) -> &[Scalar] {
        &self.trace
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// The coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.structure[start..start + self.dim]
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn sparse_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in self.basis_product(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        for v in [a, b] {
            if v.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Bilinear product; panics on a length mismatch.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        assert!(a.len() == self.dim && b.len() == self.dim, "algebra element length mismatch");
        let mut out = vec![self.field.zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                axpy(&mut out, &(x * y), self.basis_product(i, j));
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, factors: &[&[Scalar]]) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn trace(&self, a: &[Scalar]) -> Scalar {
        crate::linalg::dot(&self.trace, a)
    }

    /// Matrix of `x ↦ c x`.
    pub fn left_mul_matrix(&self, c: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul(c, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("columns have algebra dimension")
    }

    /// Matrix of `x ↦ x c`.
    pub fn right_mul_matrix(&self, c: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul(&self.basis_vector(j), c)).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("columns have algebra dimension")
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        crate::linalg::unit_vec(self.field, self.dim, i)
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    /// `M[i][j] = θ(e_i e_j)`.
    pub fn gram_matrix(&self) -> Matrix {
        Matrix::from_fn(self.field, self.dim, self.dim, |i, j| self.trace(self.basis_product(i, j)))
    }

    /// The inverse of the trace pairing.
    pub fn copairing(&self) -> Result<Copairing, AlgebraError> {
        let gram = self.gram_matrix();
        let matrix = gram.invert().map_err(|_| AlgebraError::NotFrobenius)?;
        Ok(Copairing { matrix })
    }

    /// Two-sided inverse via the left-multiplication matrix.
    pub fn element_inverse(&self, c: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        if c.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: c.len() });
        }
        let lm = self.left_mul_matrix(c);
        let inv = lm.invert().map_err(|_| AlgebraError::NotInvertible)?;
        let x = inv.mul_vec(&self.unit);
        if self.mul(c, &x) != self.unit || self.mul(&x, c) != self.unit {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(x)
    }

    /// Associativity on basis triples, unit laws, and trace cyclicity.
    pub fn verify(&self) -> Report {
        let n = self.dim;
        let mut report = Report::new("algebra");

        let mut assoc = CheckBuilder::new("algebra.associativity");
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), self.basis_product(j, k));
                    let ok = lhs == rhs;
                    assoc.case(ok, || Witness::new(&[], &[i, j, k]).sides(&lhs, &rhs));
                    if !ok {
                        break 'outer;
                    }
                }
            }
        }
        report.push(assoc.finish());

        let mut unit = CheckBuilder::new("algebra.unit");
        for i in 0..n {
            let e = self.basis_vector(i);
            let left = self.mul(&self.unit, &e);
            let right = self.mul(&e, &self.unit);
            if !unit.case(left == e, || Witness::new(&[], &[i]).sides(&left, &e))
                || !unit.case(right == e, || Witness::new(&[], &[i]).sides(&right, &e))
            {
                break;
            }
        }
        report.push(unit.finish());

        let mut cyc = CheckBuilder::new("algebra.trace_cyclicity");
        'cyc: for i in 0..n {
            for j in 0..n {
                let a = self.trace(self.basis_product(i, j));
                let b = self.trace(self.basis_product(j, i));
                let ok = a == b;
                cyc.case(ok, || Witness::new(&[], &[i, j]).sides(std::slice::from_ref(&a), std::slice::from_ref(&b)));
                if !ok {
                    break 'cyc;
                }
            }
        }
        report.push(cyc.finish());
        report
    }

    /// The copairing's defining identity, its symmetry, and both intertwining identities.
    pub fn verify_copairing(&self, xi: &Copairing) -> Report {
        let n = self.dim;
        let x = &xi.matrix;
        let mut report = Report::new("copairing");

        let mut defining = CheckBuilder::new("copairing.defining_identity");
        for k in 0..n {
            // Σ_{a,b} X[a][b] e_a θ(e_k e_b)
            let mut lhs = self.zero_element();
            for (a, b, coef) in xi.terms() {
                let t = self.trace(self.basis_product(k, b));
                if !t.is_zero() {
                    lhs[a] += &(&coef * &t);
                }
            }
            let e = self.basis_vector(k);
            if !defining.case(lhs == e, || Witness::new(&[], &[k]).sides(&lhs, &e)) {
                break;
            }
        }
        report.push(defining.finish());

        let mut sym = CheckBuilder::new("copairing.symmetry");
        sym.case(*x == x.transpose(), Witness::default);
        report.push(sym.finish());

        // c ξ' ⊗ ξ'' = ξ' ⊗ ξ'' c   is   L_c X = X R_cᵀ
        // ξ' c ⊗ ξ'' = ξ' ⊗ c ξ''   is   R_c X = X L_cᵀ
        let mut left = CheckBuilder::new("copairing.intertwining_outer");
        let mut right = CheckBuilder::new("copairing.intertwining_inner");
        for k in 0..n {
            let e = self.basis_vector(k);
            let lc = self.left_mul_matrix(&e);
            let rc = self.right_mul_matrix(&e);
            let (l1, r1) = (lc.mul(x), x.mul(&rc.transpose()));
            left.case(l1 == r1, || Witness::new(&[], &[k]).sides(l1.entries(), r1.entries()));
            let (l2, r2) = (rc.mul(x), x.mul(&lc.transpose()));
            right.case(l2 == r2, || Witness::new(&[], &[k]).sides(l2.entries(), r2.entries()));
        }
        report.push(left.finish());
        report.push(right.finish());
        report
    }
}

/// `ξ = Σ X[a][b] e_a ⊗ e_b`, the symmetric tensor inverse to the trace pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Copairing {
    pub matrix: Matrix,
}

impl Copairing {
    /// Nonzero terms `(a, b, X[a][b])`.
    pub fn terms(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.matrix.rows();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let v = self.matrix.get(a, b);
                if !v.is_zero() {
                    out.push((a, b, v.clone()));
                }
            }
        }
        out
    }

    /// The tensor as a vector of length `n²`, index `a * n + b`.
    pub fn as_tensor(&self) -> Vec<Scalar> {
        self.matrix.entries().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    /// K[Z/2] with basis (e, s) and θ = δ_e.
    fn kz2() -> AlgebraData {
        let f = Field::Rationals;
        AlgebraData::from_sparse(
            f,
            2,
            &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1)), (1, 1, 0, q(1))],
            vec![q(1), q(0)],
            vec![q(1), q(0)],
        )
        .unwrap()
    }

    /// K[x]/(x²) with basis (1, x) and θ(a + bx) = b.
    fn dual_numbers() -> AlgebraData {
        AlgebraData::from_sparse(
            Field::Rationals,
            2,
            &[(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
            vec![q(1), q(0)],
            vec![q(0), q(1)],
        )
        .unwrap()
    }

    fn ground(t: i64) -> AlgebraData {
        AlgebraData::from_sparse(Field::Rationals, 1, &[(0, 0, 0, q(1))], vec![q(1)], vec![q(t)]).unwrap()
    }

    #[test]
    fn unit_and_group_laws() {
        let a = kz2();
        let b = vec![q(3), q(-2)];
        assert_eq!(a.multiply(a.unit(), &b).unwrap(), b);
        assert_eq!(a.multiply(&b, a.unit()).unwrap(), b);
        assert_eq!(a.mul(&a.basis_vector(1), &a.basis_vector(1)), a.basis_vector(0));
        let d = dual_numbers();
        assert_eq!(d.mul(&d.basis_vector(1), &d.basis_vector(1)), vec![q(0), q(0)]);
        assert!(a.multiply(&[q(1)], &b).is_err());
    }

    #[test]
    fn gram_matrices() {
        assert_eq!(ground(5).gram_matrix().entries(), &[q(5)]);
        assert!(kz2().gram_matrix().is_identity());
        assert_eq!(dual_numbers().gram_matrix().entries(), &[q(0), q(1), q(1), q(0)]);
    }

    #[test]
    fn copairings() {
        let g = ground(5).copairing().unwrap();
        assert_eq!(g.matrix.entries(), &[Field::Rationals.parse("1/5").unwrap()]);
        assert!(kz2().copairing().unwrap().matrix.is_identity());
        // x⊗1 + 1⊗x
        assert_eq!(dual_numbers().copairing().unwrap().matrix.entries(), &[q(0), q(1), q(1), q(0)]);
        assert_eq!(ground(0).copairing(), Err(AlgebraError::NotFrobenius));
    }

    #[test]
    fn verification_passes_and_detects_corruption() {
        assert!(kz2().verify().passed());
        assert!(ground(1).verify().passed());
        let mut structure: Vec<Scalar> = (0..2).flat_map(|i| (0..2).flat_map(move |j| (0..2).map(move |k| (i, j, k))))
            .map(|(i, j, k)| kz2().structure_constant(i, j, k).clone())
            .collect();
        // e·s = 2s, so (e·e)·s = 2s but e·(e·s) = 4s
        structure[3] = q(2);
        let bad = AlgebraData::new(Field::Rationals, 2, structure, vec![q(1), q(0)], vec![q(1), q(0)]).unwrap();
        let r = bad.verify();
        let c = r.get("algebra.associativity").unwrap();
        assert!(!c.passed());
        let w = c.witness.as_ref().unwrap();
        let (i, j, k) = (w.indices[0], w.indices[1], w.indices[2]);
        let lhs = bad.mul(bad.basis_product(i, j), &bad.basis_vector(k));
        let rhs = bad.mul(&bad.basis_vector(i), bad.basis_product(j, k));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn copairing_identities() {
        for a in [kz2(), dual_numbers(), ground(3)] {
            let xi = a.copairing().unwrap();
            assert!(a.verify_copairing(&xi).passed());
        }
        let a = kz2();
        let mut xi = a.copairing().unwrap();
        xi.matrix.set(0, 1, q(1));
        let r = a.verify_copairing(&xi);
        assert!(!r.passed());
    }

    #[test]
    fn inverses() {
        let a = kz2();
        assert_eq!(a.element_inverse(a.unit()).unwrap(), a.unit().to_vec());
        assert_eq!(a.element_inverse(&a.basis_vector(1)).unwrap(), a.basis_vector(1));
        let d = dual_numbers();
        assert_eq!(d.element_inverse(&d.basis_vector(1)), Err(AlgebraError::NotInvertible));
        // 1 + x has inverse 1 - x
        assert_eq!(d.element_inverse(&[q(1), q(1)]).unwrap(), vec![q(1), q(-1)]);
    }
}
