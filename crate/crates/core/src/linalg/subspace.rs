use super::{Field, LinalgError, Matrix, Scalar};

/// A linear subspace of `K^n` in canonical form.
///
/// The basis is the nonzero part of a reduced row-echelon matrix, so two
/// subspaces are equal exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// A concrete model of `K^n / S`.
///
/// The quotient is identified with the coordinate subspace spanned by the
/// standard basis vectors at the non-pivot columns of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    /// `quot_dim x n`, kills `S`.
    pub projection: Matrix,
    /// `n x quot_dim`, a right inverse of `projection`.
    pub section: Matrix,
    /// Ambient coordinates of the representatives, in order.
    pub representatives: Vec<usize>,
}

impl QuotientData {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Matrix::zeros(field, 0, ambient_dim), pivots: Vec::new() }
    }

    /// Canonical form of the span of `vectors`.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Self::row_space(&m))
    }

    /// Canonical form of the row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (red, pivots) = m.rref();
        let rank = pivots.len();
        let basis = Matrix::from_fn(m.field(), rank, m.cols(), |i, j| red.get(i, j).clone());
        Subspace { ambient_dim: m.cols(), basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its reduction against the echelon basis is zero iff `v` lies in the subspace.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(self.reduce(v).iter().all(Scalar::is_zero))
    }

    /// Subtracts the basis combination matching `v` at the pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let coef = out[p].clone();
            if coef.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[j] -= &(&coef * b);
                }
            }
        }
        out
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(self == other)
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        for i in 0..self.dim() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image of the subspace under a linear map given as an `m x n` matrix.
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient_dim, "map domain does not match ambient space");
        let images: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|i| map.mul_vec(self.basis.row(i))).collect();
        let m = Matrix::from_rows(map.field(), map.rows(), &images).expect("rows have map.rows() entries");
        Subspace::row_space(&m)
    }

    pub fn quotient(&self) -> QuotientData {
        let field = self.field();
        let n = self.ambient_dim;
        let reps: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut projection = Matrix::zeros(field, reps.len(), n);
        for (t, &q) in reps.iter().enumerate() {
            projection.set(t, q, field.one());
            for (r, &p) in self.pivots.iter().enumerate() {
                projection.set(t, p, -self.basis.get(r, q));
            }
        }
        let section = Matrix::from_fn(field, n, reps.len(), |i, t| {
            if reps[t] == i { field.one() } else { field.zero() }
        });
        QuotientData { projection, section, representatives: reps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::span(Field::Rationals, 3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s, Subspace::zero(Field::Rationals, 3));
    }

    #[test]
    fn spanning_set_fills_plane() {
        let s = Subspace::span(Field::Rationals, 2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn collinear_vectors() {
        let s = Subspace::span(Field::Rationals, 2, &[v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis().row(0), v(&[1, 2]).as_slice());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(Subspace::span(Field::Rationals, 2, &[v(&[1, 2, 3])]).is_err());
        let s = Subspace::zero(Field::Rationals, 2);
        assert!(s.contains(&v(&[1])).is_err());
        assert!(s.equals(&Subspace::zero(Field::Rationals, 3)).is_err());
    }

    #[test]
    fn membership() {
        let s = Subspace::span(Field::Rationals, 2, &[v(&[0, 1])]).unwrap();
        assert!(s.contains(&v(&[0, 0])).unwrap());
        assert!(!s.contains(&v(&[1, 0])).unwrap());
    }

    #[test]
    fn quotient_of_zero_and_full() {
        let z = Subspace::zero(Field::Rationals, 4).quotient();
        assert_eq!(z.dim(), 4);
        assert!(z.projection.is_identity() && z.section.is_identity());
        let full = Subspace::span(Field::Rationals, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])])
            .unwrap()
            .quotient();
        assert_eq!(full.dim(), 0);
    }

    #[test]
    fn quotient_by_diagonal() {
        let s = Subspace::span(Field::Rationals, 2, &[v(&[1, 1])]).unwrap();
        let qd = s.quotient();
        assert_eq!(qd.dim(), 1);
        assert!(qd.projection.mul_vec(&v(&[1, 1])).iter().all(Scalar::is_zero));
        assert!(qd.projection.mul(&qd.section).is_identity());
        // (1,0) + (0,1) lies in the subspace
        let a = qd.projection.mul_vec(&v(&[1, 0]));
        let b = qd.projection.mul_vec(&v(&[0, 1]));
        assert_eq!(a[0], -b[0].clone());
    }
}
