use std::fmt;

use super::{Field, LinalgError, Scalar};

/// Dense row-major matrix over a single [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        for c in cols {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, found: c.len() });
            }
        }
        Ok(Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone()))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index ({i},{j}) out of range");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product; row `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(self.field, self.rows * r2, self.cols * c2);
        let width = self.cols * c2;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * r2 + k) * width + j * c2 + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    /// Reduced row-echelon form (same shape, zero rows last) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, pj) in pivot_row.iter().enumerate().skip(c) {
                    if pj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * pj);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse by Gauss-Jordan on `[m | I]`.
    pub fn invert(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(LinalgError::SingularMatrix);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| red.get(i, n + j).clone()))
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let n = self.cols;
        let aug = Matrix::from_fn(self.field, self.rows, n + 1, |i, j| {
            if j < n { self.get(i, j).clone() } else { b[i].clone() }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![self.field.zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = red.get(r, n).clone();
        }
        Some(x)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        let f = Field::Rationals;
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Matrix::from_rows(f, cols, &rows).unwrap()
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(Field::Rationals, 3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_row() {
        let (r, p) = q(&[&[0, 1], &[0, 2]]).rref();
        assert_eq!(r, q(&[&[0, 1], &[0, 0]]));
        assert_eq!(p, vec![1]);
    }

    #[test]
    fn invert_examples() {
        let id = Matrix::identity(Field::Rationals, 3);
        assert_eq!(id.invert().unwrap(), id);
        let swap = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.invert().unwrap(), swap);
        assert_eq!(q(&[&[1, 1], &[0, 1]]).invert().unwrap(), q(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn invert_singular_and_non_square() {
        assert_eq!(q(&[&[1, 2], &[2, 4]]).invert(), Err(LinalgError::SingularMatrix));
        assert!(matches!(q(&[&[1, 2, 3]]).invert(), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn kron_layout() {
        let a = q(&[&[1, 2]]);
        let b = q(&[&[0], &[1]]);
        assert_eq!(a.kron(&b), q(&[&[0, 0], &[1, 2]]));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = q(&[&[1, 1], &[2, 2]]);
        let f = Field::Rationals;
        let x = a.solve(&[f.from_i64(3), f.from_i64(6)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![f.from_i64(3), f.from_i64(6)]);
        assert!(a.solve(&[f.from_i64(3), f.from_i64(7)]).is_none());
    }

    #[test]
    fn empty_shapes_behave() {
        let f = Field::Rationals;
        let e = Matrix::zeros(f, 0, 3);
        assert_eq!(e.rref().1, Vec::<usize>::new());
        let sq = Matrix::zeros(f, 0, 0);
        assert_eq!(sq.invert().unwrap(), sq);
        assert!(sq.trace().is_zero());
        assert_eq!(Matrix::zeros(f, 2, 0).mul(&Matrix::zeros(f, 0, 3)), Matrix::zeros(f, 2, 3));
    }
}
