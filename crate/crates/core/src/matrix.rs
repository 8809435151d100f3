//! Dense matrices over exact rationals, with the handful of linear-algebra
//! primitives the rest of the crate needs: solving, kernels, images, rank.
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! every returned basis and every particular solution is deterministic for a
//! fixed input. Problem sizes here are tiny (total dimension ≤ ~64), so a
//! dense representation is the simplest correct choice.

use crate::scalar::{zero, Scalar};
use num::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = crate::scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if !rhs[(k, j)].is_zero() {
                        let t = &self[(i, k)] * &rhs[(k, j)];
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let t = m[(p, j)].clone();
                m[(p, j)] = m[(row, j)].clone();
                m[(row, j)] = t;
            }
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let t = &m[(row, j)] * &inv;
                m[(row, j)] = t;
            }
            for i in 0..m.rows {
                if i != row && !m[(i, col)].is_zero() {
                    let f = m[(i, col)].clone();
                    for j in col..m.cols {
                        let t = &m[(row, j)] * &f;
                        m[(i, j)] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by exact elimination without row scaling.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = crate::scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return zero();
            };
            if p != col {
                for j in 0..n {
                    let t = m[(p, j)].clone();
                    m[(p, j)] = m[(col, j)].clone();
                    m[(col, j)] = t;
                }
                det = -det;
            }
            det *= &m[(col, col)];
            let inv = m[(col, col)].recip();
            for i in (col + 1)..n {
                if !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] * &inv;
                    for j in col..n {
                        let t = &m[(col, j)] * &f;
                        m[(i, j)] -= t;
                    }
                }
            }
        }
        det
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = crate::scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// One exact solution of `A x = b`, or `None` when `b` is outside the column
/// span. Free variables are set to zero, so the answer is deterministic.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch in solve");
    let mut aug = Mat::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&a.cols) {
        return None; // a pivot in the augmented column means inconsistency
    }
    let mut x = vec![zero(); a.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = r[(row, a.cols)].clone();
    }
    Some(x)
}

/// Basis of `ker A` read off the reduced echelon form, one vector per free
/// column, in column order.
pub fn kernel_basis(a: &Mat) -> Vec<Vec<Scalar>> {
    let (r, pivots) = a.rref();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![zero(); a.cols];
            v[fc] = crate::scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, fc)].clone();
            }
            v
        })
        .collect()
}

/// Basis of `im A`: the original columns at the pivot positions.
pub fn image_basis(a: &Mat) -> Vec<Vec<Scalar>> {
    let (_, pivots) = a.rref();
    pivots.iter().map(|&c| a.column(c)).collect()
}

/// Whether `v` lies in the span of `basis` (all vectors of equal length).
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let cols = basis.len();
    let mut m = Mat::zeros(v.len(), cols);
    for (j, b) in basis.iter().enumerate() {
        assert_eq!(b.len(), v.len());
        for i in 0..v.len() {
            m[(i, j)] = b[i].clone();
        }
    }
    solve(&m, v).is_some()
}
