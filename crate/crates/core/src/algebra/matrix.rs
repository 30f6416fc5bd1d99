//! Dense row-major matrices over a `Ring`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type IntMatrix = Matrix<BigInt>;

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<F, G: Fn(&E) -> F>(&self, g: G) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(g).collect() }
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &Matrix<E>) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns onto {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::filled(rows, cols, ring.zero())
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    let mut m = zeros(ring, n, n);
    for i in 0..n {
        m.set(i, i, ring.one());
    }
    m
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let t = ring.mul(aik, b.get(k, j));
                let s = ring.add(out.get(i, j), &t);
                out.set(i, j, s);
            }
        }
    }
    Ok(out)
}

/// Row vector times matrix.
pub fn vec_mat<R: Ring>(ring: &R, v: &[R::Elem], m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    assert_eq!(v.len(), m.rows, "vector length must match matrix rows");
    (0..m.cols)
        .map(|j| {
            let mut acc = ring.zero();
            for (i, vi) in v.iter().enumerate() {
                if !ring.is_zero(vi) {
                    acc = ring.add(&acc, &ring.mul(vi, m.get(i, j)));
                }
            }
            acc
        })
        .collect()
}

/// `row_target += c * row_source`.
pub(crate) fn add_row_multiple<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, target: usize, source: usize, c: &R::Elem) {
    for j in 0..m.cols {
        let t = ring.add(m.get(target, j), &ring.mul(c, m.get(source, j)));
        m.set(target, j, t);
    }
}

/// `col_target += col_source * c`.
pub(crate) fn add_col_multiple<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, target: usize, source: usize, c: &R::Elem) {
    for i in 0..m.rows {
        let t = ring.add(m.get(i, target), &ring.mul(m.get(i, source), c));
        m.set(i, target, t);
    }
}

pub(crate) fn scale_row<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, i: usize, c: &R::Elem) {
    for j in 0..m.cols {
        let t = ring.mul(c, m.get(i, j));
        m.set(i, j, t);
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn int_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::IntegerRing;

    fn im(rows: usize, cols: usize, v: &[i64]) -> IntMatrix {
        Matrix::new(rows, cols, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn shape_checked() {
        assert!(Matrix::new(2, 2, vec![BigInt::zero(); 3]).is_err());
        assert!(mat_mul(&IntegerRing, &im(2, 3, &[0; 6]), &im(2, 3, &[0; 6])).is_err());
    }

    #[test]
    fn determinant() {
        assert_eq!(int_det(&im(2, 2, &[1, 2, 3, 4])), BigInt::from(-2));
        assert_eq!(int_det(&im(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8])), BigInt::from(-2));
        assert_eq!(int_det(&im(3, 3, &[1, 2, 3, 2, 4, 6, 1, 1, 1])), BigInt::zero());
    }

    #[test]
    fn product() {
        let a = im(2, 2, &[1, 2, 3, 4]);
        let b = im(2, 1, &[5, 6]);
        assert_eq!(mat_mul(&IntegerRing, &a, &b).unwrap(), im(2, 1, &[17, 39]));
        let v = vec_mat(&IntegerRing, &[BigInt::from(1), BigInt::from(1)], &a);
        assert_eq!(v, vec![BigInt::from(4), BigInt::from(6)]);
    }
}
