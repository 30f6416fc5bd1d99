//! Smith normal form over Euclidean domains, and the cokernel questions it
//! answers (invariant factors, row-span membership).

use num_bigint::BigInt;

use super::kadic::{KadicFraction, KadicRing};
use super::matrix::{add_col_multiple, add_row_multiple, identity, mat_mul, scale_row, IntMatrix, Matrix};
use super::ring::{EuclideanRing, IntegerRing, Ring};
use crate::error::Result;

/// `u * m * v = d` with `u`, `v` invertible and `d` diagonal, each diagonal
/// entry a canonical associate dividing the next.
#[derive(Clone, Debug, PartialEq)]
pub struct Smith<E> {
    pub u: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
    pub rank: usize,
}

impl<E: Clone> Smith<E> {
    /// The nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn find_pivot<R: EuclideanRing>(ring: &R, a: &Matrix<R::Elem>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, num_bigint::BigUint)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = a.get(i, j);
            if ring.is_zero(e) {
                continue;
            }
            let s = ring.size(e);
            if best.as_ref().is_none_or(|b| s < b.2) {
                best = Some((i, j, s));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smallest-size pivoting with row/column remainder reduction.
pub fn smith_generic<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Smith<R::Elem> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = identity(ring, rows);
    let mut v = identity(ring, cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(ring, &a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = a.get(t, t).clone();
            for i in t + 1..rows {
                if !ring.is_zero(a.get(i, t)) {
                    let (q, _) = ring.div_rem(a.get(i, t), &pivot);
                    let q = ring.neg(&q);
                    add_row_multiple(ring, &mut a, i, t, &q);
                    add_row_multiple(ring, &mut u, i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !ring.is_zero(a.get(t, j)) {
                    let (q, _) = ring.div_rem(a.get(t, j), &pivot);
                    let q = ring.neg(&q);
                    add_col_multiple(ring, &mut a, j, t, &q);
                    add_col_multiple(ring, &mut v, j, t, &q);
                }
            }
            // any leftover remainder is strictly smaller than the pivot
            if let Some(i) = (t + 1..rows).find(|&i| !ring.is_zero(a.get(i, t))) {
                a.swap_rows(t, i);
                u.swap_rows(t, i);
                continue;
            }
            if let Some(j) = (t + 1..cols).find(|&j| !ring.is_zero(a.get(t, j))) {
                a.swap_cols(t, j);
                v.swap_cols(t, j);
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| ring.exact_div(a.get(i, j), &pivot).is_none())
            });
            match offender {
                Some(i) => {
                    let one = ring.one();
                    add_row_multiple(ring, &mut a, t, i, &one);
                    add_row_multiple(ring, &mut u, t, i, &one);
                }
                None => break,
            }
        }
        t += 1;
    }
    for i in 0..t {
        let (unit, _) = ring.normalize(a.get(i, i));
        scale_row(ring, &mut a, i, &unit);
        scale_row(ring, &mut u, i, &unit);
    }
    let result = Smith { u, d: a, v, rank: t };
    assert_smith_identity(ring, m, &result);
    result
}

fn assert_smith_identity<R: Ring>(ring: &R, m: &Matrix<R::Elem>, s: &Smith<R::Elem>) {
    let um = mat_mul(ring, &s.u, m).expect("u is square of matching size");
    let umv = mat_mul(ring, &um, &s.v).expect("v is square of matching size");
    assert!(umv == s.d, "Smith identity u*m*v = d violated");
}

/// Integer Smith normal form.
pub fn smith_normal_form(m: &IntMatrix) -> Smith<BigInt> {
    smith_generic(&IntegerRing, m)
}

/// Smith form over `Z[1/k]`: scale to an integer matrix by a power of `k`,
/// reduce over `Z`, then move the unit parts of the diagonal into `u`.
pub fn smith_kadic(ring: &KadicRing, m: &Matrix<KadicFraction>) -> Smith<KadicFraction> {
    let top = m.entries().iter().map(KadicFraction::exponent).max().unwrap_or(0);
    let k = ring.base().clone();
    let scaled: IntMatrix = m.map(|e| e.numerator() * num_traits::pow(k.clone(), (top - e.exponent()) as usize));
    let int = smith_normal_form(&scaled);
    let lift = |x: &BigInt| ring.integer(x.clone());
    let mut u = int.u.map(lift);
    let v = int.v.map(lift);
    let mut d = int.d.map(|x| ring.elem(x.clone(), top));
    for i in 0..int.rank {
        let (unit, _) = ring.normalize(d.get(i, i));
        scale_row(ring, &mut d, i, &unit);
        scale_row(ring, &mut u, i, &unit);
    }
    let result = Smith { u, d, v, rank: int.rank };
    assert_smith_identity(ring, m, &result);
    result
}

/// Diagonal reduction over a Euclidean ring (`Z[1/k]`, `Q[x]`, ...).
pub fn euclidean_reduce<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Result<Smith<R::Elem>> {
    ring.check_euclidean()?;
    Ok(ring.smith(m))
}

/// Coefficients `y` with `y * rels = target`, where `smith` reduces `rels`.
pub fn row_span_solve<R: EuclideanRing>(
    ring: &R,
    smith: &Smith<R::Elem>,
    target: &[R::Elem],
) -> Option<Vec<R::Elem>> {
    let w = super::matrix::vec_mat(ring, target, &smith.v);
    let mut z = vec![ring.zero(); smith.u.rows()];
    for (j, wj) in w.iter().enumerate() {
        if j < smith.rank {
            z[j] = ring.exact_div(wj, smith.d.get(j, j))?;
        } else if !ring.is_zero(wj) {
            return None;
        }
    }
    Some(super::matrix::vec_mat(ring, &z, &smith.u))
}

pub fn in_row_span<R: EuclideanRing>(ring: &R, smith: &Smith<R::Elem>, target: &[R::Elem]) -> bool {
    row_span_solve(ring, smith, target).is_some()
}

/// Invariant factors (non-unit diagonal entries) and free rank of the
/// cokernel `R^cols / rowspan(m)`.
pub fn cokernel_invariants<R: EuclideanRing>(ring: &R, smith: &Smith<R::Elem>) -> (Vec<R::Elem>, usize) {
    let factors = smith.diagonal().into_iter().filter(|d| !ring.is_unit(d)).collect();
    (factors, smith.d.cols() - smith.rank)
}

/// Empty `0 x n` relation matrix helper.
pub fn no_relations<E: Clone>(n: usize) -> Matrix<E> {
    Matrix::new(0, n, Vec::new()).expect("empty matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::int_det;
    use crate::algebra::poly::{PolyRing, PolynomialElement};
    use crate::algebra::ring::BaseRing;
    use crate::algebra::scalar::int;

    fn im(rows: usize, cols: usize, v: &[i64]) -> IntMatrix {
        Matrix::new(rows, cols, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn diag_two_three() {
        let s = smith_normal_form(&im(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.d, im(2, 2, &[1, 0, 0, 6]));
        assert_eq!(int_det(&s.u).magnitude(), &1u32.into());
        assert_eq!(int_det(&s.v).magnitude(), &1u32.into());
    }

    #[test]
    fn zero_one_by_one() {
        let s = smith_normal_form(&im(1, 1, &[0]));
        assert_eq!(s.d, im(1, 1, &[0]));
        assert_eq!(s.u, im(1, 1, &[1]));
        assert_eq!(s.v, im(1, 1, &[1]));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn unimodular_column() {
        for d in [-4i64, 0, 2, 9] {
            let m = im(2, 1, &[d, -1]);
            let s = smith_normal_form(&m);
            assert_eq!(s.d, im(2, 1, &[1, 0]));
        }
    }

    #[test]
    fn kadic_diag_two_three() {
        let z2 = KadicRing::new(BigInt::from(2)).unwrap();
        let m = Matrix::new(2, 2, vec![z2.integer(2.into()), z2.zero(), z2.zero(), z2.integer(3.into())]).unwrap();
        let s = euclidean_reduce(&z2, &m).unwrap();
        assert_eq!(s.diagonal(), vec![z2.one(), z2.integer(3.into())]);
        // fractional entries are cleared before the integer reduction
        let m = Matrix::new(1, 2, vec![z2.elem(3.into(), 2), z2.elem(6.into(), 0)]).unwrap();
        let s = euclidean_reduce(&z2, &m).unwrap();
        assert_eq!(s.diagonal(), vec![z2.integer(3.into())]);
    }

    #[test]
    fn polynomial_reduction() {
        let r = PolyRing::new(BaseRing::Q);
        let x = r.x();
        let x2 = r.mul(&x, &x);
        let s = euclidean_reduce(&r, &Matrix::new(1, 1, vec![x.clone()]).unwrap()).unwrap();
        assert_eq!(s.diagonal(), vec![x.clone()]);
        let m = Matrix::new(2, 2, vec![x.clone(), r.zero(), r.zero(), x2.clone()]).unwrap();
        assert_eq!(euclidean_reduce(&r, &m).unwrap().diagonal(), vec![x.clone(), x2]);
        // scalar multiples become monic
        let m = Matrix::new(1, 1, vec![PolynomialElement::new(vec![int(0), int(3)])]).unwrap();
        assert_eq!(euclidean_reduce(&r, &m).unwrap().diagonal(), vec![x]);
        assert!(euclidean_reduce(&PolyRing::new(BaseRing::Z), &Matrix::new(0, 0, vec![]).unwrap()).is_err());
    }

    #[test]
    fn membership() {
        let rels = im(2, 3, &[2, 4, 0, 0, 3, 3]);
        let s = smith_normal_form(&rels);
        let z = IntegerRing;
        let target: Vec<BigInt> = [2i64, 7, 3].iter().map(|&x| x.into()).collect();
        let y = row_span_solve(&z, &s, &target).unwrap();
        assert_eq!(crate::algebra::matrix::vec_mat(&z, &y, &rels), target);
        assert!(!in_row_span(&z, &s, &[1.into(), 0.into(), 0.into()]));
        let (factors, free) = cokernel_invariants(&z, &s);
        assert_eq!(free, 1);
        assert_eq!(factors, vec![BigInt::from(6)]);
    }
}
