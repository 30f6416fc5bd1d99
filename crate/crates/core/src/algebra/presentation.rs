//! Finitely presented modules `R^gens / rowspan(rels)` over a Euclidean
//! ring. Elements are row vectors of generator coefficients; a morphism is
//! a matrix whose row `i` is the image of generator `i`.

use super::matrix::{identity, mat_mul, vec_mat, zeros, Matrix};
use super::ring::{EuclideanRing, Ring};
use super::smith::{cokernel_invariants, euclidean_reduce, row_span_solve, Smith};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<R: Ring> {
    ring: R,
    gens: usize,
    rels: Matrix<R::Elem>,
}

impl<R: Ring> Presentation<R> {
    pub fn new(ring: R, gens: usize, rels: Matrix<R::Elem>) -> Result<Self> {
        if rels.cols() != gens {
            return Err(Error::DimensionMismatch(format!(
                "relations have {} columns for {gens} generators",
                rels.cols()
            )));
        }
        Ok(Presentation { ring, gens, rels })
    }

    /// The free module on `gens` generators.
    pub fn free(ring: R, gens: usize) -> Self {
        let rels = Matrix::new(0, gens, Vec::new()).expect("empty matrix");
        Presentation { ring, gens, rels }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &Matrix<R::Elem> {
        &self.rels
    }

    /// Adds relation rows.
    pub fn with_rels(&self, extra: &Matrix<R::Elem>) -> Result<Self> {
        Presentation::new(self.ring.clone(), self.gens, self.rels.stack(extra)?)
    }
}

impl<R: EuclideanRing> Presentation<R> {
    pub fn reduce(&self) -> Result<Reduced<R>> {
        let smith = euclidean_reduce(&self.ring, &self.rels)?;
        Ok(Reduced { ring: self.ring.clone(), gens: self.gens, smith })
    }
}

/// A presentation together with the Smith form of its relations.
#[derive(Clone, Debug)]
pub struct Reduced<R: Ring> {
    ring: R,
    gens: usize,
    smith: Smith<R::Elem>,
}

impl<R: EuclideanRing> Reduced<R> {
    pub fn smith(&self) -> &Smith<R::Elem> {
        &self.smith
    }

    /// `v == 0` in the module.
    pub fn is_zero(&self, v: &[R::Elem]) -> bool {
        self.gens == 0 || row_span_solve(&self.ring, &self.smith, v).is_some()
    }

    pub fn equivalent(&self, v: &[R::Elem], w: &[R::Elem]) -> bool {
        let diff: Vec<R::Elem> = v.iter().zip(w).map(|(x, y)| self.ring.sub(x, y)).collect();
        self.is_zero(&diff)
    }

    /// Index of the first row of `m` that is not zero in the module.
    pub fn first_nonzero_row(&self, m: &Matrix<R::Elem>) -> Option<usize> {
        (0..m.rows()).find(|&i| !self.is_zero(m.row(i)))
    }

    /// Invariant factors (non-units) and free rank.
    pub fn invariants(&self) -> (Vec<R::Elem>, usize) {
        if self.gens == 0 {
            return (Vec::new(), 0);
        }
        cokernel_invariants(&self.ring, &self.smith)
    }
}

/// First relation of `src` whose image under `hom` is nonzero in `dst`.
pub fn hom_defect<R: EuclideanRing>(src: &Presentation<R>, hom: &Matrix<R::Elem>, dst: &Reduced<R>) -> Result<Option<usize>> {
    if hom.rows() != src.gens || hom.cols() != dst.gens {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} map between modules on {} and {} generators",
            hom.rows(),
            hom.cols(),
            src.gens,
            dst.gens
        )));
    }
    if src.rels.rows() == 0 {
        return Ok(None);
    }
    let images = mat_mul(&src.ring, &src.rels, hom)?;
    Ok(dst.first_nonzero_row(&images))
}

/// First generator `i` with `comp(e_i) != e_i` in the module, where `comp`
/// is an endomorphism matrix.
pub fn identity_defect<R: EuclideanRing>(module: &Reduced<R>, comp: &Matrix<R::Elem>) -> Option<usize> {
    let id = identity(&module.ring, module.gens);
    (0..module.gens).find(|&i| !module.equivalent(comp.row(i), id.row(i)))
}

/// `v * m` for a row vector.
pub fn apply<R: Ring>(ring: &R, v: &[R::Elem], m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    if m.rows() == 0 {
        return vec![ring.zero(); m.cols()];
    }
    vec_mat(ring, v, m)
}

/// Block matrix `[a 0; 0 b]`.
pub fn block_diag<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let mut out = zeros(ring, a.rows() + b.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
        }
    }
    out
}

/// Side-by-side `[a b]`.
pub fn hstack<E: Clone>(a: &Matrix<E>, b: &Matrix<E>) -> Result<Matrix<E>> {
    Ok(a.transpose().stack(&b.transpose())?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, BaseRing, ScalarRing, Scalar};

    fn zm(rows: usize, cols: usize, v: &[i64]) -> Matrix<Scalar> {
        Matrix::new(rows, cols, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    const Z: ScalarRing = ScalarRing(BaseRing::Z);

    #[test]
    fn cyclic_module() {
        // Z/6 on one generator
        let p = Presentation::new(Z, 1, zm(1, 1, &[6])).unwrap();
        let r = p.reduce().unwrap();
        assert!(r.is_zero(&[int(12)]));
        assert!(!r.is_zero(&[int(3)]));
        assert!(r.equivalent(&[int(7)], &[int(1)]));
        assert_eq!(r.invariants(), (vec![int(6)], 0));
    }

    #[test]
    fn homs_between_cyclic_modules() {
        let z6 = Presentation::new(Z, 1, zm(1, 1, &[6])).unwrap();
        let z3 = Presentation::new(Z, 1, zm(1, 1, &[3])).unwrap();
        // Z/6 -> Z/3, 1 -> 1 is well defined; Z/3 -> Z/6, 1 -> 1 is not
        assert_eq!(hom_defect(&z6, &zm(1, 1, &[1]), &z3.reduce().unwrap()).unwrap(), None);
        assert_eq!(hom_defect(&z3, &zm(1, 1, &[1]), &z6.reduce().unwrap()).unwrap(), Some(0));
        assert_eq!(hom_defect(&z3, &zm(1, 1, &[2]), &z6.reduce().unwrap()).unwrap(), None);
        assert!(hom_defect(&z3, &zm(1, 2, &[1, 0]), &z6.reduce().unwrap()).is_err());
    }

    #[test]
    fn identity_up_to_relations() {
        let z6 = Presentation::new(Z, 1, zm(1, 1, &[6])).unwrap().reduce().unwrap();
        assert_eq!(identity_defect(&z6, &zm(1, 1, &[7])), None);
        assert_eq!(identity_defect(&z6, &zm(1, 1, &[5])), Some(0));
    }

    #[test]
    fn block_shapes() {
        let a = zm(1, 2, &[1, 2]);
        let b = zm(2, 1, &[3, 4]);
        assert_eq!(block_diag(&Z, &a, &b), zm(3, 3, &[1, 2, 0, 0, 0, 3, 0, 0, 4]));
        assert_eq!(hstack(&zm(2, 1, &[1, 2]), &zm(2, 2, &[3, 4, 5, 6])).unwrap(), zm(2, 3, &[1, 3, 4, 2, 5, 6]));
        let free = Presentation::free(Z, 2).reduce().unwrap();
        assert_eq!(free.invariants(), (vec![], 2));
        assert!(Presentation::free(Z, 0).reduce().unwrap().is_zero(&[]));
    }
}
