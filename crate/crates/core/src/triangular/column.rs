//! A triple seen as one `R`-module: the additive group `N_A (+) N_B` with
//! `R` acting through `e11 = (1, 0; 0, 0)` and the corners `(0, mu; 0, 0)`.
//! Going back to a triple uses `N_A = e11 N` and `N_B = N / e11 N`.

use std::sync::Arc;

use super::triple::{image, inclusion, FpModule, TripleModule};
use super::TriElement;
use crate::algebra::matrix::{identity, mat_mul, zeros};
use crate::algebra::presentation::{hom_defect, identity_defect, Reduced};
use crate::algebra::{Matrix, Presentation, Ring, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::family::{Family, RingElement};

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnModule {
    family: Arc<Family>,
    module: FpModule,
    e11: Matrix<Scalar>,
    pub(super) corners: Vec<Matrix<Scalar>>,
}

impl ColumnModule {
    /// `N_A (+) N_B` with generators `g_1..g_nA, h_1..h_nB`.
    pub fn from_triple(t: &TripleModule) -> Result<Self> {
        let ring = t.ring();
        let (na, nb) = (t.na().gens(), t.nb().gens());
        let n = na + nb;
        let rels = crate::algebra::presentation::block_diag(&ring, t.na().rels(), t.nb().rels());
        let module = Presentation::new(ring, n, rels)?;
        let mut e11 = zeros(&ring, n, n);
        for i in 0..na {
            e11.set(i, i, ring.one());
        }
        let corners = t
            .f_blocks()
            .iter()
            .map(|block| {
                let mut c = zeros(&ring, n, n);
                for j in 0..nb {
                    for i in 0..na {
                        c.set(na + j, i, block.get(j, i).clone());
                    }
                }
                c
            })
            .collect();
        Ok(ColumnModule { family: t.family().clone(), module, e11, corners })
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    fn ring(&self) -> ScalarRing {
        *self.module.ring()
    }

    /// `r * v` for a representative `v`.
    pub fn act(&self, r: &TriElement, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.module.gens() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for a module on {} generators", v.len(), self.module.gens())));
        }
        let ring = self.ring();
        let scalar = |e: &RingElement| e.as_scalar().cloned().ok_or(Error::FamilyMismatch);
        let (a, b) = (scalar(&r.a)?, scalar(&r.b)?);
        self.family.check_m(&r.m)?;
        let coords = self.family.coordinates(&r.m).ok_or(Error::FamilyMismatch)?;
        let top = image(&ring, v, &self.e11);
        let mut out: Vec<Scalar> = v.iter().zip(&top).map(|(x, t)| &a * t + &b * (x - t)).collect();
        for (c, corner) in coords.iter().zip(&self.corners) {
            for (o, x) in out.iter_mut().zip(image(&ring, v, corner)) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Recovers a triple: `N_A' = N / (1 - e11) N`, `N_B' = N / e11 N`, and
    /// `f'(mu (x) [v]) = [v * corner_mu]`. Fails when `f'` would depend on
    /// the lift of `[v]`, i.e. when `e11` followed by a corner is not zero.
    pub fn to_triple(&self) -> Result<TripleModule> {
        let ring = self.ring();
        let n = self.module.gens();
        let id = identity(&ring, n);
        let complement = Matrix::new(n, n, id.entries().iter().zip(self.e11.entries()).map(|(x, y)| x - y).collect())?;
        let na = self.module.with_rels(&complement)?;
        let nb = self.module.with_rels(&self.e11)?;
        let na_red = na.reduce()?;
        for (mu, corner) in self.family.basis().unwrap_or_default().iter().zip(&self.corners) {
            let through = mat_mul(&ring, &self.e11, corner)?;
            if let Some(i) = na_red.first_nonzero_row(&through) {
                return Err(Error::IllDefined(format!(
                    "corner {} applied to e11 * g{i} is not zero: f' depends on the lift",
                    self.family.format_bim(mu)
                )));
            }
        }
        TripleModule::new(self.family.clone(), na, nb, self.corners.clone())
    }
}

/// Output of [`module_roundtrip`]: the recovered triple and the witness
/// maps in both directions, each `[N_A map, N_B map]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundTrip {
    pub triple: TripleModule,
    pub forward: [Matrix<Scalar>; 2],
    pub backward: [Matrix<Scalar>; 2],
}

/// Triple -> column module -> triple, with the isomorphism checked exactly:
/// both witness pairs are well defined, mutually inverse modulo relations,
/// and intertwine the two `f`s.
pub fn module_roundtrip(t: &TripleModule) -> Result<RoundTrip> {
    let ring = t.ring();
    let back = ColumnModule::from_triple(t)?.to_triple()?;
    let (na, nb) = (t.na().gens(), t.nb().gens());
    let forward = [inclusion(&ring, na, nb, true), inclusion(&ring, nb, na, false)];
    let backward = [forward[0].transpose(), forward[1].transpose()];
    let old = [t.na().reduce()?, t.nb().reduce()?];
    let new = [back.na().reduce()?, back.nb().reduce()?];
    let sources = [(t.na(), back.na()), (t.nb(), back.nb())];
    for side in 0..2 {
        let name = ["N_A", "N_B"][side];
        if hom_defect(sources[side].0, &forward[side], &new[side])?.is_some() {
            return Err(Error::IllDefined(format!("forward witness on {name}")));
        }
        if hom_defect(sources[side].1, &backward[side], &old[side])?.is_some() {
            return Err(Error::IllDefined(format!("backward witness on {name}")));
        }
        check_inverse(&old[side], &mat_mul(&ring, &forward[side], &backward[side])?, name)?;
        check_inverse(&new[side], &mat_mul(&ring, &backward[side], &forward[side])?, name)?;
    }
    for (i, mu) in t.basis().iter().enumerate() {
        // f(mu (x) n) pushed forward equals f'(mu (x) forward(n))
        let lhs = mat_mul(&ring, t.f(i), &forward[0])?;
        let rhs = mat_mul(&ring, &forward[1], back.f(i))?;
        for j in 0..nb {
            if !new[0].equivalent(lhs.row(j), rhs.row(j)) {
                return Err(Error::IllDefined(format!(
                    "witness does not intertwine f on {} (x) h{j}",
                    t.family().format_bim(mu)
                )));
            }
        }
    }
    Ok(RoundTrip { triple: back, forward, backward })
}

fn check_inverse(module: &Reduced<ScalarRing>, comp: &Matrix<Scalar>, name: &str) -> Result<()> {
    match identity_defect(module, comp) {
        None => Ok(()),
        Some(i) => Err(Error::NotInverse(format!("witnesses on {name} fail at generator {i}"))),
    }
}
