//! `M_2(T)` as the localization of the triangular ring, with
//! `rho = (rho_A rho_M; 0 rho_B)`. Invertibility of `id (x) sigma` is
//! certified through matrix units: after localization `sigma` becomes right
//! multiplication by `e12` from the first column to the second, and right
//! multiplication by `e21` undoes it.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::family::{Family, RingElement};
use crate::report::Report;
use crate::triangular::{TriElement, TriangularRing};
use crate::tring::{TElement, TRing};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// `(t11 t12; t21 t22)` with entries in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub t11: TElement,
    pub t12: TElement,
    pub t21: TElement,
    pub t22: TElement,
}

impl Matrix2 {
    fn entries(&self) -> [&TElement; 4] {
        [&self.t11, &self.t12, &self.t21, &self.t22]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum M2Op {
    Add,
    Mul,
}

/// The ring `M_2(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRing {
    t: TRing,
}

impl MatrixRing {
    pub fn new(t: TRing) -> Self {
        MatrixRing { t }
    }

    pub fn t(&self) -> &TRing {
        &self.t
    }

    pub fn family(&self) -> &Arc<Family> {
        self.t.family()
    }

    pub fn from_entries(&self, t11: TElement, t12: TElement, t21: TElement, t22: TElement) -> Result<Matrix2> {
        let m = Matrix2 { t11, t12, t21, t22 };
        self.check(&m)?;
        Ok(m)
    }

    fn check(&self, x: &Matrix2) -> Result<()> {
        if x.entries().iter().all(|e| **e.family() == **self.family()) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch)
        }
    }

    /// The matrix unit `e_ij`, indices in `1..=2`.
    pub fn unit(&self, i: usize, j: usize) -> Matrix2 {
        assert!((1..=2).contains(&i) && (1..=2).contains(&j), "matrix unit index out of range");
        let pick = |r, c| if (r, c) == (i, j) { self.t.one() } else { self.t.zero() };
        Matrix2 { t11: pick(1, 1), t12: pick(1, 2), t21: pick(2, 1), t22: pick(2, 2) }
    }

    pub fn m2_arith(&self, op: M2Op, x: &Matrix2, y: &Matrix2) -> Result<Matrix2> {
        self.check(x)?;
        self.check(y)?;
        let t = &self.t;
        match op {
            M2Op::Add => Ok(Matrix2 {
                t11: t.try_add(&x.t11, &y.t11)?,
                t12: t.try_add(&x.t12, &y.t12)?,
                t21: t.try_add(&x.t21, &y.t21)?,
                t22: t.try_add(&x.t22, &y.t22)?,
            }),
            M2Op::Mul => {
                let dot = |a: &TElement, b: &TElement, c: &TElement, d: &TElement| -> Result<TElement> {
                    t.try_add(&t.try_mul(a, b)?, &t.try_mul(c, d)?)
                };
                Ok(Matrix2 {
                    t11: dot(&x.t11, &y.t11, &x.t12, &y.t21)?,
                    t12: dot(&x.t11, &y.t12, &x.t12, &y.t22)?,
                    t21: dot(&x.t21, &y.t11, &x.t22, &y.t21)?,
                    t22: dot(&x.t21, &y.t12, &x.t22, &y.t22)?,
                })
            }
        }
    }

    /// `(rho_A(a), rho_M(m); 0, rho_B(b))`.
    pub fn rho_matrix(&self, r: &TriElement) -> Result<Matrix2> {
        Ok(Matrix2 {
            t11: self.t.rho_a(&r.a)?,
            t12: self.t.rho_m(&r.m)?,
            t21: self.t.zero(),
            t22: self.t.rho_b(&r.b)?,
        })
    }

    /// A matrix with random normalized entries.
    pub fn random<G: rand::Rng + ?Sized>(&self, rng: &mut G) -> Result<Matrix2> {
        let mut entry = || self.t.normalize(&self.t.random_expr(rng));
        Ok(Matrix2 { t11: entry()?, t12: entry()?, t21: entry()?, t22: entry()? })
    }

    /// `[[t11, t12], [t21, t22]]` in the element grammar.
    pub fn render(&self, x: &Matrix2) -> String {
        let r = |e: &TElement| self.t.render(e);
        format!("[[{}, {}], [{}, {}]]", r(&x.t11), r(&x.t12), r(&x.t21), r(&x.t22))
    }
}

impl Ring for MatrixRing {
    type Elem = Matrix2;

    fn zero(&self) -> Matrix2 {
        let z = self.t.zero();
        Matrix2 { t11: z.clone(), t12: z.clone(), t21: z.clone(), t22: z }
    }
    fn one(&self) -> Matrix2 {
        let (z, o) = (self.t.zero(), self.t.one());
        Matrix2 { t11: o.clone(), t12: z.clone(), t21: z, t22: o }
    }
    fn from_scalar(&self, c: &Scalar) -> Matrix2 {
        let (z, c) = (self.t.zero(), self.t.constant(c));
        Matrix2 { t11: c.clone(), t12: z.clone(), t21: z, t22: c }
    }
    fn add(&self, x: &Matrix2, y: &Matrix2) -> Matrix2 {
        self.m2_arith(M2Op::Add, x, y).expect("matrices over one ring")
    }
    fn neg(&self, x: &Matrix2) -> Matrix2 {
        Matrix2 { t11: self.t.neg(&x.t11), t12: self.t.neg(&x.t12), t21: self.t.neg(&x.t21), t22: self.t.neg(&x.t22) }
    }
    fn mul(&self, x: &Matrix2, y: &Matrix2) -> Matrix2 {
        self.m2_arith(M2Op::Mul, x, y).expect("matrices over one ring")
    }
    fn render(&self, x: &Matrix2) -> String {
        MatrixRing::render(self, x)
    }
}

/// Checks that `rho: R -> M_2(T)` is sigma-inverting, on `samples` seeded
/// pairs. Normalization runs with `t`'s rules, so a `TRing` built with a
/// corrupted rule set serves as a negative control. Budget exhaustion is the
/// only error.
pub fn verify_sigma_inverting(t: &TRing, seed: u64, samples: usize) -> Result<Report> {
    let family = t.family().clone();
    let mat = MatrixRing::new(t.clone());
    let tri = TriangularRing::new(family.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("sigma-inverting: {}", family.label()), Some(seed));
    report.fact("family", family.label());
    report.fact("T", t.oracle_ring().name());
    if !t.rules().identity {
        report.fact("rules", "corrupted: x_p = 1 dropped");
    }

    let image_of_one = mat.rho_matrix(&tri.one())?;
    let witness = (image_of_one != mat.one()).then(|| format!("rho(1) = {}", mat.render(&image_of_one)));
    report.check("rho is unital", 1, witness);

    let mut mul_witness = None;
    let mut add_witness = None;
    for _ in 0..samples {
        let (x, y) = (tri.random(&mut rng), tri.random(&mut rng));
        let (rx, ry) = (mat.rho_matrix(&x)?, mat.rho_matrix(&y)?);
        if mul_witness.is_none() {
            let lhs = mat.rho_matrix(&tri.mul(&x, &y))?;
            if lhs != mat.m2_arith(M2Op::Mul, &rx, &ry)? {
                mul_witness = Some(format!("r1 = {}, r2 = {}", tri.render(&x), tri.render(&y)));
            }
        }
        if add_witness.is_none() {
            let lhs = mat.rho_matrix(&tri.add(&x, &y))?;
            if lhs != mat.m2_arith(M2Op::Add, &rx, &ry)? {
                add_witness = Some(format!("r1 = {}, r2 = {}", tri.render(&x), tri.render(&y)));
            }
        }
    }
    report.check("rho is multiplicative", samples, mul_witness);
    report.check("rho is additive", samples, add_witness);

    let (e11, e12, e21, e22) = (mat.unit(1, 1), mat.unit(1, 2), mat.unit(2, 1), mat.unit(2, 2));
    let corner = mat.rho_matrix(&tri.corner(family.p()))?;
    let witness = (corner != e12).then(|| format!("rho((0,p,0)) = {}", mat.render(&corner)));
    report.check("rho((0,p,0)) = e12", 1, witness);

    let mut witness = None;
    for (x, y, z, name) in [(&e12, &e21, &e11, "e12*e21"), (&e21, &e12, &e22, "e21*e12")] {
        let prod = mat.m2_arith(M2Op::Mul, x, y)?;
        if prod != *z && witness.is_none() {
            witness = Some(format!("{name} = {}", mat.render(&prod)));
        }
    }
    report.check("matrix unit identities", 2, witness);

    // sigma after localization: X e11 -> X e11 E; the inverse is X e22 -> X e22 e21
    let mut witness = None;
    for _ in 0..samples.min(100) {
        let x = mat.random(&mut rng)?;
        let first = mat.m2_arith(M2Op::Mul, &x, &e11)?;
        let second = mat.m2_arith(M2Op::Mul, &x, &e22)?;
        let there = mat.m2_arith(M2Op::Mul, &first, &corner)?;
        let back = mat.m2_arith(M2Op::Mul, &there, &e21)?;
        let round = mat.m2_arith(M2Op::Mul, &mat.m2_arith(M2Op::Mul, &second, &e21)?, &corner)?;
        if (back != first || round != second) && witness.is_none() {
            witness = Some(format!("X = {}", mat.render(&x)));
        }
    }
    report.check("right multiplication by e21 inverts sigma", samples.min(100), witness);

    let mut witness = None;
    for _ in 0..samples.min(100) {
        let x = tri.random(&mut rng);
        let (p, q) = tri.columns(&x);
        let zero_a = family.a_ring().zero();
        let zero_b = family.b_ring().zero();
        let rp = mat.rho_matrix(&TriElement { a: p.a, m: family.zero_m(), b: zero_b })?;
        let rq = mat.rho_matrix(&TriElement { a: zero_a, m: q.m, b: q.b })?;
        let p_ok = rp.t12.is_zero() && rp.t22.is_zero();
        let q_ok = rq.t11.is_zero() && rq.t21.is_zero();
        if !(p_ok && q_ok) && witness.is_none() {
            witness = Some(format!("r = {}", tri.render(&x)));
        }
    }
    report.check("columns land in columns", samples.min(100), witness);
    Ok(report)
}

/// `rho` of a triangular element given by its three parts.
pub fn rho_of_parts(mat: &MatrixRing, a: RingElement, m: crate::family::BimElement, b: RingElement) -> Result<Matrix2> {
    let tri = TriangularRing::new(mat.family().clone());
    mat.rho_matrix(&tri.element(a, m, b)?)
}
