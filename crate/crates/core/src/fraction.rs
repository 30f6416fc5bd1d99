//! Replacing `p` by `a0 p` when `a0 m = m b0` for all `m`: `x_(a0 p)` is
//! central in `T(M, p)`, `x_m -> x_(a0 m)` induces `phi: T(M, p) -> T(M, a0 p)`,
//! every element of the target is `phi(alpha) / phi(x_(a0 p))^r`, and any
//! homomorphism inverting `x_(a0 p)` factors uniquely through `phi`.
//!
//! The target family exists for `regular` over `Z` (giving `scaled(a0)`) and
//! for `scaled(k)` (giving `scaled(k a0)`), with an integer `a0 >= 2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BaseRing, KadicRing, Ring, Scalar};
use crate::error::{Error, Result};
use crate::family::{BimElement, Family, RingElement};
use crate::matrix_loc::DEFAULT_SEED;
use crate::report::Report;
use crate::tring::{Expr, OracleElement, TElement, TRing};

/// Random elements of `M` drawn when `M` has no basis to check against.
const CENTRALITY_SAMPLES: usize = 200;

/// `a0` and `b0` with `a0 m = m b0`, plus the rings `T(M, p)` and, when it
/// is representable, `T(M, a0 p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralPair {
    a0: RingElement,
    b0: RingElement,
    source: TRing,
    target: Option<TRing>,
}

/// `phi(numerator) / phi(x_(a0 p))^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: TElement,
    pub exponent: u32,
}

impl CentralPair {
    /// Checks `a0 m = m b0` exactly on the basis of `M`, or on seeded random
    /// elements when there is none.
    pub fn new(source: &TRing, a0: RingElement, b0: RingElement) -> Result<Self> {
        let family = source.family().clone();
        if !family.a_ring().contains(&a0) || !family.b_ring().contains(&b0) {
            return Err(Error::FamilyMismatch);
        }
        let probe: Vec<BimElement> = match family.basis() {
            Some(basis) => basis,
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
                (0..CENTRALITY_SAMPLES).map(|_| family.random_m(&mut rng)).collect()
            }
        };
        for m in &probe {
            if family.left_act(&a0, m)? != family.right_act(m, &b0)? {
                return Err(Error::NotCentral(format!(
                    "a0 m != m b0 for m = {}",
                    family.format_bim(m)
                )));
            }
        }
        let target = target_family(&family, &a0).map(|f| {
            TRing::from_arc(Arc::new(f)).with_budget(source.budget()).with_rules(source.rules())
        });
        Ok(CentralPair { a0, b0, source: source.clone(), target })
    }

    pub fn a0(&self) -> &RingElement {
        &self.a0
    }

    pub fn b0(&self) -> &RingElement {
        &self.b0
    }

    /// `T(M, p)`.
    pub fn source(&self) -> &TRing {
        &self.source
    }

    /// `T(M, a0 p)`.
    pub fn target(&self) -> Result<&TRing> {
        self.target.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("T(M, a0 p) for {} is not a shipped family", self.source.family().label()))
        })
    }

    fn family(&self) -> &Arc<Family> {
        self.source.family()
    }

    /// `a0 p`.
    pub fn shifted_p(&self) -> BimElement {
        self.family().left_act(&self.a0, &self.family().p()).expect("a0 lies in A")
    }

    /// `x_(a0 p)` in `T(M, p)`.
    pub fn central(&self) -> Result<TElement> {
        self.source.generator(&self.shifted_p())
    }

    /// `x_p` in `T(M, a0 p)`, the inverse of `phi(x_(a0 p))`.
    pub fn inverse_in_target(&self) -> Result<TElement> {
        self.target()?.generator(&self.family().p())
    }

    /// Letterwise `x_m -> x_(a0 m)`, normalized in the target.
    pub fn phi(&self, e: &TElement) -> Result<TElement> {
        let target = self.target()?;
        if **e.family() != **self.family() {
            return Err(Error::FamilyMismatch);
        }
        let mut raw = Vec::with_capacity(e.terms().len());
        for (w, c) in e.terms() {
            let word = w.0.iter().map(|m| self.family().left_act(&self.a0, m)).collect::<Result<Vec<_>>>()?;
            raw.push((c.clone(), word));
        }
        target.from_raw(raw)
    }

    fn a0_integer(&self) -> BigInt {
        self.a0.as_scalar().expect("shift needs an integer a0").to_integer()
    }

    /// The source oracle element of value `q`, if `q` lies in the source ring.
    fn in_source(&self, q: &Scalar) -> Option<OracleElement> {
        match &**self.family() {
            Family::Regular(BaseRing::Z) => q.is_integer().then(|| OracleElement::Scalar(q.clone())),
            Family::Scaled(k) => KadicRing::new(k.clone()).ok()?.from_rational(q).map(OracleElement::Kadic),
            _ => None,
        }
    }

    /// `(alpha, r)` with `e = phi(alpha) / phi(x_(a0 p))^r` and `r` minimal.
    pub fn fraction_form(&self, e: &TElement) -> Result<Fraction> {
        let target = self.target()?;
        if **e.family() != **target.family() {
            return Err(Error::FamilyMismatch);
        }
        let OracleElement::Kadic(value) = target.family_iso(e) else {
            unreachable!("shifted targets are scaled families")
        };
        // phi is the inclusion of oracle rings and phi(x_(a0 p)) has value a0
        let q = value.to_rational();
        let a0 = Scalar::from_integer(self.a0_integer());
        let mut scaled = q;
        for r in 0..=value.exponent() {
            if let Some(o) = self.in_source(&scaled) {
                return Ok(Fraction { numerator: self.source.oracle_preimage(&o)?, exponent: r });
            }
            scaled *= &a0;
        }
        unreachable!("a0^r times an element of Z[1/(k a0)] with exponent r lies in Z[1/k]")
    }

    /// `phi(alpha) * x_p^r`.
    pub fn reassemble(&self, f: &Fraction) -> Result<TElement> {
        let target = self.target()?;
        let denominator = target.try_pow(&self.inverse_in_target()?, f.exponent)?;
        target.try_mul(&self.phi(&f.numerator)?, &denominator)
    }

    /// `alpha` alone when `r = 0`, else `(alpha) / (phi(x_(a0 p)))^r`.
    pub fn render_fraction(&self, f: &Fraction) -> Result<String> {
        let alpha = self.source.render(&f.numerator);
        if f.exponent == 0 {
            return Ok(alpha);
        }
        let beta = self.target()?.render(&self.phi(&self.central()?)?);
        Ok(format!("({alpha}) / ({beta})^{}", f.exponent))
    }
}

fn target_family(family: &Family, a0: &RingElement) -> Option<Family> {
    let n = a0.as_scalar()?;
    if !n.is_integer() || n.to_integer() < BigInt::from(2) {
        return None;
    }
    let n = n.to_integer();
    match family {
        Family::Regular(BaseRing::Z) => Some(Family::Scaled(n)),
        Family::Scaled(k) => Some(Family::Scaled(k * n)),
        _ => None,
    }
}

/// `x_(a0 p) x_m = x_m x_(a0 p)` in `T(M, p)`, over the basis of `M` and
/// `samples` seeded random `m`.
pub fn check_central(pair: &CentralPair, seed: u64, samples: usize) -> Result<Report> {
    let t = pair.source();
    let family = t.family().clone();
    let mut report = Report::new(format!("centrality: {}", family.label()), Some(seed));
    report.fact("a0", family.a_ring().render(pair.a0()));
    report.fact("b0", family.b_ring().render(pair.b0()));
    report.fact(
        "certification",
        if family.basis().is_some() { "exact on basis, sampled" } else { "sampled only (no basis)" },
    );
    let z = pair.central()?;
    let commutes = |m: &BimElement| -> Result<Option<String>> {
        let x = t.generator(m)?;
        let ok = t.try_mul(&z, &x)? == t.try_mul(&x, &z)?;
        Ok((!ok).then(|| format!("m = {}", family.format_bim(m))))
    };
    if let Some(basis) = family.basis() {
        let mut witness = None;
        for m in &basis {
            witness = witness.or(commutes(m)?);
        }
        report.check("central on basis", basis.len(), witness);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness = None;
    for _ in 0..samples {
        let m = family.random_m(&mut rng);
        if witness.is_none() {
            witness = commutes(&m)?;
        }
    }
    report.check("central on samples", samples, witness);
    Ok(report)
}

/// The factorization `f~` of a homomorphism `f: T(M, p) -> S` given on
/// letters, with `f~(x_m) = f_inv f(x_m)` on `T(M, a0 p)`.
type LetterMap<'a, E> = Box<dyn Fn(&BimElement) -> E + 'a>;

pub struct Factorization<'a, S: Ring> {
    pair: &'a CentralPair,
    ring: S,
    f: LetterMap<'a, S::Elem>,
    f_inv: S::Elem,
}

impl<'a, S: Ring> Factorization<'a, S> {
    /// Fails with `NotInverse` unless `f_inv` is a two-sided inverse of
    /// `f(x_(a0 p))`.
    pub fn new(pair: &'a CentralPair, ring: S, f: impl Fn(&BimElement) -> S::Elem + 'a, f_inv: S::Elem) -> Result<Self> {
        pair.target()?;
        let fz = f(&pair.shifted_p());
        let one = ring.one();
        if ring.mul(&f_inv, &fz) != one || ring.mul(&fz, &f_inv) != one {
            return Err(Error::NotInverse(format!(
                "{} is not inverse to f(x_(a0 p)) = {}",
                ring.render(&f_inv),
                ring.render(&fz)
            )));
        }
        Ok(Factorization { pair, ring, f: Box::new(f), f_inv })
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    fn eval_with(&self, e: &TElement, letter: impl Fn(&BimElement) -> S::Elem) -> S::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (w, c) in e.terms() {
            let term = w.0.iter().fold(r.from_scalar(c), |t, m| r.mul(&t, &letter(m)));
            acc = r.add(&acc, &term);
        }
        acc
    }

    /// `f(e)` for `e` in `T(M, p)`.
    pub fn f(&self, e: &TElement) -> S::Elem {
        self.eval_with(e, &self.f)
    }

    fn tilde_letter(&self, m: &BimElement) -> S::Elem {
        self.ring.mul(&self.f_inv, &(self.f)(m))
    }

    /// `f~(e)` for `e` in `T(M, a0 p)`, letterwise on the normal form.
    pub fn eval(&self, e: &TElement) -> S::Elem {
        self.eval_with(e, |m| self.tilde_letter(m))
    }

    /// `f~` on an unnormalized expression, letterwise then multiplied out.
    pub fn eval_expr(&self, e: &Expr) -> S::Elem {
        let r = &self.ring;
        match e {
            Expr::Num(c) => r.from_scalar(c),
            Expr::Letter(m) => self.tilde_letter(m),
            Expr::Neg(x) => r.neg(&self.eval_expr(x)),
            Expr::Add(x, y) => r.add(&self.eval_expr(x), &self.eval_expr(y)),
            Expr::Sub(x, y) => r.sub(&self.eval_expr(x), &self.eval_expr(y)),
            Expr::Mul(x, y) => r.mul(&self.eval_expr(x), &self.eval_expr(y)),
            Expr::Pow(x, n) => r.pow(&self.eval_expr(x), *n),
        }
    }

    /// `f(alpha) f_inv^r` from the fraction form of `e`.
    pub fn eval_fraction(&self, e: &TElement) -> Result<S::Elem> {
        let fr = self.pair.fraction_form(e)?;
        Ok(self.ring.mul(&self.f(&fr.numerator), &self.ring.pow(&self.f_inv, fr.exponent)))
    }

    /// First sampled instance where `f` breaks a defining relation of `T(M, p)`.
    pub fn hom_defect<G: rand::Rng + ?Sized>(&self, rng: &mut G, samples: usize) -> Option<String> {
        let family = self.pair.source().family();
        let r = &self.ring;
        let f = &self.f;
        let p = family.p();
        if !r.is_one(&f(&p)) {
            return Some("f(x_p) != 1".into());
        }
        for _ in 0..samples {
            let (m, n) = (family.random_m(rng), family.random_m(rng));
            let (a, b) = (family.random_a(rng), family.random_b(rng));
            let show = |x: &BimElement| family.format_bim(x);
            let sum = family.bim_add(&m, &n).expect("same family");
            if r.add(&f(&m), &f(&n)) != f(&sum) {
                return Some(format!("additivity at m = {}, m' = {}", show(&m), show(&n)));
            }
            let ap = family.left_act(&a, &p).expect("same family");
            if r.mul(&f(&ap), &f(&m)) != f(&family.left_act(&a, &m).expect("same family")) {
                return Some(format!("left relation at a p = {}, m = {}", show(&ap), show(&m)));
            }
            let pb = family.right_act(&p, &b).expect("same family");
            if r.mul(&f(&m), &f(&pb)) != f(&family.right_act(&m, &b).expect("same family")) {
                return Some(format!("right relation at m = {}, p b = {}", show(&m), show(&pb)));
            }
        }
        None
    }
}

/// `f = phi` into `T(M, a0 p)` itself, with `f_inv = x_p`.
pub fn phi_factorization(pair: &CentralPair) -> Result<Factorization<'_, TRing>> {
    let target = pair.target()?.clone();
    let a0 = pair.a0().clone();
    let family = pair.source().family().clone();
    let t = target.clone();
    let f = move |m: &BimElement| t.generator(&family.left_act(&a0, m).expect("a0 lies in A")).expect("letter within budget");
    Factorization::new(pair, target, f, pair.inverse_in_target()?)
}

/// `f: T(M, p) -> Q` through the source oracle, with `f_inv = 1 / a0`.
pub fn rational_factorization(pair: &CentralPair) -> Result<Factorization<'_, crate::algebra::ScalarRing>> {
    let source = pair.source().clone();
    let f = move |m: &BimElement| match source.family_iso(&source.generator(m).expect("letter within budget")) {
        OracleElement::Scalar(q) => q,
        OracleElement::Kadic(q) => q.to_rational(),
        other => unreachable!("shifted families have rational oracles, got {other}"),
    };
    let inv = Scalar::one() / Scalar::from_integer(pair.a0_integer());
    Factorization::new(pair, crate::algebra::ScalarRing(BaseRing::Q), f, inv)
}

/// Every check of the shift construction on seeded samples: centrality,
/// `phi` a ring morphism, `phi(x_(a0 p)) x_p = 1`, fraction round trips, and
/// `f~ phi = f` for `f = phi` and for the rational embedding, with the two
/// evaluation orders of `f~` compared.
pub fn verify_shift(pair: &CentralPair, seed: u64, samples: usize) -> Result<Report> {
    let source = pair.source();
    let target = pair.target()?;
    let mut report = Report::new(format!("shift p -> a0 p: {}", source.family().label()), Some(seed));
    report.fact("T(M,p)", source.oracle_ring().name());
    report.fact("T(M,a0 p)", target.oracle_ring().name());
    report.absorb("centrality", check_central(pair, seed, samples)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151);

    let mut witness = None;
    for _ in 0..samples {
        let x = source.normalize(&source.random_expr(&mut rng))?;
        let y = source.normalize(&source.random_expr(&mut rng))?;
        let prod = pair.phi(&source.try_mul(&x, &y)?)? == target.try_mul(&pair.phi(&x)?, &pair.phi(&y)?)?;
        let sum = pair.phi(&source.try_add(&x, &y)?)? == target.try_add(&pair.phi(&x)?, &pair.phi(&y)?)?;
        if !(prod && sum) && witness.is_none() {
            witness = Some(format!("e1 = {}, e2 = {}", source.render(&x), source.render(&y)));
        }
    }
    let unital = pair.phi(&source.one())? == target.one();
    report.check("phi is a unital ring morphism", samples, witness.or((!unital).then(|| "phi(1) != 1".into())));

    let image = pair.phi(&pair.central()?)?;
    let inv = pair.inverse_in_target()?;
    let witness = [target.try_mul(&image, &inv)?, target.try_mul(&inv, &image)?]
        .into_iter()
        .find(|x| *x != target.one())
        .map(|x| format!("phi(x_(a0 p)) * x_p = {}", target.render(&x)));
    report.check("phi(x_(a0 p)) x_p = 1", 2, witness);

    let mut witness = None;
    for _ in 0..samples {
        let e = target.normalize(&target.random_expr(&mut rng))?;
        let fr = pair.fraction_form(&e)?;
        if pair.reassemble(&fr)? != e && witness.is_none() {
            witness = Some(format!("e = {}", target.render(&e)));
        }
    }
    report.check("fraction form reassembles", samples, witness);

    let phi_f = phi_factorization(pair)?;
    let rational = rational_factorization(pair)?;
    report.check("f = phi respects the relations", samples, phi_f.hom_defect(&mut rng, samples));
    report.check("f = oracle respects the relations", samples, rational.hom_defect(&mut rng, samples));
    let mut composite = None;
    let mut orders = None;
    for _ in 0..samples {
        let x = source.normalize(&source.random_expr(&mut rng))?;
        let px = pair.phi(&x)?;
        if (phi_f.eval(&px) != phi_f.f(&x) || rational.eval(&px) != rational.f(&x)) && composite.is_none() {
            composite = Some(format!("e = {}", source.render(&x)));
        }
        let expr = target.random_expr(&mut rng);
        let e = target.normalize(&expr)?;
        let agree = phi_f.eval_expr(&expr) == phi_f.eval(&e)
            && rational.eval_expr(&expr) == rational.eval(&e)
            && rational.eval_fraction(&e)? == rational.eval(&e);
        if !agree && orders.is_none() {
            orders = Some(format!("e = {}", expr.display(target.family())));
        }
    }
    report.check("f~ phi = f", samples, composite);
    report.check("evaluation orders of f~ agree", samples, orders);
    Ok(report)
}
