//! Computable `(A, B)`-bimodules `M` with a distinguished element `p`.
//!
//! Five kinds ship: `regular` (`M = A = B`, `p = 1`), `double` (`M = A^2`,
//! `p = (1, 0)`), `scaled` (`M = A = B = Z`, `p = k`), `tensor-free`
//! (`M = A (x) B` for free algebras, `p = 1 (x) 1`) and `hnn-free`
//! (`M = A + A (x) A`, `p = (1, 0)`).

mod descriptor;
mod literal;
mod sample;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::free::accumulate;
use crate::algebra::{BaseRing, FreeAlgebra, FreeAlgebraElement, Ring, Scalar, ScalarRing, Word};
use crate::error::{Error, Result};

pub use descriptor::FamilyDescriptor;
pub(crate) use descriptor::HNN_VARIABLE;

/// Linear combination of pure tensors `w (x) v` of words.
pub type TensorTerms = BTreeMap<(Word, Word), Scalar>;

/// An element of `A` or `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    Scalar(Scalar),
    Free(FreeAlgebraElement),
}

impl RingElement {
    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            RingElement::Scalar(c) => Some(c),
            RingElement::Free(_) => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreeAlgebraElement> {
        match self {
            RingElement::Free(e) => Some(e),
            RingElement::Scalar(_) => None,
        }
    }
}

/// The coefficient rings `A` and `B`: `Z`, `Q`, or a free algebra over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseAlgebra {
    Scalar(ScalarRing),
    Free(FreeAlgebra),
}

impl BaseAlgebra {
    fn unwrap_scalar<'a>(&self, x: &'a RingElement) -> &'a Scalar {
        x.as_scalar().expect("scalar ring operand")
    }
    fn unwrap_free<'a>(&self, x: &'a RingElement) -> &'a FreeAlgebraElement {
        x.as_free().expect("free algebra operand")
    }

    /// Whether `x` is an element of this ring.
    pub fn contains(&self, x: &RingElement) -> bool {
        match (self, x) {
            (BaseAlgebra::Scalar(r), RingElement::Scalar(c)) => r.0.contains(c),
            (BaseAlgebra::Free(r), RingElement::Free(e)) => {
                e.alphabet() == r.alphabet()
                    && e.terms().keys().all(|w| w.0.iter().all(|&g| (g as usize) < r.alphabet().len()))
            }
            _ => false,
        }
    }
}

impl Ring for BaseAlgebra {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        match self {
            BaseAlgebra::Scalar(r) => RingElement::Scalar(r.zero()),
            BaseAlgebra::Free(r) => RingElement::Free(r.zero()),
        }
    }
    fn one(&self) -> RingElement {
        match self {
            BaseAlgebra::Scalar(r) => RingElement::Scalar(r.one()),
            BaseAlgebra::Free(r) => RingElement::Free(r.one()),
        }
    }
    fn from_scalar(&self, c: &Scalar) -> RingElement {
        match self {
            BaseAlgebra::Scalar(r) => RingElement::Scalar(r.from_scalar(c)),
            BaseAlgebra::Free(r) => RingElement::Free(r.from_scalar(c)),
        }
    }
    fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        match self {
            BaseAlgebra::Scalar(r) => RingElement::Scalar(r.add(self.unwrap_scalar(x), self.unwrap_scalar(y))),
            BaseAlgebra::Free(r) => RingElement::Free(r.add(self.unwrap_free(x), self.unwrap_free(y))),
        }
    }
    fn neg(&self, x: &RingElement) -> RingElement {
        match self {
            BaseAlgebra::Scalar(r) => RingElement::Scalar(r.neg(self.unwrap_scalar(x))),
            BaseAlgebra::Free(r) => RingElement::Free(r.neg(self.unwrap_free(x))),
        }
    }
    fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        match self {
            BaseAlgebra::Scalar(r) => RingElement::Scalar(r.mul(self.unwrap_scalar(x), self.unwrap_scalar(y))),
            BaseAlgebra::Free(r) => RingElement::Free(r.mul(self.unwrap_free(x), self.unwrap_free(y))),
        }
    }
    fn render(&self, x: &RingElement) -> String {
        match self {
            BaseAlgebra::Scalar(r) => r.render(self.unwrap_scalar(x)),
            BaseAlgebra::Free(r) => r.render(self.unwrap_free(x)),
        }
    }
}

/// An element of `M`, in canonical coordinates for its family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BimElement {
    /// `regular` and `scaled`.
    Scalar(Scalar),
    /// `double`: `(a1, a2)`.
    Pair(Scalar, Scalar),
    /// `tensor-free`.
    Tensor(TensorTerms),
    /// `hnn-free`: the `A` component and the `A (x) A` component.
    Hnn(BTreeMap<Word, Scalar>, TensorTerms),
}

/// `m = a * p + residual`-style decompositions of an element of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFactorization {
    /// `a` with `m = a * p`.
    pub left: Option<RingElement>,
    /// `b` with `m = p * b`.
    pub right: Option<RingElement>,
    /// `m = sum a_i * p * b_i + residual` with the residual in the declared
    /// complement of `ApB`.
    pub split: Option<Split>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub pairs: Vec<(RingElement, RingElement)>,
    pub residual: BimElement,
}

/// Which relations the normalizer may use. Dropping `identity` gives the
/// corrupted presentation used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rules {
    pub identity: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { identity: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Regular(BaseRing),
    Double(BaseRing),
    Scaled(BigInt),
    TensorFree { left: FreeAlgebra, right: FreeAlgebra },
    HnnFree(FreeAlgebra),
}

fn terms_of(e: &FreeAlgebraElement) -> &BTreeMap<Word, Scalar> {
    e.terms()
}

fn tensor_act(a: &BTreeMap<Word, Scalar>, t: &TensorTerms, b: &BTreeMap<Word, Scalar>) -> TensorTerms {
    let mut out = TensorTerms::new();
    for (wa, ca) in a {
        for ((w, v), c) in t {
            for (wb, cb) in b {
                accumulate(&mut out, (wa.concat(w), v.concat(wb)), ca * c * cb);
            }
        }
    }
    out
}

fn word_act(a: &BTreeMap<Word, Scalar>, x: &BTreeMap<Word, Scalar>, b: &BTreeMap<Word, Scalar>) -> BTreeMap<Word, Scalar> {
    let mut out = BTreeMap::new();
    for (wa, ca) in a {
        for (w, c) in x {
            for (wb, cb) in b {
                accumulate(&mut out, wa.concat(w).concat(wb), ca * c * cb);
            }
        }
    }
    out
}

fn add_maps<K: Ord + Clone>(x: &BTreeMap<K, Scalar>, y: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
    let mut out = x.clone();
    for (k, c) in y {
        accumulate(&mut out, k.clone(), c.clone());
    }
    out
}

fn scale_map<K: Ord + Clone>(c: &Scalar, x: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
    let mut out = BTreeMap::new();
    for (k, d) in x {
        accumulate(&mut out, k.clone(), c * d);
    }
    out
}

fn one_map<K: Ord>(k: K) -> BTreeMap<K, Scalar> {
    BTreeMap::from([(k, Scalar::one())])
}

impl Family {
    pub fn from_descriptor(d: &FamilyDescriptor) -> Result<Family> {
        d.build()
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor::of(self)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Regular(_) => "regular",
            Family::Double(_) => "double",
            Family::Scaled(_) => "scaled",
            Family::TensorFree { .. } => "tensor-free",
            Family::HnnFree(_) => "hnn-free",
        }
    }

    /// Short human-readable name, e.g. `scaled(k=2)`.
    pub fn label(&self) -> String {
        match self {
            Family::Regular(r) | Family::Double(r) => format!("{}-{r}", self.kind()),
            Family::Scaled(k) => format!("scaled(k={k})"),
            Family::TensorFree { left, right } => {
                format!("tensor-free(A=<{}>, B=<{}>)", left.alphabet().join(","), right.alphabet().join(","))
            }
            Family::HnnFree(a) => format!("hnn-free(A=<{}>)", a.alphabet().join(",")),
        }
    }

    pub fn a_ring(&self) -> BaseAlgebra {
        match self {
            Family::Regular(r) | Family::Double(r) => BaseAlgebra::Scalar(ScalarRing(*r)),
            Family::Scaled(_) => BaseAlgebra::Scalar(ScalarRing(BaseRing::Z)),
            Family::TensorFree { left, .. } => BaseAlgebra::Free(left.clone()),
            Family::HnnFree(a) => BaseAlgebra::Free(a.clone()),
        }
    }

    pub fn b_ring(&self) -> BaseAlgebra {
        match self {
            Family::TensorFree { right, .. } => BaseAlgebra::Free(right.clone()),
            _ => self.a_ring(),
        }
    }

    /// Central coefficient ring of `A`, `B` and `T`.
    pub fn coefficients(&self) -> BaseRing {
        match self {
            Family::Regular(r) | Family::Double(r) => *r,
            Family::Scaled(_) => BaseRing::Z,
            Family::TensorFree { .. } | Family::HnnFree(_) => BaseRing::Q,
        }
    }

    pub fn p(&self) -> BimElement {
        match self {
            Family::Regular(_) => BimElement::Scalar(Scalar::one()),
            Family::Double(_) => BimElement::Pair(Scalar::one(), Scalar::zero()),
            Family::Scaled(k) => BimElement::Scalar(Scalar::from_integer(k.clone())),
            Family::TensorFree { .. } => BimElement::Tensor(one_map((Word::empty(), Word::empty()))),
            Family::HnnFree(_) => BimElement::Hnn(one_map(Word::empty()), TensorTerms::new()),
        }
    }

    pub fn zero_m(&self) -> BimElement {
        match self {
            Family::Regular(_) | Family::Scaled(_) => BimElement::Scalar(Scalar::zero()),
            Family::Double(_) => BimElement::Pair(Scalar::zero(), Scalar::zero()),
            Family::TensorFree { .. } => BimElement::Tensor(TensorTerms::new()),
            Family::HnnFree(_) => BimElement::Hnn(BTreeMap::new(), TensorTerms::new()),
        }
    }

    /// Checks that `m` is a canonical element of this family's `M`.
    pub fn check_m(&self, m: &BimElement) -> Result<()> {
        let bad = || Error::NotInRing { value: format!("{m:?}"), ring: self.label() };
        fn words_ok<'a>(mut ws: impl Iterator<Item = &'a Word>, n: usize) -> bool {
            ws.all(|w| w.0.iter().all(|&g| (g as usize) < n))
        }
        let ok = match (self, m) {
            (Family::Regular(r), BimElement::Scalar(c)) => r.contains(c),
            (Family::Scaled(_), BimElement::Scalar(c)) => c.is_integer(),
            (Family::Double(r), BimElement::Pair(a, b)) => r.contains(a) && r.contains(b),
            (Family::TensorFree { left, right }, BimElement::Tensor(t)) => {
                t.values().all(|c| !c.is_zero())
                    && words_ok(t.keys().map(|(w, _)| w), left.alphabet().len())
                    && words_ok(t.keys().map(|(_, v)| v), right.alphabet().len())
            }
            (Family::HnnFree(a), BimElement::Hnn(x, t)) => {
                let n = a.alphabet().len();
                x.values().chain(t.values()).all(|c| !c.is_zero())
                    && words_ok(x.keys(), n)
                    && words_ok(t.keys().flat_map(|(w, v)| [w, v]), n)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(bad())
        }
    }

    pub fn bim_add(&self, m1: &BimElement, m2: &BimElement) -> Result<BimElement> {
        Ok(match (m1, m2) {
            (BimElement::Scalar(x), BimElement::Scalar(y)) => BimElement::Scalar(x + y),
            (BimElement::Pair(a, b), BimElement::Pair(c, d)) => BimElement::Pair(a + c, b + d),
            (BimElement::Tensor(x), BimElement::Tensor(y)) => BimElement::Tensor(add_maps(x, y)),
            (BimElement::Hnn(x, t), BimElement::Hnn(y, u)) => BimElement::Hnn(add_maps(x, y), add_maps(t, u)),
            _ => return Err(Error::FamilyMismatch),
        })
    }

    /// Multiplication by a central coefficient.
    pub fn bim_scale(&self, c: &Scalar, m: &BimElement) -> BimElement {
        match m {
            BimElement::Scalar(x) => BimElement::Scalar(c * x),
            BimElement::Pair(a, b) => BimElement::Pair(c * a, c * b),
            BimElement::Tensor(t) => BimElement::Tensor(scale_map(c, t)),
            BimElement::Hnn(x, t) => BimElement::Hnn(scale_map(c, x), scale_map(c, t)),
        }
    }

    pub fn bim_neg(&self, m: &BimElement) -> BimElement {
        self.bim_scale(&-Scalar::one(), m)
    }

    pub fn bim_is_zero(&self, m: &BimElement) -> bool {
        *m == self.zero_m()
    }

    /// `a * m * b`.
    pub fn bim_apply(&self, a: &RingElement, m: &BimElement, b: &RingElement) -> Result<BimElement> {
        if !self.a_ring().contains(a) || !self.b_ring().contains(b) {
            return Err(Error::FamilyMismatch);
        }
        Ok(match (self, m, a, b) {
            (Family::Regular(_) | Family::Scaled(_), BimElement::Scalar(x), RingElement::Scalar(a), RingElement::Scalar(b)) => {
                BimElement::Scalar(a * x * b)
            }
            (Family::Double(_), BimElement::Pair(x, y), RingElement::Scalar(a), RingElement::Scalar(b)) => {
                BimElement::Pair(a * x * b, a * y * b)
            }
            (Family::TensorFree { .. }, BimElement::Tensor(t), RingElement::Free(a), RingElement::Free(b)) => {
                BimElement::Tensor(tensor_act(terms_of(a), t, terms_of(b)))
            }
            (Family::HnnFree(_), BimElement::Hnn(x, t), RingElement::Free(a), RingElement::Free(b)) => {
                BimElement::Hnn(word_act(terms_of(a), x, terms_of(b)), tensor_act(terms_of(a), t, terms_of(b)))
            }
            _ => return Err(Error::FamilyMismatch),
        })
    }

    pub fn left_act(&self, a: &RingElement, m: &BimElement) -> Result<BimElement> {
        self.bim_apply(a, m, &self.b_ring().one())
    }

    pub fn right_act(&self, m: &BimElement, b: &RingElement) -> Result<BimElement> {
        self.bim_apply(&self.a_ring().one(), m, b)
    }

    /// Exact factorizations of `m` through `p`, each verified before return.
    pub fn factor_p(&self, m: &BimElement) -> PFactorization {
        let scalar = |c: &Scalar| RingElement::Scalar(c.clone());
        let fac = match (self, m) {
            (Family::Regular(r), BimElement::Scalar(a)) => PFactorization {
                left: Some(scalar(a)),
                right: Some(scalar(a)),
                split: Some(Split {
                    pairs: vec![(scalar(a), BaseAlgebra::Scalar(ScalarRing(*r)).one())],
                    residual: self.zero_m(),
                }),
            },
            (Family::Double(_), BimElement::Pair(a, b)) => {
                let f = b.is_zero().then(|| scalar(a));
                PFactorization {
                    left: f.clone(),
                    right: f,
                    split: Some(Split {
                        pairs: vec![(scalar(a), scalar(&Scalar::one()))],
                        residual: BimElement::Pair(Scalar::zero(), b.clone()),
                    }),
                }
            }
            (Family::Scaled(k), BimElement::Scalar(n)) => {
                let (q, r) = n.to_integer().div_rem(k);
                let f = r.is_zero().then(|| RingElement::Scalar(Scalar::from_integer(q)));
                PFactorization { left: f.clone(), right: f, split: None }
            }
            (Family::TensorFree { left, right }, BimElement::Tensor(t)) => {
                let pure_left = t.keys().all(|(_, v)| v.is_empty());
                let pure_right = t.keys().all(|(w, _)| w.is_empty());
                PFactorization {
                    left: pure_left.then(|| RingElement::Free(left.element(t.iter().map(|((w, _), c)| (w.clone(), c.clone()))))),
                    right: pure_right.then(|| RingElement::Free(right.element(t.iter().map(|((_, v), c)| (v.clone(), c.clone()))))),
                    split: Some(Split {
                        pairs: t
                            .iter()
                            .map(|((w, v), c)| {
                                (RingElement::Free(left.element([(w.clone(), c.clone())])), RingElement::Free(right.word(v.clone())))
                            })
                            .collect(),
                        residual: self.zero_m(),
                    }),
                }
            }
            (Family::HnnFree(a), BimElement::Hnn(x, t)) => {
                let head = RingElement::Free(a.element(x.iter().map(|(w, c)| (w.clone(), c.clone()))));
                let f = t.is_empty().then(|| head.clone());
                PFactorization {
                    left: f.clone(),
                    right: f,
                    split: Some(Split {
                        pairs: vec![(head, RingElement::Free(a.one()))],
                        residual: BimElement::Hnn(BTreeMap::new(), t.clone()),
                    }),
                }
            }
            _ => PFactorization { left: None, right: None, split: None },
        };
        assert!(self.factorization_holds(m, &fac), "p-factorization does not reproduce {m:?}");
        fac
    }

    /// Re-applies every factor in `fac` and compares with `m`.
    pub fn factorization_holds(&self, m: &BimElement, fac: &PFactorization) -> bool {
        let p = self.p();
        let left_ok = fac.left.as_ref().is_none_or(|a| self.left_act(a, &p).ok().as_ref() == Some(m));
        let right_ok = fac.right.as_ref().is_none_or(|b| self.right_act(&p, b).ok().as_ref() == Some(m));
        let split_ok = fac.split.as_ref().is_none_or(|s| {
            let mut acc = s.residual.clone();
            for (a, b) in &s.pairs {
                match self.bim_apply(a, &p, b).and_then(|x| self.bim_add(&acc, &x)) {
                    Ok(next) => acc = next,
                    Err(_) => return false,
                }
            }
            acc == *m
        });
        left_ok && right_ok && split_ok
    }

    /// Declared free basis of `M`, for families that have one.
    pub fn basis(&self) -> Option<Vec<BimElement>> {
        match self {
            Family::Regular(_) | Family::Scaled(_) => Some(vec![BimElement::Scalar(Scalar::one())]),
            Family::Double(_) => Some(vec![
                BimElement::Pair(Scalar::one(), Scalar::zero()),
                BimElement::Pair(Scalar::zero(), Scalar::one()),
            ]),
            Family::TensorFree { .. } | Family::HnnFree(_) => None,
        }
    }

    /// Coordinates of `m` in `basis()`.
    pub fn coordinates(&self, m: &BimElement) -> Option<Vec<Scalar>> {
        match (self, m) {
            (Family::Regular(_) | Family::Scaled(_), BimElement::Scalar(c)) => Some(vec![c.clone()]),
            (Family::Double(_), BimElement::Pair(a, b)) => Some(vec![a.clone(), b.clone()]),
            _ => None,
        }
    }

    // Normalizer hooks.

    /// Additive canonicalization of the letter `x_m`: a combination of
    /// irreducible letters, with `None` standing for the empty word.
    pub(crate) fn split_letter(&self, m: &BimElement, rules: Rules) -> Vec<(Scalar, Option<BimElement>)> {
        let p_or_one = |c: &Scalar| (c.clone(), (!rules.identity).then(|| self.p()));
        let mut out = Vec::new();
        match (self, m) {
            (Family::Regular(_), BimElement::Scalar(a)) => {
                if !a.is_zero() {
                    out.push(p_or_one(a));
                }
            }
            (Family::Double(_), BimElement::Pair(a, b)) => {
                if !a.is_zero() {
                    out.push(p_or_one(a));
                }
                if !b.is_zero() {
                    out.push((b.clone(), Some(BimElement::Pair(Scalar::zero(), Scalar::one()))));
                }
            }
            (Family::Scaled(k), BimElement::Scalar(n)) => {
                let n = n.to_integer();
                if n.is_zero() {
                } else if rules.identity && n.is_multiple_of(k) {
                    out.push((Scalar::from_integer(n / k), None));
                } else {
                    out.push((Scalar::one(), Some(m.clone())));
                }
            }
            (Family::TensorFree { .. }, BimElement::Tensor(t)) => {
                for ((w, v), c) in t {
                    if rules.identity && w.is_empty() && v.is_empty() {
                        out.push((c.clone(), None));
                    } else {
                        out.push((c.clone(), Some(BimElement::Tensor(one_map((w.clone(), v.clone()))))));
                    }
                }
            }
            (Family::HnnFree(_), BimElement::Hnn(x, t)) => {
                for (w, c) in x {
                    if rules.identity && w.is_empty() {
                        out.push((c.clone(), None));
                    } else {
                        out.push((c.clone(), Some(BimElement::Hnn(one_map(w.clone()), TensorTerms::new()))));
                    }
                }
                for (wv, c) in t {
                    out.push((c.clone(), Some(BimElement::Hnn(BTreeMap::new(), one_map(wv.clone())))));
                }
            }
            _ => unreachable!("letter {m:?} does not belong to {}", self.label()),
        }
        out
    }

    pub(crate) fn is_irreducible_letter(&self, m: &BimElement, rules: Rules) -> bool {
        let split = self.split_letter(m, rules);
        matches!(split.as_slice(), [(c, Some(l))] if c.is_one() && l == m)
    }

    /// Rewrites an adjacent pair of irreducible letters: relation (a), then
    /// relation (b), then the family's own completion rule.
    pub(crate) fn rewrite_pair(&self, l1: &BimElement, l2: &BimElement) -> Option<Vec<BimElement>> {
        if let Some(a) = self.factor_p(l1).left {
            return Some(vec![self.left_act(&a, l2).expect("letters of one family")]);
        }
        if let Some(b) = self.factor_p(l2).right {
            return Some(vec![self.right_act(l1, &b).expect("letters of one family")]);
        }
        if let (Family::HnnFree(_), BimElement::Hnn(x1, t1), BimElement::Hnn(x2, t2)) = (self, l1, l2) {
            // x_(0, w1(x)w2) x_(0, w1'(x)w2') = x_(0, w1(x)1) x_(0, w2w1'(x)w2')
            if x1.is_empty() && x2.is_empty() && t1.len() == 1 && t2.len() == 1 {
                let ((w1, w2), _) = t1.iter().next()?;
                let ((v1, v2), _) = t2.iter().next()?;
                if !w2.is_empty() {
                    return Some(vec![
                        BimElement::Hnn(BTreeMap::new(), one_map((w1.clone(), Word::empty()))),
                        BimElement::Hnn(BTreeMap::new(), one_map((w2.concat(v1), v2.clone()))),
                    ]);
                }
            }
        }
        None
    }
}

#[cfg(test)]
pub(crate) mod tests;
