//! Closed-form models of `T` for the shipped families and the isomorphisms
//! into them: `x_m -> m` (regular), `x_(a,b) -> a + b x` (double),
//! `x_n -> n/k` (scaled), `x_(w(x)v) -> wv` (tensor-free) and
//! `x_(a, w1(x)w2) -> a + w1 x w2` (hnn-free).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{TElement, TWord};
use crate::algebra::free::accumulate;
use crate::algebra::matrix::Matrix;
use crate::algebra::smith::Smith;
use crate::algebra::{
    alphabet, BaseRing, EuclideanRing, FreeAlgebra, FreeAlgebraElement, KadicFraction, KadicRing, PolyRing, PolynomialElement,
    Ring, Scalar, ScalarRing, Word,
};
use crate::error::{Error, Result};
use crate::family::{BimElement, Family, TensorTerms};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleRing {
    Scalar(ScalarRing),
    Poly(PolyRing),
    Kadic(KadicRing),
    Free(FreeAlgebra),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleElement {
    Scalar(Scalar),
    Poly(PolynomialElement),
    Kadic(KadicFraction),
    Free(FreeAlgebraElement),
}

impl fmt::Display for OracleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleElement::Scalar(c) => write!(f, "{c}"),
            OracleElement::Poly(p) => write!(f, "{p}"),
            OracleElement::Kadic(x) => write!(f, "{x}"),
            OracleElement::Free(e) => {
                let ring = FreeAlgebra::new(BaseRing::Q, e.alphabet().clone()).expect("alphabet of a valid ring");
                write!(f, "{}", ring.render(e))
            }
        }
    }
}

impl OracleRing {
    pub fn of(family: &Family) -> OracleRing {
        match family {
            Family::Regular(r) => OracleRing::Scalar(ScalarRing(*r)),
            Family::Double(r) => OracleRing::Poly(PolyRing::new(*r)),
            Family::Scaled(k) => OracleRing::Kadic(KadicRing::new(k.clone()).expect("scaled base is at least 2")),
            Family::TensorFree { left, right } => {
                let names: Vec<&String> = left.alphabet().iter().chain(right.alphabet().iter()).collect();
                OracleRing::Free(FreeAlgebra::new(BaseRing::Q, alphabet(&names)).expect("disjoint alphabets"))
            }
            Family::HnnFree(a) => {
                let mut names: Vec<&str> = a.alphabet().iter().map(String::as_str).collect();
                names.push(crate::family::HNN_VARIABLE);
                OracleRing::Free(FreeAlgebra::new(BaseRing::Q, alphabet(&names)).expect("reserved name is unused"))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            OracleRing::Scalar(r) => r.0.to_string(),
            OracleRing::Poly(r) => format!("{}[x]", r.base),
            OracleRing::Kadic(r) => format!("Z[1/{}]", r.base()),
            OracleRing::Free(a) => format!("Q<{}>", a.alphabet().join(",")),
        }
    }
}

macro_rules! dispatch {
    ($self:ident, $x:ident, $y:ident, $op:ident) => {
        match ($self, $x, $y) {
            (OracleRing::Scalar(r), OracleElement::Scalar(a), OracleElement::Scalar(b)) => OracleElement::Scalar(r.$op(a, b)),
            (OracleRing::Poly(r), OracleElement::Poly(a), OracleElement::Poly(b)) => OracleElement::Poly(r.$op(a, b)),
            (OracleRing::Kadic(r), OracleElement::Kadic(a), OracleElement::Kadic(b)) => OracleElement::Kadic(r.$op(a, b)),
            (OracleRing::Free(r), OracleElement::Free(a), OracleElement::Free(b)) => OracleElement::Free(r.$op(a, b)),
            _ => panic!("oracle operands from different rings"),
        }
    };
}

impl Ring for OracleRing {
    type Elem = OracleElement;

    fn zero(&self) -> OracleElement {
        self.from_scalar(&Scalar::zero())
    }
    fn one(&self) -> OracleElement {
        self.from_scalar(&Scalar::one())
    }
    fn from_scalar(&self, c: &Scalar) -> OracleElement {
        match self {
            OracleRing::Scalar(r) => OracleElement::Scalar(r.from_scalar(c)),
            OracleRing::Poly(r) => OracleElement::Poly(r.from_scalar(c)),
            OracleRing::Kadic(r) => OracleElement::Kadic(r.from_scalar(c)),
            OracleRing::Free(r) => OracleElement::Free(r.from_scalar(c)),
        }
    }
    fn add(&self, x: &OracleElement, y: &OracleElement) -> OracleElement {
        dispatch!(self, x, y, add)
    }
    fn neg(&self, x: &OracleElement) -> OracleElement {
        match (self, x) {
            (OracleRing::Scalar(r), OracleElement::Scalar(a)) => OracleElement::Scalar(r.neg(a)),
            (OracleRing::Poly(r), OracleElement::Poly(a)) => OracleElement::Poly(r.neg(a)),
            (OracleRing::Kadic(r), OracleElement::Kadic(a)) => OracleElement::Kadic(r.neg(a)),
            (OracleRing::Free(r), OracleElement::Free(a)) => OracleElement::Free(r.neg(a)),
            _ => panic!("oracle operand from a different ring"),
        }
    }
    fn mul(&self, x: &OracleElement, y: &OracleElement) -> OracleElement {
        dispatch!(self, x, y, mul)
    }
    fn render(&self, x: &OracleElement) -> String {
        x.to_string()
    }
}

macro_rules! euclid {
    ($self:ident, $r:ident => $scalar:expr, $poly:expr, $kadic:expr) => {
        match $self {
            OracleRing::Scalar($r) => $scalar,
            OracleRing::Poly($r) => $poly,
            OracleRing::Kadic($r) => $kadic,
            OracleRing::Free(_) => panic!("free algebras are not Euclidean"),
        }
    };
}

fn smith_via<R: EuclideanRing>(
    ring: &R,
    m: &Matrix<OracleElement>,
    down: impl Fn(&OracleElement) -> R::Elem,
    up: impl Fn(&R::Elem) -> OracleElement,
) -> Smith<OracleElement> {
    let s = ring.smith(&m.map(down));
    Smith { u: s.u.map(&up), d: s.d.map(&up), v: s.v.map(&up), rank: s.rank }
}

impl OracleElement {
    fn scalar(&self) -> &Scalar {
        match self {
            OracleElement::Scalar(c) => c,
            _ => panic!("expected a scalar oracle element"),
        }
    }
    fn poly(&self) -> &PolynomialElement {
        match self {
            OracleElement::Poly(p) => p,
            _ => panic!("expected a polynomial oracle element"),
        }
    }
    fn kadic(&self) -> &KadicFraction {
        match self {
            OracleElement::Kadic(x) => x,
            _ => panic!("expected a k-adic oracle element"),
        }
    }
}

impl EuclideanRing for OracleRing {
    fn size(&self, x: &OracleElement) -> BigUint {
        euclid!(self, r => r.size(x.scalar()), r.size(x.poly()), r.size(x.kadic()))
    }

    fn div_rem(&self, x: &OracleElement, y: &OracleElement) -> (OracleElement, OracleElement) {
        euclid!(self, r => {
            let (q, m) = r.div_rem(x.scalar(), y.scalar());
            (OracleElement::Scalar(q), OracleElement::Scalar(m))
        }, {
            let (q, m) = r.div_rem(x.poly(), y.poly());
            (OracleElement::Poly(q), OracleElement::Poly(m))
        }, {
            let (q, m) = r.div_rem(x.kadic(), y.kadic());
            (OracleElement::Kadic(q), OracleElement::Kadic(m))
        })
    }

    fn normalize(&self, x: &OracleElement) -> (OracleElement, OracleElement) {
        euclid!(self, r => {
            let (u, n) = r.normalize(x.scalar());
            (OracleElement::Scalar(u), OracleElement::Scalar(n))
        }, {
            let (u, n) = r.normalize(x.poly());
            (OracleElement::Poly(u), OracleElement::Poly(n))
        }, {
            let (u, n) = r.normalize(x.kadic());
            (OracleElement::Kadic(u), OracleElement::Kadic(n))
        })
    }

    fn check_euclidean(&self) -> Result<()> {
        match self {
            OracleRing::Scalar(r) => r.check_euclidean(),
            OracleRing::Poly(r) => r.check_euclidean(),
            OracleRing::Kadic(r) => r.check_euclidean(),
            OracleRing::Free(a) => Err(Error::Unsupported(format!(
                "{} is not a Euclidean ring",
                OracleRing::Free(a.clone()).name()
            ))),
        }
    }

    fn smith(&self, m: &Matrix<OracleElement>) -> Smith<OracleElement> {
        euclid!(self, r => smith_via(r, m, |x| x.scalar().clone(), |x| OracleElement::Scalar(x.clone())),
            smith_via(r, m, |x| x.poly().clone(), |x| OracleElement::Poly(x.clone())),
            smith_via(r, m, |x| x.kadic().clone(), |x| OracleElement::Kadic(x.clone())))
    }
}

/// Image of the single letter `x_m`, linear in `m`.
pub(super) fn letter_image(family: &Family, ring: &OracleRing, m: &BimElement) -> OracleElement {
    match (family, ring, m) {
        (Family::Regular(_), _, BimElement::Scalar(a)) => OracleElement::Scalar(a.clone()),
        (Family::Double(_), _, BimElement::Pair(a, b)) => {
            OracleElement::Poly(PolynomialElement::new(vec![a.clone(), b.clone()]))
        }
        (Family::Scaled(_), OracleRing::Kadic(r), BimElement::Scalar(n)) => OracleElement::Kadic(r.elem(n.to_integer(), 1)),
        (Family::TensorFree { left, .. }, OracleRing::Free(o), BimElement::Tensor(t)) => {
            let shift = left.alphabet().len() as u32;
            OracleElement::Free(o.element(t.iter().map(|((w, v), c)| {
                let mut word = w.0.clone();
                word.extend(v.0.iter().map(|g| g + shift));
                (Word(word), c.clone())
            })))
        }
        (Family::HnnFree(a), OracleRing::Free(o), BimElement::Hnn(x, t)) => {
            let var = a.alphabet().len() as u32;
            let head = x.iter().map(|(w, c)| (w.clone(), c.clone()));
            let tail = t.iter().map(|((w1, w2), c)| {
                let mut word = w1.0.clone();
                word.push(var);
                word.extend_from_slice(&w2.0);
                (Word(word), c.clone())
            });
            OracleElement::Free(o.element(head.chain(tail)))
        }
        _ => unreachable!("letter {m:?} does not belong to {}", family.label()),
    }
}

pub(super) fn image(family: &Family, e: &TElement) -> OracleElement {
    let ring = OracleRing::of(family);
    let mut acc = ring.zero();
    for (w, c) in &e.terms {
        let mut term = ring.from_scalar(c);
        for m in &w.0 {
            term = ring.mul(&term, &letter_image(family, &ring, m));
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

fn hnn_letter(w1: Word, w2: Word) -> BimElement {
    BimElement::Hnn(BTreeMap::new(), TensorTerms::from([((w1, w2), Scalar::one())]))
}

/// Builds the normal form whose image is `o` without running the rewriter.
pub(super) fn preimage(family: &Family, o: &OracleElement) -> Result<BTreeMap<TWord, Scalar>> {
    let mut out = BTreeMap::new();
    match (family, o) {
        (Family::Regular(r), OracleElement::Scalar(c)) => {
            r.check(c)?;
            accumulate(&mut out, TWord::default(), c.clone());
        }
        (Family::Double(_), OracleElement::Poly(p)) => {
            let x = BimElement::Pair(Scalar::zero(), Scalar::one());
            for (n, c) in p.coeffs().iter().enumerate() {
                accumulate(&mut out, TWord(vec![x.clone(); n]), c.clone());
            }
        }
        (Family::Scaled(k), OracleElement::Kadic(q)) => {
            if q.base() != k {
                return Err(Error::FamilyMismatch);
            }
            let n = Scalar::from_integer(q.numerator().clone());
            match q.exponent() {
                0 => accumulate(&mut out, TWord::default(), n),
                r => {
                    let mut w = vec![BimElement::Scalar(n)];
                    w.extend(std::iter::repeat_n(BimElement::Scalar(Scalar::one()), r as usize - 1));
                    accumulate(&mut out, TWord(w), Scalar::one());
                }
            }
        }
        (Family::TensorFree { left, .. }, OracleElement::Free(e)) => {
            let shift = left.alphabet().len() as u32;
            for (w, c) in e.terms() {
                // maximal blocks s...s u...u
                let mut letters = Vec::new();
                let mut rest = &w.0[..];
                while !rest.is_empty() {
                    let a_len = rest.iter().take_while(|&&g| g < shift).count();
                    let b_len = rest[a_len..].iter().take_while(|&&g| g >= shift).count();
                    let a = Word(rest[..a_len].to_vec());
                    let b = Word(rest[a_len..a_len + b_len].iter().map(|g| g - shift).collect());
                    letters.push(BimElement::Tensor(TensorTerms::from([((a, b), Scalar::one())])));
                    rest = &rest[a_len + b_len..];
                }
                accumulate(&mut out, TWord(letters), c.clone());
            }
        }
        (Family::HnnFree(a), OracleElement::Free(e)) => {
            let var = a.alphabet().len() as u32;
            for (w, c) in e.terms() {
                let pieces: Vec<&[u32]> = w.0.split(|&g| g == var).collect();
                let letters = if pieces.len() == 1 {
                    if w.is_empty() {
                        Vec::new()
                    } else {
                        vec![BimElement::Hnn(BTreeMap::from([(w.clone(), Scalar::one())]), TensorTerms::new())]
                    }
                } else {
                    // u0 x u1 x ... x un -> (0, u0(x)1) ... (0, u_(n-1)(x)un)
                    let n = pieces.len() - 1;
                    (0..n)
                        .map(|i| {
                            let tail = if i + 1 == n { Word(pieces[n].to_vec()) } else { Word::empty() };
                            hnn_letter(Word(pieces[i].to_vec()), tail)
                        })
                        .collect()
                };
                accumulate(&mut out, TWord(letters), c.clone());
            }
        }
        _ => return Err(Error::FamilyMismatch),
    }
    Ok(out)
}
