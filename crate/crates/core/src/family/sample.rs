//! Seeded random elements for property checks.

use num_bigint::BigInt;
use rand::Rng;

use super::{BaseAlgebra, BimElement, Family, RingElement};
use crate::algebra::{BaseRing, FreeAlgebra, FreeAlgebraElement, Scalar, Word};

pub(crate) fn random_scalar<G: Rng + ?Sized>(rng: &mut G, ring: BaseRing) -> Scalar {
    let n = BigInt::from(rng.gen_range(-5i64..=5));
    match ring {
        BaseRing::Z => Scalar::from_integer(n),
        BaseRing::Q => Scalar::new(n, BigInt::from(rng.gen_range(1i64..=3))),
    }
}

fn nonzero_scalar<G: Rng + ?Sized>(rng: &mut G, ring: BaseRing) -> Scalar {
    loop {
        let c = random_scalar(rng, ring);
        if c != Scalar::from_integer(0.into()) {
            return c;
        }
    }
}

fn random_word<G: Rng + ?Sized>(rng: &mut G, gens: usize) -> Word {
    if gens == 0 {
        return Word::empty();
    }
    let len = rng.gen_range(0..=2);
    Word((0..len).map(|_| rng.gen_range(0..gens as u32)).collect())
}

fn random_free<G: Rng + ?Sized>(rng: &mut G, a: &FreeAlgebra) -> FreeAlgebraElement {
    let n = rng.gen_range(1..=3);
    a.element((0..n).map(|_| (random_word(rng, a.alphabet().len()), nonzero_scalar(rng, a.base()))))
}

fn random_ring_element<G: Rng + ?Sized>(rng: &mut G, ring: &BaseAlgebra) -> RingElement {
    match ring {
        BaseAlgebra::Scalar(r) => RingElement::Scalar(random_scalar(rng, r.0)),
        BaseAlgebra::Free(a) => RingElement::Free(random_free(rng, a)),
    }
}

impl Family {
    pub fn random_a<G: Rng + ?Sized>(&self, rng: &mut G) -> RingElement {
        random_ring_element(rng, &self.a_ring())
    }

    pub fn random_b<G: Rng + ?Sized>(&self, rng: &mut G) -> RingElement {
        random_ring_element(rng, &self.b_ring())
    }

    /// A random element of `M`. About a quarter of the draws are of the form
    /// `a*p*b`, so the relations (a), (b) and (id) get exercised.
    pub fn random_m<G: Rng + ?Sized>(&self, rng: &mut G) -> BimElement {
        if rng.gen_ratio(1, 4) {
            let (a, b) = (self.random_a(rng), self.random_b(rng));
            return self.bim_apply(&a, &self.p(), &b).expect("sampled from the family");
        }
        match self {
            Family::Regular(r) => BimElement::Scalar(random_scalar(rng, *r)),
            Family::Scaled(_) => BimElement::Scalar(Scalar::from_integer(BigInt::from(rng.gen_range(-12i64..=12)))),
            Family::Double(r) => BimElement::Pair(random_scalar(rng, *r), random_scalar(rng, *r)),
            Family::TensorFree { left, right } => {
                let n = rng.gen_range(1..=2);
                let mut m = self.zero_m();
                for _ in 0..n {
                    let t = BimElement::Tensor(super::one_map((
                        random_word(rng, left.alphabet().len()),
                        random_word(rng, right.alphabet().len()),
                    )));
                    let c = nonzero_scalar(rng, BaseRing::Q);
                    m = self.bim_add(&m, &self.bim_scale(&c, &t)).expect("same family");
                }
                m
            }
            Family::HnnFree(a) => {
                let gens = a.alphabet().len();
                let mut m = self.zero_m();
                if rng.gen_bool(0.5) {
                    let head = BimElement::Hnn(super::one_map(random_word(rng, gens)), Default::default());
                    m = self.bim_scale(&nonzero_scalar(rng, BaseRing::Q), &head);
                }
                for _ in 0..rng.gen_range(1..=2) {
                    let t = BimElement::Hnn(
                        Default::default(),
                        super::one_map((random_word(rng, gens), random_word(rng, gens))),
                    );
                    let c = nonzero_scalar(rng, BaseRing::Q);
                    m = self.bim_add(&m, &self.bim_scale(&c, &t)).expect("same family");
                }
                m
            }
        }
    }

    /// A random central coefficient.
    pub fn random_coefficient<G: Rng + ?Sized>(&self, rng: &mut G) -> Scalar {
        random_scalar(rng, self.coefficients())
    }
}
