//! Property tests for the exact arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::*;

fn small() -> impl Strategy<Value = i64> {
    -60i64..=60
}

fn rational() -> impl Strategy<Value = Scalar> {
    (small(), 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn poly() -> impl Strategy<Value = PolynomialElement> {
    prop::collection::vec(rational(), 0..5).prop_map(PolynomialElement::new)
}

fn int_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-100i64..=100, r * c)
            .prop_map(move |v| Matrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        let q = ScalarRing(BaseRing::Q);
        prop_assert_eq!(q.mul(&q.add(&a, &b), &c), q.add(&q.mul(&a, &c), &q.mul(&b, &c)));
        if !a.is_zero() {
            prop_assert!((a.clone() * (Scalar::one() / a)).is_one());
        }
    }

    #[test]
    fn kadic_values_match_rationals(k in 2i64..=12, n1 in small(), r1 in 0u32..4, n2 in small(), r2 in 0u32..4) {
        let ring = KadicRing::new(BigInt::from(k)).unwrap();
        let (x, y) = (ring.elem(BigInt::from(n1), r1), ring.elem(BigInt::from(n2), r2));
        let value = |e: &KadicFraction| e.to_rational();
        prop_assert_eq!(value(&x), ratio(n1, k.pow(r1)));
        prop_assert_eq!(value(&ring.mul(&x, &y)), value(&x) * value(&y));
        prop_assert_eq!(value(&ring.add(&x, &y)), value(&x) + value(&y));
        // equal values give equal representations
        let lifted = ring.elem(BigInt::from(n1) * BigInt::from(k), r1 + 1);
        prop_assert_eq!(lifted, x);
    }

    #[test]
    fn kadic_division_with_remainder(k in 2i64..=6, n1 in small(), r1 in 0u32..3, n2 in small(), r2 in 0u32..3) {
        let ring = KadicRing::new(BigInt::from(k)).unwrap();
        let (x, y) = (ring.elem(BigInt::from(n1), r1), ring.elem(BigInt::from(n2), r2));
        prop_assume!(!ring.is_zero(&y));
        let (q, r) = ring.div_rem(&x, &y);
        prop_assert_eq!(ring.add(&ring.mul(&q, &y), &r), x);
        prop_assert!(ring.is_zero(&r) || ring.size(&r) < ring.size(&y));
    }

    #[test]
    fn polynomial_ring_laws(f in poly(), g in poly(), h in poly()) {
        let ring = PolyRing::new(BaseRing::Q);
        prop_assert_eq!(ring.mul(&f, &g), ring.mul(&g, &f));
        prop_assert_eq!(ring.mul(&ring.mul(&f, &g), &h), ring.mul(&f, &ring.mul(&g, &h)));
        prop_assert_eq!(ring.mul(&f, &ring.add(&g, &h)), ring.add(&ring.mul(&f, &g), &ring.mul(&f, &h)));
        if !g.is_zero() {
            let (q, r) = ring.div_rem(&f, &g);
            prop_assert_eq!(ring.add(&ring.mul(&q, &g), &r), f);
            prop_assert!(r.degree().is_none_or(|d| Some(d) < g.degree()));
        }
    }

    #[test]
    fn free_algebra_is_associative(
        w in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), -3i64..=3), 1..4),
        v in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), -3i64..=3), 1..4),
        u in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), -3i64..=3), 1..4),
    ) {
        let a = FreeAlgebra::new(BaseRing::Q, alphabet(&["s", "t", "u"])).unwrap();
        let build = |terms: Vec<(Vec<u32>, i64)>| {
            a.sum(terms.iter().map(|(w, c)| {
                let word = w.iter().fold(Word::empty(), |acc, &g| acc.concat(&Word::letter(g)));
                a.scale(&int(*c), &a.word(word))
            }).collect::<Vec<_>>().iter())
        };
        let (x, y, z) = (build(w), build(v), build(u));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&x, &a.one()), x.clone());
        prop_assert_eq!(a.parse_element(&a.element_text(&x)).unwrap(), x);
    }

    #[test]
    fn smith_form_certificate(m in int_matrix(6)) {
        let s = smith_normal_form(&m);
        let z = IntegerRing;
        prop_assert_eq!(mat_mul(&z, &mat_mul(&z, &s.u, &m).unwrap(), &s.v).unwrap(), s.d.clone());
        prop_assert!(int_det(&s.u).abs().is_one());
        prop_assert!(int_det(&s.v).abs().is_one());
        let diag = s.diagonal();
        for (i, e) in diag.iter().enumerate() {
            prop_assert!(e.is_positive());
            if let Some(next) = diag.get(i + 1) {
                prop_assert!((next % e).is_zero());
            }
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative((n, x, y) in (1usize..=4).prop_flat_map(|n| (
        Just(n),
        prop::collection::vec(-9i64..=9, n * n),
        prop::collection::vec(-9i64..=9, n * n),
    ))) {
        let mk = |v: Vec<i64>| Matrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap();
        let (x, y) = (mk(x), mk(y));
        let xy = mat_mul(&IntegerRing, &x, &y).unwrap();
        prop_assert_eq!(int_det(&xy), int_det(&x) * int_det(&y));
    }
}
