use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{int, Ring};

pub(crate) fn all_families() -> Vec<Family> {
    [
        r#"{"kind":"regular","ring":"Z"}"#,
        r#"{"kind":"regular","ring":"Q"}"#,
        r#"{"kind":"double","ring":"Z"}"#,
        r#"{"kind":"double","ring":"Q"}"#,
        r#"{"kind":"scaled","k":2}"#,
        r#"{"kind":"scaled","k":6}"#,
        r#"{"kind":"tensor-free","A_gens":["s","t"],"B_gens":["u"]}"#,
        r#"{"kind":"hnn-free","gens":["s","t"]}"#,
    ]
    .iter()
    .map(|j| FamilyDescriptor::parse(j).unwrap().build().unwrap())
    .collect()
}

fn fam(json: &str) -> Family {
    FamilyDescriptor::parse(json).unwrap().build().unwrap()
}

fn sc(n: i64) -> RingElement {
    RingElement::Scalar(int(n))
}

#[test]
fn apply_examples() {
    let f = fam(r#"{"kind":"regular","ring":"Z"}"#);
    assert_eq!(f.bim_apply(&sc(2), &BimElement::Scalar(int(3)), &sc(5)).unwrap(), BimElement::Scalar(int(30)));

    let f = fam(r#"{"kind":"double","ring":"Q"}"#);
    let m = BimElement::Pair(int(4), int(-1));
    assert_eq!(f.bim_apply(&sc(2), &m, &sc(3)).unwrap(), BimElement::Pair(int(24), int(-6)));

    let f = fam(r#"{"kind":"tensor-free","A_gens":["s"],"B_gens":["u"]}"#);
    let s = f.parse_a("s").unwrap();
    let u = f.parse_b("u").unwrap();
    assert_eq!(f.bim_apply(&s, &f.p(), &u).unwrap(), f.parse_letter("t(s,u)").unwrap());
    // B-elements do not act on the left
    assert!(f.bim_apply(&u, &f.p(), &u).is_err());
}

#[test]
fn add_examples() {
    let f = fam(r#"{"kind":"scaled","k":2}"#);
    let m = BimElement::Scalar(int(3));
    assert_eq!(f.bim_add(&m, &f.zero_m()).unwrap(), m);
    assert_eq!(f.bim_add(&m, &BimElement::Scalar(int(5))).unwrap(), BimElement::Scalar(int(8)));
    let f = fam(r#"{"kind":"double","ring":"Z"}"#);
    let sum = f.bim_add(&BimElement::Pair(int(1), int(2)), &BimElement::Pair(int(3), int(4))).unwrap();
    assert_eq!(sum, BimElement::Pair(int(4), int(6)));
    assert!(f.bim_add(&sum, &BimElement::Scalar(int(1))).is_err());
}

#[test]
fn factor_examples() {
    let f = fam(r#"{"kind":"regular","ring":"Z"}"#);
    let fac = f.factor_p(&BimElement::Scalar(int(7)));
    assert_eq!((fac.left, fac.right), (Some(sc(7)), Some(sc(7))));

    let f = fam(r#"{"kind":"scaled","k":2}"#);
    let fac = f.factor_p(&BimElement::Scalar(int(6)));
    assert_eq!((fac.left, fac.right), (Some(sc(3)), Some(sc(3))));
    let fac = f.factor_p(&BimElement::Scalar(int(3)));
    assert_eq!((fac.left, fac.right), (None, None));

    let f = fam(r#"{"kind":"double","ring":"Q"}"#);
    assert_eq!(f.factor_p(&BimElement::Pair(int(5), int(0))).left, Some(sc(5)));
    let fac = f.factor_p(&BimElement::Pair(int(0), int(5)));
    assert_eq!((fac.left, fac.right), (None, None));
    assert_eq!(fac.split.unwrap().residual, BimElement::Pair(int(0), int(5)));
}

#[test]
fn basis_examples() {
    assert_eq!(fam(r#"{"kind":"regular","ring":"Z"}"#).basis(), Some(vec![BimElement::Scalar(int(1))]));
    assert_eq!(
        fam(r#"{"kind":"double","ring":"Z"}"#).basis(),
        Some(vec![BimElement::Pair(int(1), int(0)), BimElement::Pair(int(0), int(1))])
    );
    assert_eq!(fam(r#"{"kind":"tensor-free","A_gens":["s"],"B_gens":["u"]}"#).basis(), None);
}

#[test]
fn bimodule_axioms_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in all_families() {
        let (ar, br) = (f.a_ring(), f.b_ring());
        for _ in 0..200 {
            let (a, a2) = (f.random_a(&mut rng), f.random_a(&mut rng));
            let (b, b2) = (f.random_b(&mut rng), f.random_b(&mut rng));
            let (m, m2) = (f.random_m(&mut rng), f.random_m(&mut rng));
            f.check_m(&m).unwrap();
            let lhs = f.left_act(&ar.mul(&a, &a2), &m).unwrap();
            assert_eq!(lhs, f.left_act(&a, &f.left_act(&a2, &m).unwrap()).unwrap());
            let lhs = f.right_act(&m, &br.mul(&b, &b2)).unwrap();
            assert_eq!(lhs, f.right_act(&f.right_act(&m, &b).unwrap(), &b2).unwrap());
            let lhs = f.right_act(&f.left_act(&a, &m).unwrap(), &b).unwrap();
            assert_eq!(lhs, f.bim_apply(&a, &m, &b).unwrap());
            let sum = f.bim_add(&m, &m2).unwrap();
            let lhs = f.bim_apply(&a, &sum, &b).unwrap();
            let rhs = f.bim_add(&f.bim_apply(&a, &m, &b).unwrap(), &f.bim_apply(&a, &m2, &b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = f.left_act(&ar.add(&a, &a2), &m).unwrap();
            let rhs = f.bim_add(&f.left_act(&a, &m).unwrap(), &f.left_act(&a2, &m).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn factorization_sound_and_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in all_families() {
        for _ in 0..300 {
            let m = f.random_m(&mut rng);
            let fac = f.factor_p(&m);
            assert!(f.factorization_holds(&m, &fac));
            match (&f, &m) {
                // a factor exists iff k divides m
                (Family::Scaled(k), BimElement::Scalar(n)) => {
                    let divisible = (n.to_integer() % k).is_zero();
                    assert_eq!(fac.left.is_some(), divisible);
                    assert_eq!(fac.right.is_some(), divisible);
                }
                (Family::Regular(_), _) => assert!(fac.left.is_some() && fac.right.is_some()),
                (Family::Double(_), BimElement::Pair(_, b)) => {
                    let split = fac.split.expect("double always splits");
                    assert_eq!(split.residual, BimElement::Pair(Scalar::zero(), b.clone()));
                    assert_eq!(fac.left.is_some(), b.is_zero());
                }
                _ => {}
            }
        }
    }
}

#[test]
fn scaled_is_commutative() {
    let f = fam(r#"{"kind":"scaled","k":2}"#);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let m = f.random_m(&mut rng);
        let c = f.random_a(&mut rng);
        assert_eq!(f.left_act(&c, &m).unwrap(), f.right_act(&m, &c).unwrap());
    }
}
