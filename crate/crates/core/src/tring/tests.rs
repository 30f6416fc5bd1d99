use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{int, ratio, KadicRing, PolyRing, PolynomialElement};
use crate::family::tests::all_families;
use crate::family::FamilyDescriptor;

fn ring(json: &str) -> TRing {
    TRing::new(FamilyDescriptor::parse(json).unwrap().build().unwrap())
}

fn scaled2() -> TRing {
    ring(r#"{"kind":"scaled","k":2}"#)
}

#[test]
fn p_is_one() {
    for t in all_families().into_iter().map(TRing::new) {
        let p = t.family().p();
        assert_eq!(t.generator(&p).unwrap(), t.one(), "{}", t.family().label());
    }
}

#[test]
fn scaled_examples() {
    let t = scaled2();
    let x3 = t.parse("x[3]").unwrap();
    assert_eq!(t.render(&x3), "x[3]");
    assert_eq!(t.family_iso(&x3), OracleElement::Kadic(KadicRing::new(2.into()).unwrap().elem(3.into(), 1)));
    assert_eq!(t.parse("x[4]").unwrap(), t.constant(&int(2)));
    assert_eq!(t.rho_a(&RingElement::Scalar(int(3))).unwrap(), t.constant(&int(3)));
    // both sides are 9/4
    assert_eq!(t.parse("x[3]*x[3]").unwrap(), t.parse("x[9]*x[1]").unwrap());
    assert_eq!(t.render(&t.parse("x[3]*x[3]").unwrap()), "x[9]*x[1]");
    assert_eq!(t.parse("2*x[1]").unwrap(), t.one());
    assert_eq!(t.parse("x[1] + x[1]").unwrap(), t.one());
    assert_eq!(t.parse("x[1]*x[1] + x[1]").unwrap(), t.parse("x[3]*x[1]").unwrap());
}

#[test]
fn regular_and_double_examples() {
    let t = ring(r#"{"kind":"regular","ring":"Z"}"#);
    assert_eq!(t.parse("x[2]*x[3]").unwrap(), t.constant(&int(6)));
    assert!(matches!(t.parse("1/2"), Err(Error::NotInRing { .. })));

    let t = ring(r#"{"kind":"double","ring":"Q"}"#);
    let e = t.parse("x[(2,3)]*x[(0,1)]").unwrap();
    let expect = PolynomialElement::new(vec![int(0), int(2), int(3)]);
    assert_eq!(t.family_iso(&e), OracleElement::Poly(expect));
    assert_eq!(t.render(&e), "2*x[(0,1)] + 3*x[(0,1)]^2");
    assert_ne!(t.parse("x[(0,1)]").unwrap(), t.one());
    assert_eq!(t.oracle_ring(), OracleRing::Poly(PolyRing::new(crate::algebra::BaseRing::Q)));
}

#[test]
fn free_examples() {
    let t = ring(r#"{"kind":"tensor-free","A_gens":["s"],"B_gens":["u"]}"#);
    let m = t.family().parse_letter("t(s,u)").unwrap();
    let e = t.rho_m(&m).unwrap();
    let s = t.rho_a(&t.family().parse_a("s").unwrap()).unwrap();
    let u = t.rho_b(&t.family().parse_b("u").unwrap()).unwrap();
    assert_eq!(e, t.try_mul(&s, &u).unwrap());
    assert_eq!(t.family_iso(&e).to_string(), "s*u");
    assert_ne!(t.try_mul(&s, &u).unwrap(), t.try_mul(&u, &s).unwrap());

    let t = ring(r#"{"kind":"hnn-free","gens":["s"]}"#);
    let e = t.parse("x[h(s,s)]*x[h(1,s)]").unwrap();
    assert_eq!(t.family_iso(&e).to_string(), "s*x*s*x*s");
    assert_eq!(t.render(&e), "x[h(s,1)]*x[h(s,s)]");
    assert_eq!(t.parse("x[h(s)]*x[h(1,1)]").unwrap(), t.parse("x[h(s,1)]").unwrap());
}

#[test]
fn budget_exhaustion() {
    let t = scaled2().with_budget(2);
    assert!(matches!(t.parse("x[3]*x[5]*x[7]*x[9]"), Err(Error::BudgetExhausted { budget: 2 })));
    let e = parse_expr("x[3]*x[5]*x[7]*x[9]", t.family()).unwrap();
    assert_eq!(t.compare(&e, &e), Equality::Unknown);
    assert_eq!(scaled2().compare(&e, &e), Equality::Equal);
}

#[test]
fn mixed_families_rejected() {
    let t = scaled2();
    let other = ring(r#"{"kind":"scaled","k":3}"#);
    assert!(matches!(t.try_add(&t.one(), &other.one()), Err(Error::FamilyMismatch)));
}

/// Checks run on every family over `n` random instances.
fn for_each_family(seed: u64, n: usize, mut check: impl FnMut(&TRing, &mut ChaCha8Rng)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in all_families().into_iter().map(TRing::new) {
        for _ in 0..n {
            check(&t, &mut rng);
        }
    }
}

#[test]
fn presentation_relations_hold() {
    for_each_family(1, 150, |t, rng| {
        let f = t.family().clone();
        let (m, m2) = (f.random_m(rng), f.random_m(rng));
        let (a, b) = (f.random_a(rng), f.random_b(rng));
        let x = |m: &BimElement| t.generator(m).unwrap();
        let sum = t.try_add(&x(&m), &x(&m2)).unwrap();
        assert_eq!(sum, x(&f.bim_add(&m, &m2).unwrap()));
        let ap = f.left_act(&a, &f.p()).unwrap();
        assert_eq!(t.try_mul(&x(&ap), &x(&m)).unwrap(), x(&f.left_act(&a, &m).unwrap()));
        let pb = f.right_act(&f.p(), &b).unwrap();
        assert_eq!(t.try_mul(&x(&m), &x(&pb)).unwrap(), x(&f.right_act(&m, &b).unwrap()));
    });
}

#[test]
fn rho_maps_are_ring_morphisms() {
    for_each_family(2, 100, |t, rng| {
        let f = t.family().clone();
        let (ar, br) = (f.a_ring(), f.b_ring());
        let (a, a2) = (f.random_a(rng), f.random_a(rng));
        let lhs = t.rho_a(&ar.mul(&a, &a2)).unwrap();
        assert_eq!(lhs, t.try_mul(&t.rho_a(&a).unwrap(), &t.rho_a(&a2).unwrap()).unwrap());
        let lhs = t.rho_a(&ar.add(&a, &a2)).unwrap();
        assert_eq!(lhs, t.try_add(&t.rho_a(&a).unwrap(), &t.rho_a(&a2).unwrap()).unwrap());
        let (b, b2) = (f.random_b(rng), f.random_b(rng));
        let lhs = t.rho_b(&br.mul(&b, &b2)).unwrap();
        assert_eq!(lhs, t.try_mul(&t.rho_b(&b).unwrap(), &t.rho_b(&b2).unwrap()).unwrap());
        assert_eq!(t.rho_a(&ar.one()).unwrap(), t.one());
        assert_eq!(t.rho_b(&br.one()).unwrap(), t.one());
    });
}

#[test]
fn oracle_is_a_faithful_morphism() {
    for_each_family(3, 100, |t, rng| {
        let o = t.oracle_ring();
        let x = t.normalize(&t.random_expr(rng)).unwrap();
        let y = t.normalize(&t.random_expr(rng)).unwrap();
        let (ix, iy) = (t.family_iso(&x), t.family_iso(&y));
        assert_eq!(t.family_iso(&t.try_mul(&x, &y).unwrap()), o.mul(&ix, &iy));
        assert_eq!(t.family_iso(&t.try_add(&x, &y).unwrap()), o.add(&ix, &iy));
        assert_eq!(x == y, ix == iy);
        // the normal form is the canonical preimage of its image
        assert_eq!(t.oracle_preimage(&ix).unwrap(), x, "{}", t.render(&x));
    });
}

#[test]
fn normal_forms_are_idempotent_and_print_back() {
    for_each_family(4, 100, |t, rng| {
        let x = t.normalize(&t.random_expr(rng)).unwrap();
        let again = t.from_raw(TRing::raw(&x).collect()).unwrap();
        assert_eq!(again, x);
        assert_eq!(t.parse(&t.render(&x)).unwrap(), x, "{}", t.render(&x));
    });
}

#[test]
fn expression_display_round_trips() {
    for_each_family(5, 50, |t, rng| {
        let e = t.random_expr(rng);
        let text = e.display(t.family());
        let parsed = parse_expr(&text, t.family()).unwrap();
        assert_eq!(t.normalize(&parsed).unwrap(), t.normalize(&e).unwrap(), "{text}");
    });
}

#[test]
fn corrupted_identity_breaks_p_equals_one() {
    let t = scaled2().with_rules(Rules { identity: false });
    assert_ne!(t.parse("x[2]").unwrap(), t.one());
    // relation (b) still holds: x_1 x_(p*1) = x_1
    assert_eq!(t.parse("x[1]*x[2]").unwrap(), t.parse("x[1]").unwrap());
    assert_eq!(t.parse("x[1] + x[1]").unwrap(), t.parse("x[2]").unwrap());
    assert_eq!(t.parse("x[1]*x[1]").unwrap().terms().len(), 1);
    let half = ratio(1, 2);
    assert!(scaled2().normalize(&Expr::Num(half)).is_err());
}
