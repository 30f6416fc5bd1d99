use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{int, Matrix, Presentation, Scalar, ScalarRing, BaseRing};
use crate::family::tests::all_families;
use crate::family::FamilyDescriptor;

fn fam(json: &str) -> Arc<Family> {
    Arc::new(FamilyDescriptor::parse(json).unwrap().build().unwrap())
}

fn regular_z() -> Arc<Family> {
    fam(r#"{"kind":"regular","ring":"Z"}"#)
}

fn sc(n: i64) -> RingElement {
    RingElement::Scalar(int(n))
}

fn zm(rows: usize, cols: usize, v: &[i64]) -> Matrix<Scalar> {
    Matrix::new(rows, cols, v.iter().map(|&x| int(x)).collect()).unwrap()
}

const Z: ScalarRing = ScalarRing(BaseRing::Z);

/// `N_A = N_B = Z`, `f = multiplication by d`.
fn multiplication_by(d: i64) -> TripleModule {
    TripleModule::new(regular_z(), Presentation::free(Z, 1), Presentation::free(Z, 1), vec![zm(1, 1, &[d])]).unwrap()
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn tri_mul_examples() {
    let r = TriangularRing::new(regular_z());
    let x = r.element(sc(1), BimElement::Scalar(int(2)), sc(3)).unwrap();
    let y = r.element(sc(4), BimElement::Scalar(int(5)), sc(6)).unwrap();
    assert_eq!(r.tri_mul(&x, &y).unwrap(), r.element(sc(4), BimElement::Scalar(int(17)), sc(18)).unwrap());
    assert_eq!(r.tri_mul(&x, &r.one()).unwrap(), x);
    let c = r.corner(BimElement::Scalar(int(7)));
    assert_eq!(r.tri_mul(&c, &c).unwrap(), r.zero());
    let other = TriangularRing::new(fam(r#"{"kind":"double","ring":"Z"}"#));
    assert_eq!(other.tri_mul(&x, &x), Err(Error::FamilyMismatch));
}

#[test]
fn sigma_examples() {
    let f = regular_z();
    let s = SigmaMorphism::of(&f);
    assert_eq!(sigma_apply(&f, &s, &sc(1)).unwrap(), QColumn { m: f.p(), b: sc(0) });
    assert_eq!(sigma_apply(&f, &s, &sc(0)).unwrap(), QColumn { m: f.zero_m(), b: sc(0) });
    let f = fam(r#"{"kind":"scaled","k":2}"#);
    let s = SigmaMorphism::of(&f);
    assert_eq!(sigma_apply(&f, &s, &sc(3)).unwrap().m, BimElement::Scalar(int(6)));
}

#[test]
fn ring_axioms_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for f in all_families() {
        let r = TriangularRing::new(Arc::new(f));
        for _ in 0..150 {
            let (x, y, z) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
            assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
            assert_eq!(r.mul(&x, &r.one()), x);
            assert_eq!(r.mul(&r.one(), &x), x);
            assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
            // columns: (a,m,b) <-> ((a;0),(m;b)) respects left multiplication
            let (p, q) = r.columns(&y);
            let prod = r.mul(&x, &y);
            assert_eq!(r.from_columns(&r.act_p(&x, &p), &r.act_q(&x, &q).unwrap()), prod);
        }
    }
}

#[test]
fn triple_action_examples() {
    let t = multiplication_by(4);
    let r = TriangularRing::new(regular_z());
    let x = r.element(sc(2), BimElement::Scalar(int(3)), sc(5)).unwrap();
    // (a,m,b)(x,y) = (ax + d m y, by)
    assert_eq!(t.triple_action(&x, &ints(&[7]), &ints(&[11])).unwrap(), (ints(&[2 * 7 + 4 * 3 * 11]), ints(&[55])));
    assert_eq!(t.triple_action(&r.one(), &ints(&[7]), &ints(&[11])).unwrap(), (ints(&[7]), ints(&[11])));
    let c = r.corner(BimElement::Scalar(int(3)));
    assert_eq!(t.triple_action(&c, &ints(&[7]), &ints(&[11])).unwrap(), (ints(&[132]), ints(&[0])));
    assert!(matches!(t.triple_action(&c, &ints(&[7, 1]), &ints(&[11])), Err(Error::DimensionMismatch(_))));
}

#[test]
fn ill_defined_f_is_rejected() {
    // N_B = Z/2, N_A = Z: f(1 (x) h) = 1 would need 2 = 0 in Z
    let nb = Presentation::new(Z, 1, zm(1, 1, &[2])).unwrap();
    let bad = TripleModule::new(regular_z(), Presentation::free(Z, 1), nb.clone(), vec![zm(1, 1, &[1])]);
    assert!(matches!(bad, Err(Error::IllDefined(_))));
    // into N_A = Z/4, h -> 2 is fine
    let na = Presentation::new(Z, 1, zm(1, 1, &[4])).unwrap();
    assert!(TripleModule::new(regular_z(), na, nb, vec![zm(1, 1, &[2])]).is_ok());
}

fn supported_families() -> Vec<Arc<Family>> {
    [
        r#"{"kind":"regular","ring":"Z"}"#,
        r#"{"kind":"regular","ring":"Q"}"#,
        r#"{"kind":"scaled","k":2}"#,
        r#"{"kind":"double","ring":"Z"}"#,
        r#"{"kind":"double","ring":"Q"}"#,
    ]
    .iter()
    .map(|j| fam(j))
    .collect()
}

#[test]
fn random_triples_are_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for f in supported_families() {
        let r = TriangularRing::new(f.clone());
        for _ in 0..15 {
            let t = TripleModule::random(f.clone(), &mut rng, 3, 10).unwrap();
            let column = ColumnModule::from_triple(&t).unwrap();
            let reduced = column.module().reduce().unwrap();
            for _ in 0..10 {
                let (x, y) = (r.random(&mut rng), r.random(&mut rng));
                let v: Vec<Scalar> = (0..column.module().gens()).map(|_| f.random_coefficient(&mut rng)).collect();
                let lhs = column.act(&r.mul(&x, &y), &v).unwrap();
                let rhs = column.act(&x, &column.act(&y, &v).unwrap()).unwrap();
                assert!(reduced.equivalent(&lhs, &rhs));
                // the column action agrees with the triple formula
                let na = t.na().gens();
                let (nx, ny) = t.triple_action(&x, &v[..na], &v[na..]).unwrap();
                assert_eq!(column.act(&x, &v).unwrap(), [nx, ny].concat());
            }
        }
    }
}

#[test]
fn roundtrip_examples() {
    let t = multiplication_by(3);
    let rt = module_roundtrip(&t).unwrap();
    assert_eq!(rt.triple.na().gens(), 2);
    // N_A = 0: the recovered f is zero modulo relations
    let t = TripleModule::new(regular_z(), Presentation::free(Z, 0), Presentation::free(Z, 2), vec![zm(2, 0, &[])]).unwrap();
    let rt = module_roundtrip(&t).unwrap();
    let na = rt.triple.na().reduce().unwrap();
    assert_eq!(na.invariants(), (vec![], 0));
    // N_B = 0
    let na = Presentation::new(Z, 1, zm(1, 1, &[5])).unwrap();
    let t = TripleModule::new(regular_z(), na, Presentation::free(Z, 0), vec![zm(0, 1, &[])]).unwrap();
    let rt = module_roundtrip(&t).unwrap();
    assert_eq!(rt.triple.na().reduce().unwrap().invariants(), (vec![int(5)], 0));
    assert_eq!(rt.triple.nb().reduce().unwrap().invariants(), (vec![], 0));
}

#[test]
fn roundtrip_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for f in supported_families() {
        for _ in 0..15 {
            let t = TripleModule::random(f.clone(), &mut rng, 4, 10).unwrap();
            module_roundtrip(&t).unwrap();
        }
    }
}

#[test]
fn lift_dependence_is_detected() {
    // a corner that is nonzero on the N_A part
    let t = multiplication_by(1);
    let mut column = ColumnModule::from_triple(&t).unwrap();
    column.corners[0] = zm(2, 2, &[1, 0, 1, 0]);
    assert!(matches!(column.to_triple(), Err(Error::IllDefined(_))));
}

#[test]
fn json_round_trip() {
    let json = r#"{"family":{"kind":"regular","ring":"Z"},"NA":{"gens":1,"rels":[[3]]},"NB":{"gens":0},"f":{}}"#;
    let t = TripleModule::from_json(json).unwrap();
    assert_eq!(t.na().reduce().unwrap().invariants(), (vec![int(3)], 0));
    assert_eq!(TripleModule::from_json(&t.to_json()).unwrap(), t);

    let json = r#"{"family":{"kind":"double","ring":"Q"},"NA":{"gens":1},"NB":{"gens":1},"f":{"(0,1)":[["1/2"]]}}"#;
    let t = TripleModule::from_json(json).unwrap();
    assert_eq!(t.f(1), &Matrix::new(1, 1, vec![crate::algebra::ratio(1, 2)]).unwrap());
    assert_eq!(t.f(0), &zm(1, 1, &[0]));
    assert_eq!(TripleModule::from_json(&t.to_json()).unwrap(), t);

    for bad in [
        r#"{"family":{"kind":"regular","ring":"Z"},"NA":{"gens":1,"rels":[[1,2]]},"NB":{"gens":0}}"#,
        r#"{"family":{"kind":"regular","ring":"Z"},"NA":{"gens":1},"NB":{"gens":0},"extra":1}"#,
        r#"{"family":{"kind":"regular","ring":"Z"},"NA":{"gens":1},"NB":{"gens":1},"f":{"2":[[1]]}}"#,
        r#"{"family":{"kind":"regular","ring":"Z"},"NA":{"gens":1,"rels":[["1/2"]]},"NB":{"gens":0}}"#,
    ] {
        assert!(matches!(TripleModule::from_json(bad), Err(Error::Schema(_))), "{bad}");
    }
    let free = r#"{"family":{"kind":"tensor-free","A_gens":["s"],"B_gens":["u"]},"NA":{"gens":1},"NB":{"gens":0}}"#;
    assert!(matches!(TripleModule::from_json(free), Err(Error::Unsupported(_))));
}

#[test]
fn rendered_elements_parse_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for f in all_families() {
        let r = TriangularRing::new(Arc::new(f));
        for _ in 0..50 {
            let x = r.random(&mut rng);
            assert_eq!(r.parse(&r.render(&x)).unwrap(), x, "{}", r.render(&x));
        }
    }
    let r = TriangularRing::new(regular_z());
    assert_eq!(r.parse("3; 5; 7").unwrap(), r.element(sc(3), BimElement::Scalar(int(5)), sc(7)).unwrap());
    assert!(matches!(r.parse("3; 5"), Err(Error::Schema(_))));
}
