use std::sync::Arc;

use super::*;
use crate::algebra::{int, ScalarRing};
use crate::family::{Family, FamilyDescriptor};
use crate::matrix_loc::MatrixRing;

const Z: ScalarRing = ScalarRing(BaseRing::Z);

fn fam(json: &str) -> Arc<Family> {
    Arc::new(FamilyDescriptor::parse(json).unwrap().build().unwrap())
}

fn zm(rows: usize, cols: usize, v: &[i64]) -> Matrix<Scalar> {
    Matrix::new(rows, cols, v.iter().map(|&x| int(x)).collect()).unwrap()
}

fn cyclic(n: i64) -> Presentation<ScalarRing> {
    Presentation::new(Z, 1, zm(1, 1, &[n])).unwrap()
}

/// `N_A = N_B = Z`, `f = multiplication by d`.
fn multiplication_by(family: &str, d: i64) -> TripleModule {
    TripleModule::new(fam(family), Presentation::free(Z, 1), Presentation::free(Z, 1), vec![zm(1, 1, &[d])]).unwrap()
}

const REGULAR_Z: &str = r#"{"kind":"regular","ring":"Z"}"#;
const SCALED_2: &str = r#"{"kind":"scaled","k":2}"#;

#[test]
fn multiplication_fixture() {
    let n = multiplication_by(REGULAR_Z, 2);
    let l = build_l(&n, GSign::Minus).unwrap();
    assert_eq!(l.rels(), &Matrix::new(1, 2, vec![OracleElement::Scalar(int(2)), OracleElement::Scalar(int(-1))]).unwrap());
    assert_eq!(l_invariants(&l).unwrap(), (vec![], 1));
    let loc = localize_module(&n, 1, 50).unwrap();
    assert!(loc.report.passed, "{}", loc.report.render_text());
    assert_eq!(loc.free_rank, 1);
    assert!(loc.report.render_text().contains("relations: [[2, -1]]"));
}

#[test]
fn degenerate_fixtures() {
    // N_B = 0: L is T (x) N_A
    let n = TripleModule::new(fam(REGULAR_Z), cyclic(3), Presentation::free(Z, 0), vec![zm(0, 1, &[])]).unwrap();
    let loc = localize_module(&n, 1, 30).unwrap();
    assert_eq!((loc.factors.clone(), loc.free_rank), (vec![OracleElement::Scalar(int(3))], 0));
    assert!(loc.report.passed);
    // N_A = 0, N_B = Z: the relation -x_1 h = -h kills everything
    let n = TripleModule::new(fam(REGULAR_Z), Presentation::free(Z, 0), Presentation::free(Z, 1), vec![zm(1, 0, &[])]).unwrap();
    let loc = localize_module(&n, 1, 30).unwrap();
    assert_eq!((loc.factors.len(), loc.free_rank), (0, 0));
    assert!(loc.report.passed);
    // zero module
    let n = TripleModule::new(fam(REGULAR_Z), Presentation::free(Z, 0), Presentation::free(Z, 0), vec![zm(0, 0, &[])]).unwrap();
    let loc = localize_module(&n, 1, 10).unwrap();
    assert_eq!((loc.factors.len(), loc.free_rank), (0, 0));
    assert!(loc.report.passed);
}

#[test]
fn columns_and_the_ring_itself() {
    // the second column (M; B) with f the right action: rank 1
    let n = multiplication_by(REGULAR_Z, 1);
    assert_eq!(l_invariants(&build_l(&n, GSign::Minus).unwrap()).unwrap(), (vec![], 1));
    // R = (A; 0) + (M; B): N_A = A + M, N_B = B, f(1 (x) b) = (0, b); the
    // localization is M_2(T) = (T^2; T^2), so L has rank 2
    let r = TripleModule::new(fam(REGULAR_Z), Presentation::free(Z, 2), Presentation::free(Z, 1), vec![zm(1, 2, &[0, 1])]).unwrap();
    let loc = localize_module(&r, 2, 30).unwrap();
    assert_eq!(loc.free_rank, 2);
    assert!(loc.report.passed);
}

#[test]
fn scaled_fixture() {
    // relation (2, -x_1) = (2, -1/2) over Z[1/2]
    let n = multiplication_by(SCALED_2, 2);
    let l = build_l(&n, GSign::Minus).unwrap();
    assert_eq!(l.ring().render(l.rels().get(0, 1)), "-1/2");
    let loc = localize_module(&n, 3, 50).unwrap();
    assert_eq!((loc.factors.len(), loc.free_rank), (0, 1));
    assert!(loc.report.passed);
    // 3 is not a unit in Z[1/2]
    let n = TripleModule::new(fam(SCALED_2), cyclic(12), Presentation::free(Z, 0), vec![zm(0, 1, &[])]).unwrap();
    let (factors, rank) = l_invariants(&build_l(&n, GSign::Minus).unwrap()).unwrap();
    assert_eq!(rank, 0);
    assert_eq!(factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(), ["3"]);
}

#[test]
fn flipped_sign_is_detected() {
    let n = multiplication_by(REGULAR_Z, 2);
    let flipped = build_l(&n, GSign::Plus).unwrap();
    let report = verify_alpha_beta(&n, &flipped, 1, 20).unwrap();
    assert!(!report.passed);
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"alpha kills the relations of L"), "{failed:?}");
    // dropping the corner relation is caught too
    let dropped = Presentation::free(flipped.ring().clone(), 2);
    assert!(!verify_alpha_beta(&n, &dropped, 1, 20).unwrap().passed);
}

#[test]
fn polynomial_oracles() {
    let q = fam(r#"{"kind":"double","ring":"Q"}"#);
    let qr = ScalarRing(BaseRing::Q);
    let qm = |rows, cols, v: &[i64]| Matrix::new(rows, cols, v.iter().map(|&x| int(x)).collect()).unwrap();
    // the column (M; B): relations g1 = h, g2 = x h, so L = Q[x]
    let n = TripleModule::new(q.clone(), Presentation::free(qr, 2), Presentation::free(qr, 1), vec![qm(1, 2, &[1, 0]), qm(1, 2, &[0, 1])])
        .unwrap();
    let loc = localize_module(&n, 4, 40).unwrap();
    assert_eq!((loc.factors.len(), loc.free_rank), (0, 1));
    assert!(loc.report.passed);
    // g = h and 0 = x h: L = Q[x]/(x)
    let n = TripleModule::new(q, Presentation::free(qr, 1), Presentation::free(qr, 1), vec![qm(1, 1, &[1]), qm(1, 1, &[0])]).unwrap();
    let loc = localize_module(&n, 4, 40).unwrap();
    assert_eq!(loc.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(), ["x"]);
    assert_eq!(loc.free_rank, 0);
    assert!(loc.report.passed);
}

#[test]
fn double_over_z_is_unsupported() {
    let family = fam(r#"{"kind":"double","ring":"Z"}"#);
    let n = TripleModule::new(family, Presentation::free(Z, 1), Presentation::free(Z, 1), vec![zm(1, 1, &[1]), zm(1, 1, &[0])]).unwrap();
    assert!(matches!(build_l(&n, GSign::Minus), Err(crate::Error::Unsupported(_))));
}

#[test]
fn random_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for json in [REGULAR_Z, SCALED_2, r#"{"kind":"double","ring":"Q"}"#, r#"{"kind":"regular","ring":"Q"}"#] {
        for i in 0..6 {
            let n = TripleModule::random(fam(json), &mut rng, 3, 10).unwrap();
            let loc = localize_module(&n, i, 20).unwrap();
            assert!(loc.report.passed, "{}\n{}", n.to_json(), loc.report.render_text());
        }
    }
}

#[test]
fn localization_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for json in [REGULAR_Z, SCALED_2, r#"{"kind":"double","ring":"Q"}"#] {
        for _ in 0..5 {
            let n1 = TripleModule::random(fam(json), &mut rng, 2, 6).unwrap();
            let n2 = TripleModule::random(fam(json), &mut rng, 2, 6).unwrap();
            assert_eq!(additivity_defect(&n1, &n2).unwrap(), None);
        }
    }
    // Z/2 and Z/3 combine to the single factor 6
    let n1 = TripleModule::new(fam(REGULAR_Z), cyclic(2), Presentation::free(Z, 0), vec![zm(0, 1, &[])]).unwrap();
    let n2 = TripleModule::new(fam(REGULAR_Z), cyclic(3), Presentation::free(Z, 0), vec![zm(0, 1, &[])]).unwrap();
    let sum = build_l(&n1.direct_sum(&n2).unwrap(), GSign::Minus).unwrap();
    assert_eq!(l_invariants(&sum).unwrap(), (vec![OracleElement::Scalar(int(6))], 0));
}

#[test]
fn matrices_act_on_the_column() {
    let n = multiplication_by(REGULAR_Z, 2);
    let loc = localize_module(&n, 1, 5).unwrap();
    let mat = MatrixRing::new(TRing::from_arc(n.family().clone()));
    let l1 = vec![OracleElement::Scalar(int(1)), OracleElement::Scalar(int(0))];
    let l2 = vec![OracleElement::Scalar(int(0)), OracleElement::Scalar(int(5))];
    let (a, b) = loc.column_action(mat.t(), &mat.one(), &l1, &l2);
    assert_eq!((a, b), (l1.clone(), l2.clone()));
    let (a, b) = loc.column_action(mat.t(), &mat.unit(1, 2), &l1, &l2);
    assert_eq!((a, b.iter().all(|e| *e == OracleElement::Scalar(int(0)))), (l2, true));
}
