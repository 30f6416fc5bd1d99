//! Seeded property checks over `T` and the two suites run by `verify`:
//! `paper` (fixed fixtures with known answers) and `random` (the same
//! properties on seeded random input).

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, Matrix, Presentation, Ring, ScalarRing, BaseRing};
use crate::error::{Error, Result};
use crate::family::{BimElement, Family, FamilyDescriptor, RingElement, Rules};
use crate::fraction::{verify_shift, CentralPair};
use crate::matrix_loc::verify_sigma_inverting;
use crate::module_loc::{build_l, l_invariants, localize_module, verify_alpha_beta, GSign};
use crate::report::Report;
use crate::triangular::TripleModule;
use crate::tring::{Equality, TRing};

/// Families exercised by the suites, as descriptor JSON.
pub const SUITE_FAMILIES: [&str; 8] = [
    r#"{"kind":"regular","ring":"Z"}"#,
    r#"{"kind":"regular","ring":"Q"}"#,
    r#"{"kind":"double","ring":"Z"}"#,
    r#"{"kind":"double","ring":"Q"}"#,
    r#"{"kind":"tensor-free","A_gens":["s","t"],"B_gens":["u"]}"#,
    r#"{"kind":"hnn-free","gens":["s","t"]}"#,
    r#"{"kind":"scaled","k":2}"#,
    r#"{"kind":"scaled","k":6}"#,
];

/// Families whose modules can be localized, as descriptor JSON.
pub const MODULE_FAMILIES: [&str; 3] =
    [r#"{"kind":"regular","ring":"Z"}"#, r#"{"kind":"scaled","k":2}"#, r#"{"kind":"double","ring":"Q"}"#];

fn family(json: &str) -> Arc<Family> {
    Arc::new(FamilyDescriptor::parse(json).and_then(|d| d.build()).expect("built-in descriptor"))
}

/// The four defining relations on `samples` seeded instances each.
pub fn check_relations(t: &TRing, seed: u64, samples: usize) -> Result<Report> {
    let f = t.family().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("relations: {}", f.label()), Some(seed));
    let mut witness: [Option<String>; 4] = Default::default();
    let show = |m: &BimElement| f.format_bim(m);
    for _ in 0..samples {
        let (m, m2) = (f.random_m(&mut rng), f.random_m(&mut rng));
        let (a, b) = (f.random_a(&mut rng), f.random_b(&mut rng));
        let x = |m: &BimElement| t.generator(m);
        if witness[0].is_none() && t.try_add(&x(&m)?, &x(&m2)?)? != x(&f.bim_add(&m, &m2)?)? {
            witness[0] = Some(format!("m = {}, m' = {}", show(&m), show(&m2)));
        }
        let ap = f.left_act(&a, &f.p())?;
        if witness[1].is_none() && t.try_mul(&x(&ap)?, &x(&m)?)? != x(&f.left_act(&a, &m)?)? {
            witness[1] = Some(format!("ap = {}, m = {}", show(&ap), show(&m)));
        }
        let pb = f.right_act(&f.p(), &b)?;
        if witness[2].is_none() && t.try_mul(&x(&m)?, &x(&pb)?)? != x(&f.right_act(&m, &b)?)? {
            witness[2] = Some(format!("m = {}, pb = {}", show(&m), show(&pb)));
        }
        // x_p = 1, seen through a random multiple
        if witness[3].is_none() {
            let y = t.normalize(&t.random_expr(&mut rng))?;
            if t.try_mul(&x(&f.p())?, &y)? != y {
                witness[3] = Some(format!("x_p * ({}) != itself", t.render(&y)));
            }
        }
    }
    let [plus, left, right, id] = witness;
    report.check("x_m + x_m' = x_(m+m')", samples, plus);
    report.check("x_(ap) x_m = x_(am)", samples, left);
    report.check("x_m x_(pb) = x_(mb)", samples, right);
    report.check("x_p = 1", samples, id);
    Ok(report)
}

/// The isomorphism onto the oracle ring: additive, multiplicative, unital,
/// and equality of normal forms agreeing with equality of images. Half of
/// the pairs are equal by construction (`e` against `e + z - z`).
pub fn check_oracle(t: &TRing, seed: u64, samples: usize) -> Result<Report> {
    let o = t.oracle_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("oracle: {}", t.family().label()), Some(seed));
    report.fact("T", o.name());
    let (mut hom, mut eq) = (None, None);
    for i in 0..samples {
        let ex = t.random_expr(&mut rng);
        let ey = if i % 2 == 0 {
            let z = t.random_expr(&mut rng);
            ex.clone().add(z.clone()).sub(z)
        } else {
            t.random_expr(&mut rng)
        };
        let (x, y) = (t.normalize(&ex)?, t.normalize(&ey)?);
        let (ix, iy) = (t.family_iso(&x), t.family_iso(&y));
        let ok = t.family_iso(&t.try_mul(&x, &y)?) == o.mul(&ix, &iy) && t.family_iso(&t.try_add(&x, &y)?) == o.add(&ix, &iy);
        if !ok && hom.is_none() {
            hom = Some(format!("e1 = {}, e2 = {}", t.render(&x), t.render(&y)));
        }
        let decided = t.compare(&ex, &ey);
        if decided == Equality::Unknown {
            return Err(Error::BudgetExhausted { budget: t.budget() });
        }
        if (decided == Equality::Equal) != (ix == iy) && eq.is_none() {
            eq = Some(format!("e1 = {}, e2 = {}", ex.display(t.family()), ey.display(t.family())));
        }
    }
    let unital = t.family_iso(&t.one()) == o.one();
    report.check("image is a unital ring morphism", samples, hom.or((!unital).then(|| "image of 1".into())));
    report.check("normal-form equality agrees with the oracle", samples, eq);
    Ok(report)
}

/// `(family, expression, oracle value)` with the values worked out by hand.
pub const NORMALIZE_FIXTURES: [(&str, &str, &str); 17] = [
    (SUITE_FAMILIES[0], "x[3]*x[5]", "15"),
    (SUITE_FAMILIES[0], "x[1]", "1"),
    (SUITE_FAMILIES[0], "x[2]*x[-1] + x[2]", "0"),
    (SUITE_FAMILIES[1], "x[1/2]*x[4]", "2"),
    (SUITE_FAMILIES[2], "x[(2,3)]*x[(0,1)]", "2x+3x^2"),
    (SUITE_FAMILIES[2], "x[(1,0)]", "1"),
    (SUITE_FAMILIES[3], "x[(1/2,0)]*x[(0,2)]", "x"),
    (SUITE_FAMILIES[3], "x[(0,1)]^2 - x[(0,1)]*x[(0,1)]", "0"),
    (SUITE_FAMILIES[4], "x[t(1,1)]", "1"),
    (SUITE_FAMILIES[4], "x[t(s,u)]*x[t(t,1)]", "s*u*t"),
    (SUITE_FAMILIES[4], "x[t(s,1)]*x[t(1,u)] - x[t(s,u)]", "0"),
    (SUITE_FAMILIES[5], "x[h(1)]", "1"),
    (SUITE_FAMILIES[5], "x[h(s)]*x[h(t)]", "s*t"),
    (SUITE_FAMILIES[5], "x[h(s,s)]*x[h(1,s)]", "s*x*s*x*s"),
    (SUITE_FAMILIES[6], "x[3]*x[5]", "15/4"),
    (SUITE_FAMILIES[6], "x[2]", "1"),
    (SUITE_FAMILIES[6], "x[4]*x[1]", "1"),
];

fn normalize_fixtures(budget: usize, rules: Rules) -> Result<Report> {
    let mut report = Report::new("normal forms", None);
    for (json, text, expected) in NORMALIZE_FIXTURES {
        let t = TRing::from_arc(family(json)).with_budget(budget).with_rules(rules);
        let nf = t.parse(text)?;
        let value = t.family_iso(&nf);
        let witness = if value.to_string() != expected {
            Some(format!("got {value}, expected {expected}"))
        } else {
            // the normal form must be the canonical one for its value
            let canonical = t.oracle_preimage(&value)?;
            (canonical != nf).then(|| format!("normal form {}, expected {}", t.render(&nf), t.render(&canonical)))
        };
        report.check(format!("{}: {text}", t.family().label()), 1, witness);
    }
    Ok(report)
}

fn zm(rows: usize, cols: usize, v: &[i64]) -> Matrix<crate::algebra::Scalar> {
    Matrix::new(rows, cols, v.iter().map(|&x| int(x)).collect()).expect("fixture shape")
}

const Z: ScalarRing = ScalarRing(BaseRing::Z);

/// The module fixtures: name, triple, expected factors (rendered) and rank.
pub fn module_fixtures() -> Vec<(&'static str, TripleModule, Vec<&'static str>, usize)> {
    let regular = family(MODULE_FAMILIES[0]);
    let scaled = family(MODULE_FAMILIES[1]);
    let free = |n| Presentation::free(Z, n);
    let cyclic = |n| Presentation::new(Z, 1, zm(1, 1, &[n])).expect("one generator");
    let build = |f: &Arc<Family>, na, nb, blocks| TripleModule::new(f.clone(), na, nb, blocks).expect("fixture is well defined");
    vec![
        ("f = 2", build(&regular, free(1), free(1), vec![zm(1, 1, &[2])]), vec![], 1),
        ("N_B = 0, N_A = Z/3", build(&regular, cyclic(3), free(0), vec![zm(0, 1, &[])]), vec!["3"], 0),
        ("N_A = 0, N_B = Z", build(&regular, free(0), free(1), vec![zm(1, 0, &[])]), vec![], 0),
        ("column (M; B)", build(&regular, free(1), free(1), vec![zm(1, 1, &[1])]), vec![], 1),
        ("R itself", build(&regular, free(2), free(1), vec![zm(1, 2, &[0, 1])]), vec![], 2),
        ("scaled, f = 2", build(&scaled, free(1), free(1), vec![zm(1, 1, &[2])]), vec![], 1),
    ]
}

fn module_suite(seed: u64, samples: usize) -> Result<Report> {
    let mut report = Report::new("module localization", Some(seed));
    for (name, n, factors, rank) in module_fixtures() {
        let loc = localize_module(&n, seed, samples)?;
        let got: Vec<String> = loc.factors.iter().map(|f| f.to_string()).collect();
        let witness = (got != factors || loc.free_rank != rank)
            .then(|| format!("factors {got:?} rank {}, expected {factors:?} rank {rank}", loc.free_rank));
        report.check(format!("{name}: invariants"), 1, witness);
        report.absorb(name, loc.report);
    }
    // the sign-flipped map must be rejected
    let (_, n, _, _) = module_fixtures().swap_remove(0);
    let flipped = verify_alpha_beta(&n, &build_l(&n, GSign::Plus)?, seed, samples)?;
    report.check("flipped sign is rejected", 1, flipped.passed.then(|| "alpha/beta accepted +t x_m".into()));
    Ok(report)
}

fn shift_pairs(budget: usize, rules: Rules) -> Result<Vec<CentralPair>> {
    let sc = |n: i64| RingElement::Scalar(int(n));
    let regular = TRing::from_arc(family(SUITE_FAMILIES[0])).with_budget(budget).with_rules(rules);
    let scaled = TRing::from_arc(family(SUITE_FAMILIES[6])).with_budget(budget).with_rules(rules);
    Ok(vec![CentralPair::new(&regular, sc(2), sc(2))?, CentralPair::new(&scaled, sc(3), sc(3))?])
}

/// Budget exhaustion aborts the suite; any other error fails the section.
fn section(report: &mut Report, name: &str, run: impl FnOnce() -> Result<Report>) -> Result<()> {
    match run() {
        Ok(r) => report.absorb(name, r),
        Err(e @ Error::BudgetExhausted { .. }) => return Err(e),
        Err(e) => report.check(name, 1, Some(e.to_string())),
    }
    Ok(())
}

/// Fixed fixtures: normal forms for every family, sigma-inverting on every
/// family, the shift for regular-Z (a0 = 2), and the module fixtures.
/// `rules` other than the default turn the suite into a negative control.
pub fn paper_suite(seed: u64, budget: usize, rules: Rules) -> Result<Report> {
    let mut report = Report::new("verify --suite paper", Some(seed));
    section(&mut report, "normal forms", || normalize_fixtures(budget, rules))?;
    for json in SUITE_FAMILIES {
        let t = TRing::from_arc(family(json)).with_budget(budget).with_rules(rules);
        let name = format!("sigma {}", t.family().label());
        section(&mut report, &name, || verify_sigma_inverting(&t, seed, 50))?;
    }
    section(&mut report, "shift regular-Z a0=2", || verify_shift(&shift_pairs(budget, rules)?[0], seed, 50))?;
    section(&mut report, "modules", || module_suite(seed, 30))?;
    Ok(report)
}

/// Sizes of the random suite.
#[derive(Clone, Copy, Debug)]
pub struct RandomSize {
    pub samples: usize,
    pub modules: usize,
}

impl Default for RandomSize {
    fn default() -> Self {
        RandomSize { samples: 200, modules: 5 }
    }
}

/// Seeded property suites over every family.
pub fn random_suite(seed: u64, budget: usize, size: RandomSize) -> Result<Report> {
    let mut report = Report::new("verify --suite random", Some(seed));
    for (i, json) in SUITE_FAMILIES.iter().enumerate() {
        let t = TRing::from_arc(family(json)).with_budget(budget);
        let label = t.family().label();
        let s = seed.wrapping_add(i as u64);
        section(&mut report, &format!("relations {label}"), || check_relations(&t, s, size.samples))?;
        section(&mut report, &format!("oracle {label}"), || check_oracle(&t, s, size.samples))?;
        section(&mut report, &format!("sigma {label}"), || verify_sigma_inverting(&t, s, size.samples))?;
    }
    for pair in shift_pairs(budget, Rules::default())? {
        let label = pair.source().family().label();
        section(&mut report, &format!("shift {label}"), || verify_shift(&pair, seed, size.samples))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for json in MODULE_FAMILIES {
        let f = family(json);
        for i in 0..size.modules {
            let n = TripleModule::random(f.clone(), &mut rng, 4, 10)?;
            section(&mut report, &format!("module {} #{i}", f.label()), || {
                Ok(localize_module(&n, seed, size.samples.min(100))?.report)
            })?;
        }
    }
    Ok(report)
}

/// `true` when `(factors, rank)` of `L(n)` match.
pub fn invariants_match(n: &TripleModule, factors: &[&str], rank: usize) -> Result<bool> {
    let (got, r) = l_invariants(&build_l(n, GSign::Minus)?)?;
    Ok(r == rank && got.iter().map(|f| f.to_string()).eq(factors.iter().map(|s| s.to_string())))
}
