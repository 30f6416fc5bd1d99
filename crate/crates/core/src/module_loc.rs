//! Localizing a left `R`-module `N = (N_A, N_B, f)`: `sigma^-1 N` is the
//! column `(L; L)` over `M_2(T)`, where `L` is the cokernel of
//!
//! ```text
//! T (x) M (x) N_B -> T (x) N_A (+) T (x) N_B,   t (x) m (x) n -> (t (x) f(m (x) n), -t x_m (x) n).
//! ```
//!
//! `L` is presented over `T` on generators `g_1..g_nA, h_1..h_nB`. The
//! isomorphism with `W = (T T) (x)_R N` is checked through explicit maps
//! `alpha: L -> W` and `beta: W -> L`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::matrix::{mat_mul, zeros};
use crate::algebra::presentation::{apply, hom_defect, identity_defect, Reduced};
use crate::algebra::{BaseRing, EuclideanRing, Matrix, PolynomialElement, Presentation, Ring, Scalar};
use crate::error::Result;
use crate::family::RingElement;
use crate::matrix_loc::Matrix2;
use crate::report::Report;
use crate::triangular::TripleModule;
use crate::tring::{OracleElement, OracleRing, TRing};

/// Sign of the `g` component of the defining map. `Minus` is the correct
/// one; `Plus` is kept as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GSign {
    Minus,
    Plus,
}

/// A module over `T` given by generators and relation rows.
pub type TPresentation = Presentation<OracleRing>;

/// `sigma^-1 N = (L; L)` with its certificate.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    pub l: TPresentation,
    pub factors: Vec<OracleElement>,
    pub free_rank: usize,
    /// `(T T) (x)_R N` on generators `u_g, u_h, v_g, v_h`.
    pub tensor: TPresentation,
    /// `L -> W`, one row per generator of `L`.
    pub alpha: Matrix<OracleElement>,
    /// `W -> L`, one row per generator of `W`.
    pub beta: Matrix<OracleElement>,
    pub report: Report,
}

impl LocalizedModule {
    /// `X (l1; l2)` for `X` in `M_2(T)`: the module structure on the column.
    pub fn column_action(
        &self,
        t: &TRing,
        x: &Matrix2,
        l1: &[OracleElement],
        l2: &[OracleElement],
    ) -> (Vec<OracleElement>, Vec<OracleElement>) {
        let ring = self.l.ring();
        let v = |e| t.family_iso(e);
        let (a, b, c, d) = (v(&x.t11), v(&x.t12), v(&x.t21), v(&x.t22));
        let comb = |p: &OracleElement, q: &OracleElement| {
            l1.iter().zip(l2).map(|(y, z)| ring.add(&ring.mul(p, y), &ring.mul(q, z))).collect()
        };
        (comb(&a, &b), comb(&c, &d))
    }
}

struct Setup {
    t: TRing,
    ring: OracleRing,
    na: usize,
    nb: usize,
}

impl Setup {
    fn new(n: &TripleModule) -> Result<Self> {
        let t = TRing::from_arc(n.family().clone());
        let ring = t.oracle_ring();
        ring.check_euclidean()?;
        Ok(Setup { t, ring, na: n.na().gens(), nb: n.nb().gens() })
    }

    /// `rho_A(c)` (or `rho_B(c)`) evaluated in the oracle ring.
    fn base_change(&self, c: &Scalar, left: bool) -> Result<OracleElement> {
        let c = RingElement::Scalar(c.clone());
        let e = if left { self.t.rho_a(&c)? } else { self.t.rho_b(&c)? };
        Ok(self.t.family_iso(&e))
    }

    fn row(&self, width: usize, entries: impl IntoIterator<Item = (usize, OracleElement)>) -> Vec<OracleElement> {
        let mut row = vec![self.ring.zero(); width];
        for (i, e) in entries {
            row[i] = self.ring.add(&row[i], &e);
        }
        row
    }

    fn changed_rows(&self, rels: &Matrix<Scalar>, offset: usize, width: usize, left: bool) -> Result<Vec<Vec<OracleElement>>> {
        rels.row_vecs()
            .iter()
            .map(|rel| {
                let entries = rel.iter().enumerate().map(|(i, c)| Ok((offset + i, self.base_change(c, left)?)));
                Ok(self.row(width, entries.collect::<Result<Vec<_>>>()?))
            })
            .collect()
    }

    /// Rows `(f(mu (x) h_j) on g, x_mu on h_j)`, one per basis element and
    /// generator of `N_B`, with `x_mu` scaled by `sign`.
    fn corner_rows(&self, n: &TripleModule, g_at: usize, h_at: usize, width: usize, sign: &OracleElement) -> Result<Vec<Vec<OracleElement>>> {
        let mut rows = Vec::new();
        for (k, mu) in n.basis().iter().enumerate() {
            let x_mu = self.ring.mul(sign, &self.t.family_iso(&self.t.generator(mu)?));
            for j in 0..self.nb {
                let mut entries = Vec::new();
                for (i, c) in n.f(k).row(j).iter().enumerate() {
                    entries.push((g_at + i, self.base_change(c, true)?));
                }
                entries.push((h_at + j, x_mu.clone()));
                rows.push(self.row(width, entries));
            }
        }
        Ok(rows)
    }

    fn presentation(&self, gens: usize, rows: Vec<Vec<OracleElement>>) -> Result<TPresentation> {
        Presentation::new(self.ring.clone(), gens, Matrix::from_rows(gens, rows)?)
    }
}

/// The presentation of `L` over `T`.
pub fn build_l(n: &TripleModule, sign: GSign) -> Result<TPresentation> {
    let s = Setup::new(n)?;
    let width = s.na + s.nb;
    let mut rows = s.changed_rows(n.na().rels(), 0, width, true)?;
    rows.extend(s.changed_rows(n.nb().rels(), s.na, width, false)?);
    let one = s.ring.one();
    let sign = match sign {
        GSign::Minus => s.ring.neg(&one),
        GSign::Plus => one,
    };
    rows.extend(s.corner_rows(n, 0, s.na, width, &sign)?);
    s.presentation(width, rows)
}

/// `(T T) (x)_R N` on generators `u_g (nA), u_h (nB), v_g (nA), v_h (nB)`,
/// where `u = (1, 0) (x) -` and `v = (0, 1) (x) -`. The idempotents of `R`
/// kill `u_h` and `v_g`; the corners give `x_mu v_h = u_(f(mu (x) h))`.
pub fn tensor_presentation(n: &TripleModule) -> Result<TPresentation> {
    let s = Setup::new(n)?;
    let (na, nb) = (s.na, s.nb);
    let width = 2 * (na + nb);
    let (ug, uh, vg, vh) = (0, na, na + nb, 2 * na + nb);
    let mut rows = s.changed_rows(n.na().rels(), ug, width, true)?;
    rows.extend(s.changed_rows(n.nb().rels(), vh, width, false)?);
    for i in 0..na {
        rows.push(s.row(width, [(vg + i, s.ring.one())]));
    }
    for j in 0..nb {
        rows.push(s.row(width, [(uh + j, s.ring.one())]));
    }
    // x_mu v_h - f(mu (x) h) on u_g, written with the sign on the f part
    let minus_one = s.ring.neg(&s.ring.one());
    for row in s.corner_rows(n, ug, vh, width, &s.ring.one())? {
        let row = row
            .iter()
            .enumerate()
            .map(|(i, e)| if (ug..ug + na).contains(&i) { s.ring.mul(&minus_one, e) } else { e.clone() })
            .collect();
        rows.push(row);
    }
    s.presentation(width, rows)
}

/// `(alpha, beta)`: `alpha(g_i) = u_(g_i)`, `alpha(h_j) = v_(h_j)`;
/// `beta(u_g) = g`, `beta(v_h) = h`, `beta(u_h) = beta(v_g) = 0`.
pub fn witness_maps(n: &TripleModule) -> Result<(Matrix<OracleElement>, Matrix<OracleElement>)> {
    let s = Setup::new(n)?;
    let (na, nb) = (s.na, s.nb);
    let (l, w) = (na + nb, 2 * (na + nb));
    let mut alpha = zeros(&s.ring, l, w);
    let mut beta = zeros(&s.ring, w, l);
    for i in 0..na {
        alpha.set(i, i, s.ring.one());
        beta.set(i, i, s.ring.one());
    }
    for j in 0..nb {
        alpha.set(na + j, 2 * na + nb + j, s.ring.one());
        beta.set(2 * na + nb + j, na + j, s.ring.one());
    }
    Ok((alpha, beta))
}

/// Invariant factors (non-units, in divisibility order) and free rank.
pub fn l_invariants(p: &TPresentation) -> Result<(Vec<OracleElement>, usize)> {
    Ok(p.reduce()?.invariants())
}

/// A random element of the oracle ring, small enough to keep Smith forms cheap.
pub fn random_oracle<G: Rng + ?Sized>(ring: &OracleRing, rng: &mut G) -> OracleElement {
    let small = |rng: &mut G| Scalar::from_integer(rng.gen_range(-6i64..=6).into());
    match ring {
        OracleRing::Scalar(r) => match r.0 {
            BaseRing::Z => OracleElement::Scalar(small(rng)),
            BaseRing::Q => OracleElement::Scalar(small(rng) / Scalar::from_integer(rng.gen_range(1i64..=4).into())),
        },
        OracleRing::Kadic(r) => OracleElement::Kadic(r.elem(rng.gen_range(-12i64..=12).into(), rng.gen_range(0..=2))),
        OracleRing::Poly(r) => {
            let coeffs = (0..rng.gen_range(0..=3))
                .map(|_| match r.base {
                    BaseRing::Z => small(rng),
                    BaseRing::Q => small(rng) / Scalar::from_integer(rng.gen_range(1i64..=3).into()),
                })
                .collect();
            OracleElement::Poly(PolynomialElement::new(coeffs))
        }
        OracleRing::Free(_) => unreachable!("module localization needs a Euclidean T"),
    }
}

fn render_vector(ring: &OracleRing, v: &[OracleElement]) -> String {
    format!("[{}]", v.iter().map(|e| ring.render(e)).collect::<Vec<_>>().join(", "))
}

fn random_vector<G: Rng + ?Sized>(ring: &OracleRing, rng: &mut G, n: usize) -> Vec<OracleElement> {
    (0..n).map(|_| random_oracle(ring, rng)).collect()
}

fn sampled_identity<G: Rng + ?Sized>(
    module: &Reduced<OracleRing>,
    ring: &OracleRing,
    gens: usize,
    comp: &Matrix<OracleElement>,
    rng: &mut G,
    samples: usize,
) -> Option<String> {
    for _ in 0..samples {
        let v = random_vector(ring, rng, gens);
        if !module.equivalent(&apply(ring, &v, comp), &v) {
            return Some(format!("element {}", render_vector(ring, &v)));
        }
    }
    None
}

/// Checks that `alpha` and `beta` are well defined and mutually inverse:
/// exactly on generators and on `samples` seeded random elements.
pub fn verify_alpha_beta(n: &TripleModule, l: &TPresentation, seed: u64, samples: usize) -> Result<Report> {
    let ring = l.ring().clone();
    let w = tensor_presentation(n)?;
    let (alpha, beta) = witness_maps(n)?;
    let (l_red, w_red) = (l.reduce()?, w.reduce()?);
    let mut report = Report::new(format!("alpha/beta: {}", n.family().label()), Some(seed));
    let name = |i: usize| if i < n.na().gens() { format!("g{}", i + 1) } else { format!("h{}", i + 1 - n.na().gens()) };

    let defect = hom_defect(l, &alpha, &w_red)?;
    report.check(
        "alpha kills the relations of L",
        l.rels().rows(),
        defect.map(|i| format!("relation {i} of L: {}", render_vector(&ring, l.rels().row(i)))),
    );
    let defect = hom_defect(&w, &beta, &l_red)?;
    report.check(
        "beta kills the relations of W",
        w.rels().rows(),
        defect.map(|i| format!("relation {i} of W: {}", render_vector(&ring, w.rels().row(i)))),
    );
    let ba = mat_mul(&ring, &alpha, &beta)?;
    let ab = mat_mul(&ring, &beta, &alpha)?;
    report.check("beta alpha = id on generators", l.gens(), identity_defect(&l_red, &ba).map(|i| format!("generator {}", name(i))));
    report.check("alpha beta = id on generators", w.gens(), identity_defect(&w_red, &ab).map(|i| format!("generator {i} of W")));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    report.check("beta alpha = id on samples", samples, sampled_identity(&l_red, &ring, l.gens(), &ba, &mut rng, samples));
    report.check("alpha beta = id on samples", samples, sampled_identity(&w_red, &ring, w.gens(), &ab, &mut rng, samples));
    Ok(report)
}

/// `build_l`, `l_invariants` and `verify_alpha_beta` together.
pub fn localize_module(n: &TripleModule, seed: u64, samples: usize) -> Result<LocalizedModule> {
    let l = build_l(n, GSign::Minus)?;
    let (factors, free_rank) = l_invariants(&l)?;
    let ring = l.ring().clone();
    let check = verify_alpha_beta(n, &l, seed, samples)?;
    let mut report = Report::new(format!("localize-module: {}", n.family().label()), Some(seed));
    report.fact("T", ring.name());
    let na = n.na().gens();
    let names: Vec<String> =
        (0..l.gens()).map(|i| if i < na { format!("g{}", i + 1) } else { format!("h{}", i + 1 - na) }).collect();
    report.fact("generators", format!("[{}]", names.join(", ")));
    let rows: Vec<String> = l.rels().row_vecs().iter().map(|r| render_vector(&ring, r)).collect();
    report.fact("relations", format!("[{}]", rows.join(", ")));
    report.fact("invariant factors", render_vector(&ring, &factors));
    report.fact("free rank", free_rank.to_string());
    report.fact("action", "M_2(T) by matrix multiplication on the column (L; L)");
    report.absorb("alpha/beta", check);
    let tensor = tensor_presentation(n)?;
    let (alpha, beta) = witness_maps(n)?;
    Ok(LocalizedModule { l, factors, free_rank, tensor, alpha, beta, report })
}

/// `L(N (+) N')` against the block sum of `L(N)` and `L(N')`: equal free
/// ranks and equal invariant factors of the two presentations.
pub fn additivity_defect(n1: &TripleModule, n2: &TripleModule) -> Result<Option<String>> {
    let sum = build_l(&n1.direct_sum(n2)?, GSign::Minus)?;
    let (l1, l2) = (build_l(n1, GSign::Minus)?, build_l(n2, GSign::Minus)?);
    let ring = sum.ring().clone();
    let block = Presentation::new(
        ring.clone(),
        l1.gens() + l2.gens(),
        crate::algebra::presentation::block_diag(&ring, l1.rels(), l2.rels()),
    )?;
    let (a, b) = (l_invariants(&sum)?, l_invariants(&block)?);
    if a == b {
        Ok(None)
    } else {
        Ok(Some(format!(
            "L(N + N') has factors {} and rank {}, the block sum has {} and rank {}",
            render_vector(&ring, &a.0),
            a.1,
            render_vector(&ring, &b.0),
            b.1
        )))
    }
}

#[cfg(test)]
mod tests;
