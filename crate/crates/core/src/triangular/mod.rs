//! The triangular ring `R = (A M; 0 B)`, its columns `P = (A; 0)` and
//! `Q = (M; B)`, the map `sigma: P -> Q` fixed by `p`, and left `R`-modules
//! written as triples.

mod column;
mod triple;

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::family::{BaseAlgebra, BimElement, Family, RingElement};

pub use column::{module_roundtrip, ColumnModule, RoundTrip};
pub use triple::{FpModule, TripleModule};

/// `(a, m; 0, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriElement {
    pub a: RingElement,
    pub m: BimElement,
    pub b: RingElement,
}

/// An element `(a; 0)` of the first column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PColumn {
    pub a: RingElement,
}

/// An element `(m; b)` of the second column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QColumn {
    pub m: BimElement,
    pub b: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularRing {
    family: Arc<Family>,
}

impl TriangularRing {
    pub fn new(family: Arc<Family>) -> Self {
        TriangularRing { family }
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn element(&self, a: RingElement, m: BimElement, b: RingElement) -> Result<TriElement> {
        let r = TriElement { a, m, b };
        self.check(&r)?;
        Ok(r)
    }

    fn check(&self, r: &TriElement) -> Result<()> {
        if !self.family.a_ring().contains(&r.a) || !self.family.b_ring().contains(&r.b) {
            return Err(Error::FamilyMismatch);
        }
        self.family.check_m(&r.m).map_err(|_| Error::FamilyMismatch)
    }

    /// `(aa', am' + mb'; 0, bb')`.
    pub fn tri_mul(&self, r1: &TriElement, r2: &TriElement) -> Result<TriElement> {
        self.check(r1)?;
        self.check(r2)?;
        let f = &self.family;
        Ok(TriElement {
            a: f.a_ring().mul(&r1.a, &r2.a),
            m: f.bim_add(&f.left_act(&r1.a, &r2.m)?, &f.right_act(&r1.m, &r2.b)?)?,
            b: f.b_ring().mul(&r1.b, &r2.b),
        })
    }

    pub fn tri_add(&self, r1: &TriElement, r2: &TriElement) -> Result<TriElement> {
        self.check(r1)?;
        self.check(r2)?;
        let f = &self.family;
        Ok(TriElement {
            a: f.a_ring().add(&r1.a, &r2.a),
            m: f.bim_add(&r1.m, &r2.m)?,
            b: f.b_ring().add(&r1.b, &r2.b),
        })
    }

    /// `(0, m; 0, 0)`.
    pub fn corner(&self, m: BimElement) -> TriElement {
        TriElement { a: self.family.a_ring().zero(), m, b: self.family.b_ring().zero() }
    }

    /// Splits `r` into its columns.
    pub fn columns(&self, r: &TriElement) -> (PColumn, QColumn) {
        (PColumn { a: r.a.clone() }, QColumn { m: r.m.clone(), b: r.b.clone() })
    }

    pub fn from_columns(&self, p: &PColumn, q: &QColumn) -> TriElement {
        TriElement { a: p.a.clone(), m: q.m.clone(), b: q.b.clone() }
    }

    /// `r * (a'; 0) = (aa'; 0)`.
    pub fn act_p(&self, r: &TriElement, p: &PColumn) -> PColumn {
        PColumn { a: self.family.a_ring().mul(&r.a, &p.a) }
    }

    /// `r * (m'; b') = (am' + mb'; bb')`.
    pub fn act_q(&self, r: &TriElement, q: &QColumn) -> Result<QColumn> {
        let f = &self.family;
        Ok(QColumn {
            m: f.bim_add(&f.left_act(&r.a, &q.m)?, &f.right_act(&r.m, &q.b)?)?,
            b: f.b_ring().mul(&r.b, &q.b),
        })
    }

    pub fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> TriElement {
        let f = &self.family;
        TriElement { a: f.random_a(rng), m: f.random_m(rng), b: f.random_b(rng) }
    }

    /// Parses `(a; m; b)`, the form printed by `render`; the parentheses
    /// are optional.
    pub fn parse(&self, text: &str) -> Result<TriElement> {
        let t = text.trim();
        let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
        let parts: Vec<&str> = t.split(';').map(str::trim).collect();
        let [a, m, b] = parts[..] else {
            return Err(Error::Schema(format!("expected `a; m; b`, got {text:?}")));
        };
        let f = &self.family;
        self.element(f.parse_a(a)?, f.parse_bim(m)?, f.parse_b(b)?)
    }

    pub fn render(&self, r: &TriElement) -> String {
        let f = &self.family;
        format!(
            "({}; {}; {})",
            render_ring_element(f, &r.a, true),
            f.format_bim(&r.m),
            render_ring_element(f, &r.b, false)
        )
    }
}

fn render_ring_element(f: &Family, x: &RingElement, left: bool) -> String {
    let ring = if left { f.a_ring() } else { f.b_ring() };
    match (&ring, x) {
        (BaseAlgebra::Free(a), RingElement::Free(e)) => a.element_text(e),
        _ => ring.render(x),
    }
}

impl Ring for TriangularRing {
    type Elem = TriElement;

    fn zero(&self) -> TriElement {
        self.corner(self.family.zero_m())
    }
    fn one(&self) -> TriElement {
        TriElement { a: self.family.a_ring().one(), m: self.family.zero_m(), b: self.family.b_ring().one() }
    }
    fn from_scalar(&self, c: &crate::algebra::Scalar) -> TriElement {
        TriElement {
            a: self.family.a_ring().from_scalar(c),
            m: self.family.zero_m(),
            b: self.family.b_ring().from_scalar(c),
        }
    }
    fn add(&self, x: &TriElement, y: &TriElement) -> TriElement {
        self.tri_add(x, y).expect("elements of one triangular ring")
    }
    fn neg(&self, x: &TriElement) -> TriElement {
        let f = &self.family;
        TriElement { a: f.a_ring().neg(&x.a), m: f.bim_neg(&x.m), b: f.b_ring().neg(&x.b) }
    }
    fn mul(&self, x: &TriElement, y: &TriElement) -> TriElement {
        self.tri_mul(x, y).expect("elements of one triangular ring")
    }
    fn render(&self, x: &TriElement) -> String {
        TriangularRing::render(self, x)
    }
}

/// The map `P -> Q` sending `(1; 0)` to `(p; 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMorphism {
    pub p: BimElement,
}

impl fmt::Display for SigmaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma(p = {:?})", self.p)
    }
}

impl SigmaMorphism {
    pub fn of(family: &Family) -> Self {
        SigmaMorphism { p: family.p() }
    }
}

/// `sigma(a; 0) = (ap; 0)`.
pub fn sigma_apply(family: &Family, sigma: &SigmaMorphism, a: &RingElement) -> Result<QColumn> {
    Ok(QColumn { m: family.left_act(a, &sigma.p)?, b: family.b_ring().zero() })
}

#[cfg(test)]
mod tests;
