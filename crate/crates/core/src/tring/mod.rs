//! The ring `T(M, p)`: generators `x_m`, relations
//! `x_m + x_m' = x_(m+m')`, `x_(ap) x_m = x_(am)`, `x_m x_(pb) = x_(mb)` and
//! `x_p = 1`. Elements are kept in rewriting normal form.

mod expr;
mod normalize;
mod oracle;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::free::accumulate;
use crate::algebra::scalar::{coefficient_prefix, join_terms};
use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::family::{BimElement, Family, RingElement, Rules};

pub use expr::{parse_expr, Expr};
pub use oracle::{OracleElement, OracleRing};

/// Default cap on reductions per normalization.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A word `x_m1 ... x_mr` in irreducible letters. Ordered by length, then
/// lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TWord(pub Vec<BimElement>);

impl Ord for TWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TElement {
    family: Arc<Family>,
    terms: BTreeMap<TWord, Scalar>,
}

impl TElement {
    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn terms(&self) -> &BTreeMap<TWord, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the element is the constant `c`.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&TWord::default()).cloned(),
            _ => None,
        }
    }
}

/// Outcome of comparing two expressions in `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Distinct,
    /// Normalization ran out of budget on at least one side.
    Unknown,
}

pub(crate) struct Budget {
    limit: usize,
    used: usize,
}

impl Budget {
    pub(crate) fn new(limit: usize) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// `T(M, p)` for one family, with a reduction budget and a rule set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRing {
    family: Arc<Family>,
    budget: usize,
    rules: Rules,
}

impl TRing {
    pub fn new(family: Family) -> Self {
        Self::from_arc(Arc::new(family))
    }

    pub fn from_arc(family: Arc<Family>) -> Self {
        TRing { family, budget: DEFAULT_BUDGET, rules: Rules::default() }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_rules(mut self, rules: Rules) -> Self {
        self.rules = rules;
        self
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    fn element(&self, terms: BTreeMap<TWord, Scalar>) -> TElement {
        TElement { family: self.family.clone(), terms }
    }

    fn check(&self, e: &TElement) -> Result<()> {
        if *e.family == *self.family {
            Ok(())
        } else {
            Err(Error::FamilyMismatch)
        }
    }

    pub fn constant(&self, c: &Scalar) -> TElement {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, TWord::default(), c.clone());
        self.element(terms)
    }

    /// Normal form of the raw combination `sum c * x_m1 ... x_mr`.
    pub fn from_raw(&self, raw: Vec<(Scalar, Vec<BimElement>)>) -> Result<TElement> {
        self.from_raw_with(raw, &mut Budget::new(self.budget))
    }

    fn from_raw_with(&self, raw: Vec<(Scalar, Vec<BimElement>)>, budget: &mut Budget) -> Result<TElement> {
        for (_, w) in &raw {
            for m in w {
                self.family.check_m(m)?;
            }
        }
        Ok(self.element(normalize::normalize(&self.family, self.rules, raw, budget)?))
    }

    fn raw(e: &TElement) -> impl Iterator<Item = (Scalar, Vec<BimElement>)> + '_ {
        e.terms.iter().map(|(w, c)| (c.clone(), w.0.clone()))
    }

    /// The generator `x_m`, normalized.
    pub fn generator(&self, m: &BimElement) -> Result<TElement> {
        self.from_raw(vec![(Scalar::one(), vec![m.clone()])])
    }

    pub fn try_add(&self, e1: &TElement, e2: &TElement) -> Result<TElement> {
        self.add_with(e1, e2, &mut Budget::new(self.budget))
    }

    fn add_with(&self, e1: &TElement, e2: &TElement, budget: &mut Budget) -> Result<TElement> {
        self.check(e1)?;
        self.check(e2)?;
        self.from_raw_with(Self::raw(e1).chain(Self::raw(e2)).collect(), budget)
    }

    pub fn try_mul(&self, e1: &TElement, e2: &TElement) -> Result<TElement> {
        self.mul_with(e1, e2, &mut Budget::new(self.budget))
    }

    fn mul_with(&self, e1: &TElement, e2: &TElement, budget: &mut Budget) -> Result<TElement> {
        self.check(e1)?;
        self.check(e2)?;
        let mut raw = Vec::with_capacity(e1.terms.len() * e2.terms.len());
        for (w1, c1) in &e1.terms {
            for (w2, c2) in &e2.terms {
                let mut w = w1.0.clone();
                w.extend(w2.0.iter().cloned());
                raw.push((c1 * c2, w));
            }
        }
        self.from_raw_with(raw, budget)
    }

    pub fn scale(&self, c: &Scalar, e: &TElement) -> TElement {
        let mut terms = BTreeMap::new();
        for (w, d) in &e.terms {
            accumulate(&mut terms, w.clone(), c * d);
        }
        self.element(terms)
    }

    pub fn try_pow(&self, e: &TElement, n: u32) -> Result<TElement> {
        let mut budget = Budget::new(self.budget);
        self.pow_with(e, n, &mut budget)
    }

    fn pow_with(&self, e: &TElement, n: u32, budget: &mut Budget) -> Result<TElement> {
        let mut acc = self.constant(&Scalar::one());
        for _ in 0..n {
            acc = self.mul_with(&acc, e, budget)?;
        }
        Ok(acc)
    }

    /// `rho_A(a) = x_(ap)`.
    pub fn rho_a(&self, a: &RingElement) -> Result<TElement> {
        self.generator(&self.family.left_act(a, &self.family.p())?)
    }

    /// `rho_B(b) = x_(pb)`.
    pub fn rho_b(&self, b: &RingElement) -> Result<TElement> {
        self.generator(&self.family.right_act(&self.family.p(), b)?)
    }

    /// `rho_M(m) = x_m`.
    pub fn rho_m(&self, m: &BimElement) -> Result<TElement> {
        self.generator(m)
    }

    /// Normalizes an expression tree bottom-up under one shared budget.
    pub fn normalize(&self, e: &Expr) -> Result<TElement> {
        self.eval(e, &mut Budget::new(self.budget))
    }

    fn eval(&self, e: &Expr, budget: &mut Budget) -> Result<TElement> {
        Ok(match e {
            Expr::Num(c) => {
                if !self.family.coefficients().contains(c) {
                    return Err(Error::NotInRing { value: c.to_string(), ring: self.family.label() });
                }
                self.constant(c)
            }
            Expr::Letter(m) => self.from_raw_with(vec![(Scalar::one(), vec![m.clone()])], budget)?,
            Expr::Neg(x) => {
                let x = self.eval(x, budget)?;
                self.scale(&-Scalar::one(), &x)
            }
            Expr::Add(x, y) => {
                let (x, y) = (self.eval(x, budget)?, self.eval(y, budget)?);
                self.add_with(&x, &y, budget)?
            }
            Expr::Sub(x, y) => {
                let (x, y) = (self.eval(x, budget)?, self.eval(y, budget)?);
                self.add_with(&x, &self.scale(&-Scalar::one(), &y), budget)?
            }
            Expr::Mul(x, y) => {
                let (x, y) = (self.eval(x, budget)?, self.eval(y, budget)?);
                self.mul_with(&x, &y, budget)?
            }
            Expr::Pow(x, n) => {
                let x = self.eval(x, budget)?;
                self.pow_with(&x, *n, budget)?
            }
        })
    }

    /// Parses `text` in the element grammar and normalizes it.
    pub fn parse(&self, text: &str) -> Result<TElement> {
        self.normalize(&parse_expr(text, &self.family)?)
    }

    /// Decides equality of two expressions by comparing normal forms.
    pub fn compare(&self, e1: &Expr, e2: &Expr) -> Equality {
        match (self.normalize(e1), self.normalize(e2)) {
            (Ok(x), Ok(y)) => {
                if x == y {
                    Equality::Equal
                } else {
                    Equality::Distinct
                }
            }
            _ => Equality::Unknown,
        }
    }

    /// A random expression: up to three terms, each a nonzero coefficient
    /// times up to three random letters.
    pub fn random_expr<G: Rng + ?Sized>(&self, rng: &mut G) -> Expr {
        let mut acc: Option<Expr> = None;
        for _ in 0..rng.gen_range(1..=3) {
            let mut c = self.family.random_coefficient(rng);
            if c.is_zero() {
                c = Scalar::one();
            }
            let mut term = Expr::Num(c);
            for _ in 0..rng.gen_range(0..=3) {
                term = term.mul(Expr::Letter(self.family.random_m(rng)));
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(term),
            });
        }
        acc.expect("at least one term")
    }

    /// Prints a normal form in the element grammar.
    pub fn render(&self, e: &TElement) -> String {
        join_terms(e.terms.iter().map(|(w, c)| {
            if w.0.is_empty() {
                return c.to_string();
            }
            format!("{}{}", coefficient_prefix(c), self.render_word(&w.0))
        }))
    }

    fn render_word(&self, w: &[BimElement]) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i + 1;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let lit = self.family.format_letter(&w[i]).unwrap_or_else(|| self.family.format_bim(&w[i]));
            if j - i == 1 {
                parts.push(format!("x[{lit}]"));
            } else {
                parts.push(format!("x[{lit}]^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    pub fn oracle_ring(&self) -> OracleRing {
        OracleRing::of(&self.family)
    }

    /// Image under the isomorphism onto the family's oracle ring.
    pub fn family_iso(&self, e: &TElement) -> OracleElement {
        oracle::image(&self.family, e)
    }

    /// Normal form with the given oracle image, built directly.
    pub fn oracle_preimage(&self, o: &OracleElement) -> Result<TElement> {
        Ok(self.element(oracle::preimage(&self.family, o)?))
    }
}

impl Ring for TRing {
    type Elem = TElement;

    fn zero(&self) -> TElement {
        self.element(BTreeMap::new())
    }
    fn one(&self) -> TElement {
        self.constant(&Scalar::one())
    }
    fn from_scalar(&self, c: &Scalar) -> TElement {
        self.constant(c)
    }
    fn add(&self, x: &TElement, y: &TElement) -> TElement {
        self.try_add(x, y).expect("sum within budget")
    }
    fn neg(&self, x: &TElement) -> TElement {
        self.scale(&-Scalar::one(), x)
    }
    fn mul(&self, x: &TElement, y: &TElement) -> TElement {
        self.try_mul(x, y).expect("product within budget")
    }
    fn render(&self, x: &TElement) -> String {
        TRing::render(self, x)
    }
    fn is_zero(&self, x: &TElement) -> bool {
        x.is_zero()
    }
}

#[cfg(test)]
mod tests;
