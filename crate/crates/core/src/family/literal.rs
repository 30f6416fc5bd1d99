//! Text forms of bimodule elements.
//!
//! A letter literal is what appears inside `x[...]`: an integer or `n/d`
//! (`regular`, `scaled`), `(a,b)` (`double`), `t(w,v)` (`tensor-free`),
//! `h(w)` or `h(w1,w2)` (`hnn-free`). Words are generator names joined by
//! `.`, with `1` for the empty word. General elements are signed sums of
//! `c*literal` terms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{one_map, BimElement, Family, RingElement, TensorTerms};
use crate::algebra::scalar::{coefficient_prefix, join_terms};
use crate::algebra::{parse_scalar, BaseRing, FreeAlgebra, Scalar, Word};
use crate::error::{Error, Result};

fn unknown(text: &str) -> Error {
    Error::UnknownLiteral(text.to_string())
}

fn scalar_in(ring: BaseRing, text: &str) -> Result<Scalar> {
    let c = parse_scalar(text).ok_or_else(|| unknown(text))?;
    ring.check(&c)?;
    Ok(c)
}

/// Contents of `prefix(...)`, split at top-level commas.
fn call_args<'a>(text: &'a str, prefix: &str) -> Option<Vec<&'a str>> {
    let inner = text.trim().strip_prefix(prefix)?.trim_start().strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

/// Splits `a + b - c` at top-level signs (outside parentheses). A sign
/// directly after `*`, `/`, `(` or `,` belongs to the following number.
pub(crate) fn split_top_level(text: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut neg = false;
    let mut start = 0;
    let mut prev: Option<char> = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 && !matches!(prev, Some('*' | '/' | '^')) => {
                let piece = text[start..i].trim();
                if piece.is_empty() {
                    if !out.is_empty() || prev.is_some() {
                        return Err(unknown(text));
                    }
                } else {
                    out.push((neg, piece));
                }
                neg = c == '-';
                start = i + 1;
            }
            _ => {}
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    let piece = text[start..].trim();
    if piece.is_empty() || depth != 0 {
        return Err(unknown(text));
    }
    out.push((neg, piece));
    Ok(out)
}

impl Family {
    fn word_in(&self, algebra: &FreeAlgebra, text: &str) -> Result<Word> {
        algebra.parse_word(text)
    }

    /// Parses a single letter literal.
    pub fn parse_letter(&self, text: &str) -> Result<BimElement> {
        let text = text.trim();
        match self {
            Family::Regular(r) => Ok(BimElement::Scalar(scalar_in(*r, text)?)),
            Family::Scaled(_) => Ok(BimElement::Scalar(scalar_in(BaseRing::Z, text)?)),
            Family::Double(r) => match call_args(text, "").as_deref() {
                Some([a, b]) => Ok(BimElement::Pair(scalar_in(*r, a)?, scalar_in(*r, b)?)),
                _ => Err(unknown(text)),
            },
            Family::TensorFree { left, right } => match call_args(text, "t").as_deref() {
                Some([w, v]) => Ok(BimElement::Tensor(one_map((self.word_in(left, w)?, self.word_in(right, v)?)))),
                _ => Err(unknown(text)),
            },
            Family::HnnFree(a) => match call_args(text, "h").as_deref() {
                Some([w]) => Ok(BimElement::Hnn(one_map(self.word_in(a, w)?), TensorTerms::new())),
                Some([w1, w2]) => Ok(BimElement::Hnn(
                    BTreeMap::new(),
                    one_map((self.word_in(a, w1)?, self.word_in(a, w2)?)),
                )),
                _ => Err(unknown(text)),
            },
        }
    }

    /// Literal text of `m` when `m` is a single letter literal.
    pub fn format_letter(&self, m: &BimElement) -> Option<String> {
        match (self, m) {
            (Family::Regular(_) | Family::Scaled(_), BimElement::Scalar(c)) => Some(c.to_string()),
            (Family::Double(_), BimElement::Pair(a, b)) => Some(format!("({a},{b})")),
            (Family::TensorFree { left, right }, BimElement::Tensor(t)) => match single(t)? {
                ((w, v), c) if c.is_one() => Some(format!("t({},{})", left.word_text(w), right.word_text(v))),
                _ => None,
            },
            (Family::HnnFree(a), BimElement::Hnn(x, t)) => {
                if t.is_empty() {
                    match single(x)? {
                        (w, c) if c.is_one() => Some(format!("h({})", a.word_text(w))),
                        _ => None,
                    }
                } else if x.is_empty() {
                    match single(t)? {
                        ((w1, w2), c) if c.is_one() => Some(format!("h({},{})", a.word_text(w1), a.word_text(w2))),
                        _ => None,
                    }
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Parses a signed sum of `c*literal` terms; `0` is the zero element.
    pub fn parse_bim(&self, text: &str) -> Result<BimElement> {
        let mut acc = self.zero_m();
        for (neg, term) in split_top_level(text)? {
            let (coef, lit) = match term.split_once('*') {
                Some((c, l)) => (scalar_in(self.coefficients(), c)?, l),
                None => (Scalar::one(), term),
            };
            let m = if lit.trim() == "0" { self.zero_m() } else { self.parse_letter(lit)? };
            let coef = if neg { -coef } else { coef };
            acc = self.bim_add(&acc, &self.bim_scale(&coef, &m))?;
        }
        self.check_m(&acc)?;
        Ok(acc)
    }

    pub fn format_bim(&self, m: &BimElement) -> String {
        if let Some(s) = self.format_letter(m) {
            return s;
        }
        let term = |c: &Scalar, lit: String| format!("{}{lit}", coefficient_prefix(c));
        match (self, m) {
            (Family::TensorFree { left, right }, BimElement::Tensor(t)) => join_terms(
                t.iter().map(|((w, v), c)| term(c, format!("t({},{})", left.word_text(w), right.word_text(v)))),
            ),
            (Family::HnnFree(a), BimElement::Hnn(x, t)) => join_terms(
                x.iter()
                    .map(|(w, c)| term(c, format!("h({})", a.word_text(w))))
                    .chain(t.iter().map(|((w1, w2), c)| term(c, format!("h({},{})", a.word_text(w1), a.word_text(w2))))),
            ),
            _ => format!("{m:?}"),
        }
    }

    pub fn parse_a(&self, text: &str) -> Result<RingElement> {
        parse_ring_element(&self.a_ring(), text)
    }

    pub fn parse_b(&self, text: &str) -> Result<RingElement> {
        parse_ring_element(&self.b_ring(), text)
    }
}

fn parse_ring_element(ring: &super::BaseAlgebra, text: &str) -> Result<RingElement> {
    match ring {
        super::BaseAlgebra::Scalar(r) => {
            let mut acc = Scalar::zero();
            for (neg, term) in split_top_level(text)? {
                let c = scalar_in(r.0, term)?;
                acc += if neg { -c } else { c };
            }
            Ok(RingElement::Scalar(acc))
        }
        super::BaseAlgebra::Free(a) => Ok(RingElement::Free(a.parse_element(text)?)),
    }
}

fn single<K, V>(map: &BTreeMap<K, V>) -> Option<(&K, &V)> {
    (map.len() == 1).then(|| map.iter().next()).flatten()
}
