//! Free associative algebras over `Z` or `Q` on a finite named alphabet.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ring::{BaseRing, Ring};
use super::scalar::{coefficient_prefix, join_terms, parse_scalar, Scalar};
use crate::error::{Error, Result};

/// A word in generator indices. Ordered by length, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }
    pub fn letter(g: u32) -> Self {
        Word(vec![g])
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Alphabet = Arc<[String]>;

pub fn alphabet<S: AsRef<str>>(names: &[S]) -> Alphabet {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

pub(crate) fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebraElement {
    base: BaseRing,
    alphabet: Alphabet,
    terms: BTreeMap<Word, Scalar>,
}

impl FreeAlgebraElement {
    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.join(","),
                right: other.alphabet.join(","),
            });
        }
        Ok(())
    }

    fn with_terms(&self, terms: BTreeMap<Word, Scalar>) -> Self {
        FreeAlgebraElement { base: self.base, alphabet: self.alphabet.clone(), terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(self.with_terms(terms))
    }

    /// Words of length exactly one, for a single-term element with
    /// coefficient one.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }
}

pub(crate) fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Bilinear concatenation product.
pub fn free_mul(e1: &FreeAlgebraElement, e2: &FreeAlgebraElement) -> Result<FreeAlgebraElement> {
    e1.same_ring(e2)?;
    let mut terms = BTreeMap::new();
    for (w1, c1) in &e1.terms {
        for (w2, c2) in &e2.terms {
            accumulate(&mut terms, w1.concat(w2), c1 * c2);
        }
    }
    Ok(e1.with_terms(terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    base: BaseRing,
    alphabet: Alphabet,
}

impl FreeAlgebra {
    pub fn new(base: BaseRing, alphabet: Alphabet) -> Result<Self> {
        for (i, name) in alphabet.iter().enumerate() {
            if !valid_generator_name(name) {
                return Err(Error::Schema(format!("invalid generator name {name:?}")));
            }
            if alphabet[..i].contains(name) {
                return Err(Error::Schema(format!("duplicate generator name {name:?}")));
            }
        }
        Ok(FreeAlgebra { base, alphabet })
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn element<I: IntoIterator<Item = (Word, Scalar)>>(&self, terms: I) -> FreeAlgebraElement {
        let mut map = BTreeMap::new();
        for (w, c) in terms {
            debug_assert!(w.0.iter().all(|&g| (g as usize) < self.alphabet.len()));
            accumulate(&mut map, w, c);
        }
        FreeAlgebraElement { base: self.base, alphabet: self.alphabet.clone(), terms: map }
    }

    pub fn word(&self, w: Word) -> FreeAlgebraElement {
        self.element([(w, Scalar::one())])
    }

    pub fn generator(&self, g: u32) -> FreeAlgebraElement {
        self.word(Word::letter(g))
    }

    pub fn scale(&self, c: &Scalar, e: &FreeAlgebraElement) -> FreeAlgebraElement {
        self.element(e.terms.iter().map(|(w, d)| (w.clone(), c * d)))
    }

    /// Generator names joined by `.`; the empty word is `1`.
    pub fn word_text(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.0.iter()
            .map(|&g| self.alphabet[g as usize].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        text.split('.')
            .map(|name| {
                let name = name.trim();
                self.alphabet
                    .iter()
                    .position(|g| g == name)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::UnknownLiteral(format!("generator {name:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Parses `c*w + w - c ...` where `w` is a word in `.` notation.
    /// The inverse of `parse_element`: words joined by `.`.
    pub fn element_text(&self, x: &FreeAlgebraElement) -> String {
        join_terms(x.terms.iter().map(|(w, c)| {
            if w.is_empty() {
                c.to_string()
            } else {
                format!("{}{}", coefficient_prefix(c), self.word_text(w))
            }
        }))
    }

    pub fn parse_element(&self, text: &str) -> Result<FreeAlgebraElement> {
        let mut terms = Vec::new();
        for (sign, term) in split_signed_terms(text)? {
            let (coef, word) = match term.split_once('*') {
                Some((c, w)) => (
                    parse_scalar(c).ok_or_else(|| Error::UnknownLiteral(c.to_string()))?,
                    self.parse_word(w)?,
                ),
                None => match parse_scalar(term) {
                    Some(c) => (c, Word::empty()),
                    None => (Scalar::one(), self.parse_word(term)?),
                },
            };
            self.base.check(&coef)?;
            terms.push((word, if sign { -coef } else { coef }));
        }
        Ok(self.element(terms))
    }
}

/// Splits `a + b - c` into `(negated, text)` pairs. Slashes stay inside terms.
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && text[start..i].trim().is_empty() && out.is_empty() && start == 0 {
            // leading sign
            neg = c == '-';
            start = i + 1;
        } else if c == '+' || c == '-' {
            let piece = text[start..i].trim();
            if piece.is_empty() {
                return Err(Error::UnknownLiteral(text.to_string()));
            }
            out.push((neg, piece));
            neg = c == '-';
            start = i + 1;
        }
        i += 1;
    }
    let piece = text[start..].trim();
    if piece.is_empty() {
        return Err(Error::UnknownLiteral(text.to_string()));
    }
    out.push((neg, piece));
    Ok(out)
}

impl Ring for FreeAlgebra {
    type Elem = FreeAlgebraElement;

    fn zero(&self) -> FreeAlgebraElement {
        self.element([])
    }
    fn one(&self) -> FreeAlgebraElement {
        self.word(Word::empty())
    }
    fn from_scalar(&self, c: &Scalar) -> FreeAlgebraElement {
        debug_assert!(self.base.contains(c));
        self.element([(Word::empty(), c.clone())])
    }
    fn add(&self, x: &FreeAlgebraElement, y: &FreeAlgebraElement) -> FreeAlgebraElement {
        x.try_add(y).expect("operands from one free algebra")
    }
    fn neg(&self, x: &FreeAlgebraElement) -> FreeAlgebraElement {
        self.scale(&-Scalar::one(), x)
    }
    fn mul(&self, x: &FreeAlgebraElement, y: &FreeAlgebraElement) -> FreeAlgebraElement {
        free_mul(x, y).expect("operands from one free algebra")
    }
    fn render(&self, x: &FreeAlgebraElement) -> String {
        join_terms(x.terms.iter().map(|(w, c)| {
            if w.is_empty() {
                c.to_string()
            } else {
                let names: Vec<&str> = w.0.iter().map(|&g| self.alphabet[g as usize].as_str()).collect();
                format!("{}{}", coefficient_prefix(c), names.join("*"))
            }
        }))
    }
    fn is_zero(&self, x: &FreeAlgebraElement) -> bool {
        x.is_zero()
    }
}
