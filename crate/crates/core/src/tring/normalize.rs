//! Leftmost-innermost rewriting to normal form.
//!
//! Per term: split the leftmost reducible letter through `(+)` and `(id)`;
//! otherwise rewrite the leftmost reducible adjacent pair (relation (a), then
//! (b), then the family's completion rule); otherwise apply the family's
//! term rule. Finished terms are summed, then the family may merge them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Budget, TWord};
use crate::algebra::free::accumulate;
use crate::algebra::Scalar;
use crate::error::Result;
use crate::family::{BimElement, Family, Rules};

pub(super) fn normalize(
    family: &Family,
    rules: Rules,
    raw: Vec<(Scalar, Vec<BimElement>)>,
    budget: &mut Budget,
) -> Result<BTreeMap<TWord, Scalar>> {
    let mut done = BTreeMap::new();
    let mut stack = raw;
    while let Some((c, w)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        if let Some(i) = w.iter().position(|m| !family.is_irreducible_letter(m, rules)) {
            budget.tick()?;
            for (d, letter) in family.split_letter(&w[i], rules) {
                let mut next = Vec::with_capacity(w.len());
                next.extend_from_slice(&w[..i]);
                next.extend(letter);
                next.extend_from_slice(&w[i + 1..]);
                stack.push((&c * d, next));
            }
            continue;
        }
        let pair = (0..w.len().saturating_sub(1))
            .find_map(|i| family.rewrite_pair(&w[i], &w[i + 1]).map(|r| (i, r)));
        if let Some((i, replacement)) = pair {
            budget.tick()?;
            let mut next = Vec::with_capacity(w.len());
            next.extend_from_slice(&w[..i]);
            next.extend(replacement);
            next.extend_from_slice(&w[i + 2..]);
            stack.push((c, next));
            continue;
        }
        if let Some(term) = term_rule(family, rules, &c, &w) {
            budget.tick()?;
            stack.push(term);
            continue;
        }
        accumulate(&mut done, TWord(w), c);
    }
    merge(family, rules, done, budget)
}

/// `(c * prod n_i, r)` for the scaled term `c * x_n1 ... x_nr`, which by
/// `(+)` equals `c * n1 ... nr * x_1^r`.
fn scaled_value(c: &Scalar, w: &[BimElement]) -> (BigInt, usize) {
    let mut n = c.to_integer();
    for m in w {
        match m {
            BimElement::Scalar(x) => n *= x.to_integer(),
            _ => unreachable!("scaled letters are integers"),
        }
    }
    (n, w.len())
}

/// Canonical scaled term for `n * x_1^r`: while `k | n`, trade a factor `k`
/// for one `x_1` (`k x_1 = x_k = 1`), then absorb the coefficient into the
/// first letter.
fn scaled_term(k: &BigInt, mut n: BigInt, mut r: usize, rules: Rules) -> (Scalar, Vec<BimElement>) {
    if n.is_zero() {
        return (Scalar::zero(), Vec::new());
    }
    if rules.identity {
        while r > 0 && n.is_multiple_of(k) {
            n /= k;
            r -= 1;
        }
    }
    if r == 0 {
        return (Scalar::from_integer(n), Vec::new());
    }
    let mut w = vec![BimElement::Scalar(Scalar::from_integer(n))];
    w.extend(std::iter::repeat_n(BimElement::Scalar(Scalar::one()), r - 1));
    (Scalar::one(), w)
}

fn term_rule(family: &Family, rules: Rules, c: &Scalar, w: &[BimElement]) -> Option<(Scalar, Vec<BimElement>)> {
    let Family::Scaled(k) = family else { return None };
    if w.is_empty() {
        return None;
    }
    let (n, r) = scaled_value(c, w);
    let term = scaled_term(k, n, r, rules);
    (term.0 != *c || term.1 != w).then_some(term)
}

fn merge(
    family: &Family,
    rules: Rules,
    done: BTreeMap<TWord, Scalar>,
    budget: &mut Budget,
) -> Result<BTreeMap<TWord, Scalar>> {
    let Family::Scaled(k) = family else { return Ok(done) };
    let values: Vec<(BigInt, usize)> = done.iter().map(|(w, c)| scaled_value(c, &w.0)).collect();
    let mut out = BTreeMap::new();
    if rules.identity {
        // n x_1^r = n k x_1^(r+1): lift every term to the longest length
        let top = values.iter().map(|v| v.1).max().unwrap_or(0);
        let total: BigInt = values.iter().map(|(n, r)| n * num_traits::pow(k.clone(), top - r)).sum();
        let (c, w) = scaled_term(k, total, top, rules);
        accumulate(&mut out, TWord(w), c);
    } else {
        let mut by_length: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (n, r) in values {
            *by_length.entry(r).or_default() += n;
        }
        for (r, n) in by_length {
            let (c, w) = scaled_term(k, n, r, rules);
            accumulate(&mut out, TWord(w), c);
        }
    }
    if out != done {
        budget.tick()?;
    }
    Ok(out)
}
