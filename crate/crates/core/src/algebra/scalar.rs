//! Exact scalars. Integers are rationals with denominator one; `BigRational`
//! keeps every value in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    /// Negates the first operand; the second is ignored.
    Neg,
}

pub fn scalar_arith(op: ScalarOp, a: &Scalar, b: &Scalar) -> Scalar {
    match op {
        ScalarOp::Add => a + b,
        ScalarOp::Mul => a * b,
        ScalarOp::Neg => -a,
    }
}

/// Parses `n` or `n/d` with an optional leading sign.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Scalar::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

/// Coefficient prefix for a term: `""` for 1, `"-"` for -1, `"c*"` otherwise.
pub(crate) fn coefficient_prefix(c: &Scalar) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{c}*")
    }
}

/// Joins signed terms as `a + b - c`; terms arrive with their own leading `-`.
pub(crate) fn join_terms<I: IntoIterator<Item = String>>(terms: I) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_by_cross_multiplication() {
        // 1/2 + 1/3 = (1*3 + 1*2) / (2*3)
        assert_eq!(scalar_arith(ScalarOp::Add, &ratio(1, 2), &ratio(1, 3)), ratio(5, 6));
    }

    #[test]
    fn unit_and_inverse() {
        for x in [int(0), int(7), ratio(-3, 4)] {
            assert_eq!(scalar_arith(ScalarOp::Mul, &x, &int(1)), x);
            let n = scalar_arith(ScalarOp::Neg, &x, &int(0));
            assert!(scalar_arith(ScalarOp::Add, &x, &n).is_zero());
        }
    }

    #[test]
    fn lowest_terms() {
        let x = ratio(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_scalar("-3"), Some(int(-3)));
        assert_eq!(parse_scalar("4/6"), Some(ratio(2, 3)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
    }
}
