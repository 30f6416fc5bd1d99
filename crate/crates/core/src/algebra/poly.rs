//! Univariate polynomials in one central variable `x` over `Z` or `Q`.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::ring::{BaseRing, EuclideanRing, Ring};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolynomialElement {
    coeffs: Vec<Scalar>,
}

impl PolynomialElement {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolynomialElement { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Scalar {
        self.coeffs.get(n).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

/// Convolution product.
pub fn poly_mul(e1: &PolynomialElement, e2: &PolynomialElement) -> PolynomialElement {
    if e1.is_zero() || e2.is_zero() {
        return PolynomialElement::default();
    }
    let mut out = vec![Scalar::zero(); e1.coeffs.len() + e2.coeffs.len() - 1];
    for (i, a) in e1.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in e2.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    PolynomialElement::new(out)
}

fn poly_add(e1: &PolynomialElement, e2: &PolynomialElement) -> PolynomialElement {
    let n = e1.coeffs.len().max(e2.coeffs.len());
    PolynomialElement::new((0..n).map(|i| e1.coeff(i) + e2.coeff(i)).collect())
}

impl std::fmt::Display for PolynomialElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag_text = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match n {
                0 => write!(f, "{mag_text}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_text}")?;
                    }
                    write!(f, "x")?;
                    if n > 1 {
                        write!(f, "^{n}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub base: BaseRing,
}

impl PolyRing {
    pub fn new(base: BaseRing) -> Self {
        PolyRing { base }
    }

    pub fn x(&self) -> PolynomialElement {
        PolynomialElement::monomial(Scalar::one(), 1)
    }
}

impl Ring for PolyRing {
    type Elem = PolynomialElement;

    fn zero(&self) -> PolynomialElement {
        PolynomialElement::default()
    }
    fn one(&self) -> PolynomialElement {
        PolynomialElement::constant(Scalar::one())
    }
    fn from_scalar(&self, c: &Scalar) -> PolynomialElement {
        debug_assert!(self.base.contains(c));
        PolynomialElement::constant(c.clone())
    }
    fn add(&self, x: &PolynomialElement, y: &PolynomialElement) -> PolynomialElement {
        poly_add(x, y)
    }
    fn neg(&self, x: &PolynomialElement) -> PolynomialElement {
        x.scale(&-Scalar::one())
    }
    fn mul(&self, x: &PolynomialElement, y: &PolynomialElement) -> PolynomialElement {
        poly_mul(x, y)
    }
    fn render(&self, x: &PolynomialElement) -> String {
        x.to_string()
    }
    fn is_zero(&self, x: &PolynomialElement) -> bool {
        x.is_zero()
    }
}

impl EuclideanRing for PolyRing {
    fn size(&self, x: &PolynomialElement) -> BigUint {
        BigUint::from(x.coeffs.len())
    }

    fn div_rem(&self, x: &PolynomialElement, y: &PolynomialElement) -> (PolynomialElement, PolynomialElement) {
        let ly = y.leading().expect("division by the zero polynomial").clone();
        let dy = y.coeffs.len() - 1;
        let mut rem = x.coeffs.clone();
        let mut quot = vec![Scalar::zero(); x.coeffs.len().saturating_sub(dy)];
        while rem.len() > dy && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &ly;
            if !c.is_zero() {
                for (i, b) in y.coeffs.iter().enumerate() {
                    rem[top - dy + i] -= &c * b;
                }
                quot[top - dy] = c;
            }
            rem.pop();
        }
        (PolynomialElement::new(quot), PolynomialElement::new(rem))
    }

    fn normalize(&self, x: &PolynomialElement) -> (PolynomialElement, PolynomialElement) {
        match x.leading() {
            None => (self.one(), self.zero()),
            Some(l) => {
                let u = l.recip();
                (PolynomialElement::constant(u.clone()), x.scale(&u))
            }
        }
    }

    fn check_euclidean(&self) -> Result<()> {
        match self.base {
            BaseRing::Q => Ok(()),
            BaseRing::Z => Err(Error::Unsupported(
                "Z[x] is not a principal ideal domain; cokernels need a Q base".into(),
            )),
        }
    }
}
