//! Ring structure objects.
//!
//! Elements do not know their ring. A ring is a small value (`ScalarRing`,
//! `KadicRing`, `PolyRing`, `FreeAlgebra`, ...) that carries whatever context
//! the arithmetic needs and performs it.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Coefficient ring tag for the commutative base rings that appear as `A`, `B`
/// or as the central coefficients of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseRing {
    Z,
    Q,
}

impl BaseRing {
    pub fn contains(self, c: &Scalar) -> bool {
        match self {
            BaseRing::Z => c.is_integer(),
            BaseRing::Q => true,
        }
    }

    pub fn check(self, c: &Scalar) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::NotInRing {
                value: c.to_string(),
                ring: format!("{self:?}"),
            })
        }
    }
}

impl std::fmt::Display for BaseRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseRing::Z => write!(f, "Z"),
            BaseRing::Q => write!(f, "Q"),
        }
    }
}

/// A unital associative ring.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of a central coefficient. Callers guarantee the coefficient lies
    /// in the ring's prime subring (integers, or rationals for Q-algebras).
    fn from_scalar(&self, c: &Scalar) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn render(&self, x: &Self::Elem) -> String;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn is_one(&self, x: &Self::Elem) -> bool {
        *x == self.one()
    }

    fn pow(&self, x: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A commutative Euclidean domain, used for Smith forms and cokernels.
pub trait EuclideanRing: Ring {
    /// Euclidean size. Zero has size zero; every nonzero element has size at
    /// least one and units have the minimal size among nonzero elements.
    fn size(&self, x: &Self::Elem) -> BigUint;

    /// `x = q*y + r` with `r = 0` or `size(r) < size(y)`. `y` must be nonzero.
    fn div_rem(&self, x: &Self::Elem, y: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Canonical associate: returns `(u, n)` with `u` a unit and `u*x = n`.
    fn normalize(&self, x: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn is_unit(&self, x: &Self::Elem) -> bool {
        !self.is_zero(x) && {
            let (_, r) = self.div_rem(&self.one(), x);
            self.is_zero(&r)
        }
    }

    /// `Some(q)` with `x = q*y` when `y` divides `x`.
    fn exact_div(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(y) {
            return if self.is_zero(x) { Some(self.zero()) } else { None };
        }
        let (q, r) = self.div_rem(x, y);
        self.is_zero(&r).then_some(q)
    }

    /// Fails when the structure is not actually Euclidean (e.g. `Z[x]`).
    fn check_euclidean(&self) -> Result<()> {
        Ok(())
    }

    /// Smith form of `m`. The default is the generic pivoting algorithm;
    /// rings may route through a different kernel.
    fn smith(&self, m: &super::matrix::Matrix<Self::Elem>) -> super::smith::Smith<Self::Elem>
    where
        Self: Sized,
    {
        super::smith::smith_generic(self, m)
    }
}

/// `Z` or `Q` with elements stored as rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScalarRing(pub BaseRing);

impl Ring for ScalarRing {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn from_scalar(&self, c: &Scalar) -> Scalar {
        debug_assert!(self.0.contains(c));
        c.clone()
    }
    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x + y
    }
    fn neg(&self, x: &Scalar) -> Scalar {
        -x
    }
    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x * y
    }
    fn render(&self, x: &Scalar) -> String {
        x.to_string()
    }
}

impl EuclideanRing for ScalarRing {
    fn size(&self, x: &Scalar) -> BigUint {
        if x.is_zero() {
            return BigUint::zero();
        }
        match self.0 {
            BaseRing::Z => x.numer().magnitude().clone(),
            BaseRing::Q => BigUint::one(),
        }
    }

    fn div_rem(&self, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
        match self.0 {
            BaseRing::Z => {
                let (q, r) = int_div_rem(x.numer(), y.numer());
                (Scalar::from_integer(q), Scalar::from_integer(r))
            }
            BaseRing::Q => (x / y, Scalar::zero()),
        }
    }

    fn normalize(&self, x: &Scalar) -> (Scalar, Scalar) {
        if x.is_zero() {
            return (Scalar::one(), Scalar::zero());
        }
        match self.0 {
            BaseRing::Z if x.is_negative() => (-Scalar::one(), -x),
            BaseRing::Z => (Scalar::one(), x.clone()),
            BaseRing::Q => (x.recip(), Scalar::one()),
        }
    }
}

/// The integers with `BigInt` elements; the ring of `IntMatrix`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_scalar(&self, c: &Scalar) -> BigInt {
        debug_assert!(c.is_integer());
        c.to_integer()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn render(&self, x: &BigInt) -> String {
        x.to_string()
    }
}

impl EuclideanRing for IntegerRing {
    fn size(&self, x: &BigInt) -> BigUint {
        x.magnitude().clone()
    }
    fn div_rem(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        int_div_rem(x, y)
    }
    fn normalize(&self, x: &BigInt) -> (BigInt, BigInt) {
        if x.sign() == Sign::Minus {
            (-BigInt::one(), -x)
        } else {
            (BigInt::one(), x.clone())
        }
    }
}

/// Division with the remainder of least absolute value, which keeps the
/// Smith pivot loop short.
pub(crate) fn int_div_rem(x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let (mut q, mut r) = x.div_mod_floor(y);
    let twice: BigInt = &r * 2;
    if twice.abs() > y.abs() {
        q += 1;
        r -= y;
    }
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_remainder() {
        for x in -20i64..=20 {
            for y in [-7i64, -3, -1, 1, 2, 5] {
                let (q, r) = int_div_rem(&BigInt::from(x), &BigInt::from(y));
                assert_eq!(&q * y + &r, BigInt::from(x));
                assert!(r.abs() * 2 <= BigInt::from(y).abs());
            }
        }
    }

    #[test]
    fn pow_by_squaring() {
        let z = IntegerRing;
        assert_eq!(z.pow(&BigInt::from(3), 5), BigInt::from(243));
        assert_eq!(z.pow(&BigInt::from(7), 0), BigInt::one());
    }

    #[test]
    fn rational_field_units() {
        let q = ScalarRing(BaseRing::Q);
        let (u, n) = q.normalize(&Scalar::new(3.into(), 4.into()));
        assert_eq!(n, Scalar::one());
        assert_eq!(u, Scalar::new(4.into(), 3.into()));
        assert!(q.is_unit(&Scalar::from_integer(5.into())));
        assert!(!ScalarRing(BaseRing::Z).is_unit(&Scalar::from_integer(5.into())));
    }
}
