//! The ring `Z[1/k]` of `k`-adic fractions `n / k^r`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{EuclideanRing, Ring};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `numerator / base^exponent`, canonical: `exponent = 0` or `base` does not
/// divide `numerator`. Zero is `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KadicFraction {
    base: BigInt,
    numerator: BigInt,
    exponent: u32,
}

impl KadicFraction {
    pub fn base(&self) -> &BigInt {
        &self.base
    }
    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_rational(&self) -> Scalar {
        Scalar::new(self.numerator.clone(), num_traits::pow(self.base.clone(), self.exponent as usize))
    }

    fn canonical(base: BigInt, mut numerator: BigInt, mut exponent: u32) -> Self {
        if numerator.is_zero() {
            return KadicFraction { base, numerator, exponent: 0 };
        }
        while exponent > 0 {
            let (q, r) = numerator.div_rem(&base);
            if !r.is_zero() {
                break;
            }
            numerator = q;
            exponent -= 1;
        }
        KadicFraction { base, numerator, exponent }
    }

    fn lift(&self, exponent: u32) -> BigInt {
        debug_assert!(exponent >= self.exponent);
        &self.numerator * num_traits::pow(self.base.clone(), (exponent - self.exponent) as usize)
    }
}

impl std::fmt::Display for KadicFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

fn check_base(k: &BigInt) -> Result<()> {
    if *k < BigInt::from(2) {
        Err(Error::InvalidBase(k.to_string()))
    } else {
        Ok(())
    }
}

/// Canonical form of `numerator / k^r` with minimal exponent.
pub fn kadic_normalize(k: &BigInt, numerator: &BigInt, r: u32) -> Result<KadicFraction> {
    check_base(k)?;
    Ok(KadicFraction::canonical(k.clone(), numerator.clone(), r))
}

/// Removes from `n` every prime factor it shares with `k`.
pub(crate) fn strip_base_primes(n: &BigInt, k: &BigInt) -> BigInt {
    let mut n = n.clone();
    if n.is_zero() {
        return n;
    }
    loop {
        let g = n.gcd(k);
        if g.is_one() {
            return n;
        }
        n /= g;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KadicRing {
    k: BigInt,
}

impl KadicRing {
    pub fn new(k: BigInt) -> Result<Self> {
        check_base(&k)?;
        Ok(KadicRing { k })
    }

    pub fn base(&self) -> &BigInt {
        &self.k
    }

    pub fn elem(&self, numerator: BigInt, exponent: u32) -> KadicFraction {
        KadicFraction::canonical(self.k.clone(), numerator, exponent)
    }

    pub fn integer(&self, n: BigInt) -> KadicFraction {
        self.elem(n, 0)
    }

    /// `Some` exactly when `q` lies in `Z[1/k]`.
    pub fn from_rational(&self, q: &Scalar) -> Option<KadicFraction> {
        let d = q.denom();
        let limit = d.bits() as u32 + 1;
        let mut power = BigInt::one();
        for r in 0..=limit {
            if (&power % d).is_zero() {
                let n = q.numer() * (&power / d);
                return Some(self.elem(n, r));
            }
            power *= &self.k;
        }
        None
    }
}

impl Ring for KadicRing {
    type Elem = KadicFraction;

    fn zero(&self) -> KadicFraction {
        self.integer(BigInt::zero())
    }
    fn one(&self) -> KadicFraction {
        self.integer(BigInt::one())
    }
    fn from_scalar(&self, c: &Scalar) -> KadicFraction {
        self.from_rational(c).expect("scalar outside Z[1/k]")
    }
    fn add(&self, x: &KadicFraction, y: &KadicFraction) -> KadicFraction {
        let r = x.exponent.max(y.exponent);
        self.elem(x.lift(r) + y.lift(r), r)
    }
    fn neg(&self, x: &KadicFraction) -> KadicFraction {
        KadicFraction { numerator: -&x.numerator, ..x.clone() }
    }
    fn mul(&self, x: &KadicFraction, y: &KadicFraction) -> KadicFraction {
        self.elem(&x.numerator * &y.numerator, x.exponent + y.exponent)
    }
    fn render(&self, x: &KadicFraction) -> String {
        x.to_string()
    }
    fn is_zero(&self, x: &KadicFraction) -> bool {
        x.numerator.is_zero()
    }
}

impl EuclideanRing for KadicRing {
    fn size(&self, x: &KadicFraction) -> BigUint {
        strip_base_primes(&x.numerator, &self.k).magnitude().clone()
    }

    fn div_rem(&self, x: &KadicFraction, y: &KadicFraction) -> (KadicFraction, KadicFraction) {
        assert!(!self.is_zero(y), "division by zero in Z[1/k]");
        let (unit_inv, y_core) = self.normalize(y);
        let b = y_core.numerator.clone();
        if b.is_one() {
            return (self.mul(x, &unit_inv), self.zero());
        }
        // remainder c in [0, b) with x - c divisible by b: c = n * (k^r)^{-1} mod b
        let kr = num_traits::pow(self.k.clone(), x.exponent as usize).mod_floor(&b);
        let inv = mod_inverse(&kr, &b).expect("k is a unit modulo its stripped divisor");
        let c = (&x.numerator * inv).mod_floor(&b);
        let rem = self.integer(c);
        let diff = self.sub(x, &rem);
        let q_core = self.elem(diff.numerator.clone() / &b, diff.exponent);
        debug_assert!((&diff.numerator % &b).is_zero());
        (self.mul(&q_core, &unit_inv), rem)
    }

    fn normalize(&self, x: &KadicFraction) -> (KadicFraction, KadicFraction) {
        if self.is_zero(x) {
            return (self.one(), self.zero());
        }
        let core = strip_base_primes(&x.numerator, &self.k).abs();
        let unit = Scalar::from_integer(core.clone()) / x.to_rational();
        let unit = self.from_rational(&unit).expect("stripped factor is a unit");
        (unit, self.integer(core))
    }

    fn smith(&self, m: &super::matrix::Matrix<KadicFraction>) -> super::smith::Smith<KadicFraction> {
        super::smith::smith_kadic(self, m)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else if (-&e.gcd).is_one() {
        Some((-e.x).mod_floor(m))
    } else {
        None
    }
}

impl PartialOrd for KadicFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.base == other.base).then(|| self.to_rational().cmp(&other.to_rational()))
    }
}
