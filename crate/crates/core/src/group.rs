//! Abelian gain groups.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::signed::Sign;

pub trait AbelianGroup: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Solve `2x = a`, if possible.
    fn halve(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The element named by an integer (its image under ℤ → 𝔊).
    fn from_int(&self, k: i64) -> Self::Elem;

    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    /// Name used in instance files: `Z`, `Q` or `Zmod m`.
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn signed(&self, s: Sign, a: &Self::Elem) -> Self::Elem {
        match s {
            Sign::Plus => a.clone(),
            Sign::Minus => self.neg(a),
        }
    }

    fn scale(&self, k: i64, a: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = if k < 0 { self.neg(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn double(&self, a: &Self::Elem) -> Self::Elem {
        self.add(a, a)
    }
}

/// The integers ℤ with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl AbelianGroup for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn halve(&self, a: &BigInt) -> Option<BigInt> {
        a.is_even().then(|| a / 2)
    }

    fn from_int(&self, k: i64) -> BigInt {
        BigInt::from(k)
    }

    fn scale(&self, k: i64, a: &BigInt) -> BigInt {
        a * k
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
    }

    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        "Z".into()
    }
}

/// The rationals ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl AbelianGroup for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn halve(&self, a: &BigRational) -> Option<BigRational> {
        Some(a / BigInt::from(2))
    }

    fn from_int(&self, k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn name(&self) -> String {
        "Q".into()
    }
}

/// The cyclic group ℤ/mℤ, m ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    m: u64,
}

impl IntegersMod {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("modulus must be at least 1".into()));
        }
        Ok(IntegersMod { m })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
}

impl AbelianGroup for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.m - a % self.m) % self.m
    }

    fn halve(&self, a: &u64) -> Option<u64> {
        if self.m % 2 == 1 {
            let inv2 = self.m.div_ceil(2);
            Some(((*a as u128 * inv2 as u128) % self.m as u128) as u64)
        } else {
            (a % 2 == 0).then_some(a / 2)
        }
    }

    fn from_int(&self, k: i64) -> u64 {
        k.rem_euclid(self.m as i64) as u64
    }

    fn parse(&self, s: &str) -> Result<u64> {
        let k: BigInt = s.trim().parse().map_err(|_| Error::Parse(format!("not an integer residue: {s:?}")))?;
        Ok(k.mod_floor(&BigInt::from(self.m)).to_u64().expect("reduced residue fits"))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn name(&self) -> String {
        format!("Zmod {}", self.m)
    }
}

/// Gains that embed in ℚ.
pub trait RationalEmbedding: AbelianGroup {
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
}

impl RationalEmbedding for Integers {
    fn to_rational(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

impl RationalEmbedding for Rationals {
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    Rationals.format(q)
}

pub(crate) fn is_probable_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
