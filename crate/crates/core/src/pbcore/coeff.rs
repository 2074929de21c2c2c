//! Non-negative integer coefficients.
//!
//! Values that fit in a `u64` are stored inline; every arithmetic operation is
//! checked and promotes to a [`BigUint`] on overflow, so constraint algebra
//! never wraps or loses precision.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A non-negative arbitrary-precision integer with a `u64` fast path.
///
/// Invariant: the `Big` variant only holds values larger than `u64::MAX`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(u64),
    Big(BigUint),
}

impl Coeff {
    pub const ZERO: Coeff = Coeff(Repr::Small(0));
    pub const ONE: Coeff = Coeff(Repr::Small(1));

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    /// The value as a `u64`, if it fits.
    pub fn as_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.to_biguint())
    }

    fn from_biguint(b: BigUint) -> Coeff {
        match b.to_u64() {
            Some(v) => Coeff(Repr::Small(v)),
            None => Coeff(Repr::Big(b)),
        }
    }

    /// Converts a signed big integer, mapping negative values to `None`.
    pub fn from_bigint(b: &BigInt) -> Option<Coeff> {
        b.to_biguint().map(Coeff::from_biguint)
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(s) = a.checked_add(*b) {
                return Coeff(Repr::Small(s));
            }
        }
        Coeff::from_biguint(self.to_biguint() + other.to_biguint())
    }

    /// `self - other`, floored at zero.
    pub fn saturating_sub(&self, other: &Coeff) -> Coeff {
        if self <= other {
            return Coeff::ZERO;
        }
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => Coeff(Repr::Small(a - b)),
            _ => Coeff::from_biguint(self.to_biguint() - other.to_biguint()),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(p) = a.checked_mul(*b) {
                return Coeff(Repr::Small(p));
            }
        }
        Coeff::from_biguint(self.to_biguint() * other.to_biguint())
    }

    /// Ceiling division. Panics if `divisor` is zero; callers check first.
    pub fn div_ceil(&self, divisor: &Coeff) -> Coeff {
        assert!(!divisor.is_zero(), "division by zero coefficient");
        match (&self.0, &divisor.0) {
            (Repr::Small(a), Repr::Small(b)) => Coeff(Repr::Small(a.div_ceil(*b))),
            _ => {
                let a = self.to_biguint();
                let b = divisor.to_biguint();
                let q = &a / &b;
                let q = if (&q * &b) == a { q } else { q + 1u32 };
                Coeff::from_biguint(q)
            }
        }
    }

    pub fn min_of(&self, other: &Coeff) -> Coeff {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::ZERO
    }
}

impl From<u64> for Coeff {
    fn from(v: u64) -> Self {
        Coeff(Repr::Small(v))
    }
}

impl From<u32> for Coeff {
    fn from(v: u32) -> Self {
        Coeff(Repr::Small(v as u64))
    }
}

impl From<usize> for Coeff {
    fn from(v: usize) -> Self {
        Coeff(Repr::Small(v as u64))
    }
}

impl From<BigUint> for Coeff {
    fn from(b: BigUint) -> Self {
        Coeff::from_biguint(b)
    }
}

impl PartialEq<u64> for Coeff {
    fn eq(&self, other: &u64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coeff {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<u64>() {
            return Ok(Coeff(Repr::Small(v)));
        }
        BigUint::from_str(s).map(Coeff::from_biguint)
    }
}

impl std::iter::Sum for Coeff {
    fn sum<I: Iterator<Item = Coeff>>(iter: I) -> Self {
        iter.fold(Coeff::ZERO, |acc, c| acc.add(&c))
    }
}

impl<'a> std::iter::Sum<&'a Coeff> for Coeff {
    fn sum<I: Iterator<Item = &'a Coeff>>(iter: I) -> Self {
        iter.fold(Coeff::ZERO, |acc, c| acc.add(c))
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::ZERO
    }

    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
}

impl std::ops::Add for Coeff {
    type Output = Coeff;

    fn add(self, rhs: Coeff) -> Coeff {
        Coeff::add(&self, &rhs)
    }
}
