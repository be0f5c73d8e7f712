//! Integers with an `i64` fast path that promote to `BigInt` on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary precision integer. `B` is only used when the value does not fit
/// in an `i64`, so derived equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    S(i64),
    B(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::S(0);
    pub const ONE: Int = Int::S(1);

    fn norm(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::S(v),
            None => Int::B(b),
        }
    }

    pub fn big(&self) -> BigInt {
        match self {
            Int::S(v) => BigInt::from(*v),
            Int::B(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::S(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::S(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::S(v) => v.signum() as i32,
            Int::B(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::S(v) => match v.checked_neg() {
                Some(r) => Int::S(r),
                None => Int::norm(-BigInt::from(*v)),
            },
            Int::B(b) => Int::norm(-b),
        }
    }

    pub fn add(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(r) = a.checked_add(*b) {
                return Int::S(r);
            }
        }
        Int::norm(self.big() + o.big())
    }

    pub fn sub(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::S(r);
            }
        }
        Int::norm(self.big() - o.big())
    }

    pub fn mul(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(r) = a.checked_mul(*b) {
                return Int::S(r);
            }
        }
        Int::norm(self.big() * o.big())
    }

    pub fn mul_i64(&self, k: i64) -> Int {
        self.mul(&Int::S(k))
    }

    /// Exact division; the caller guarantees `o` divides `self`.
    pub fn div_exact(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(r) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0);
                return Int::S(r);
            }
        }
        let (q, r) = self.big().div_rem(&o.big());
        debug_assert!(r.is_zero());
        Int::norm(q)
    }

    pub fn divides(&self, o: &Int) -> bool {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if *a != 0 && *a != -1 {
                return b % a == 0;
            }
        }
        if self.is_zero() {
            return o.is_zero();
        }
        (o.big() % self.big()).is_zero()
    }

    /// Non-negative gcd.
    pub fn gcd(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if *a != i64::MIN && *b != i64::MIN {
                return Int::S(a.gcd(b));
            }
        }
        Int::norm(self.big().gcd(&o.big()))
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::S(v) => Some(*v),
            Int::B(_) => None,
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::S(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::norm(b)
    }
}

impl Ord for Int {
    fn cmp(&self, o: &Int) -> Ordering {
        match (self, o) {
            (Int::S(a), Int::S(b)) => a.cmp(b),
            _ => self.big().cmp(&o.big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, o: &Int) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::S(v) => write!(f, "{v}"),
            Int::B(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
