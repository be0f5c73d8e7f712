//! Exact arithmetic in Q(q).
//!
//! A [`Scalar`] is `q^lo * p(q) / d(q)` with integer polynomials `p`, `d`
//! such that `p(0) != 0`, `d(0) != 0`, `gcd(p, d) = 1`, the joint integer
//! content is 1 and `d` has a positive leading coefficient. That form is
//! unique, so equality and hashing are structural.

mod int;
mod poly;

pub use int::Int;
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not in A0: valuation {0} is negative")]
    NotInA0(i32),
}

/// Order of vanishing at q = 0. `Infinity` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i32),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

/// Laurent polynomial `q^lo * p(q)` with `p(0) != 0` (or `p = 0`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent {
    pub lo: i32,
    pub p: Poly,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { lo: 0, p: Poly::zero() }
    }

    pub fn mono(c: Int, e: i32) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: e, p: Poly(vec![c]) }
    }

    fn normalized(mut lo: i32, mut p: Poly) -> Laurent {
        p.trim();
        if p.is_zero() {
            return Laurent::zero();
        }
        let k = p.low_order();
        if k > 0 {
            p.shift_down(k);
            lo += k as i32;
        }
        Laurent { lo, p }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    /// Highest exponent present.
    pub fn hi(&self) -> i32 {
        self.lo + self.p.deg() as i32
    }

    pub fn coeff(&self, e: i32) -> Int {
        if self.is_zero() || e < self.lo {
            return Int::ZERO;
        }
        self.p.0.get((e - self.lo) as usize).cloned().unwrap_or(Int::ZERO)
    }

    /// Nonzero terms as (exponent, coefficient), ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Int)> + '_ {
        self.p
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i32, c))
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let mut v = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (e, c) in self.terms() {
            v[(e - lo) as usize] = c.clone();
        }
        for (e, c) in o.terms() {
            let k = (e - lo) as usize;
            v[k] = v[k].add(c);
        }
        Laurent::normalized(lo, Poly(v))
    }

    /// In-place `self += c * q^e`.
    pub fn add_term(&mut self, c: &Int, e: i32) {
        if c.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = Laurent::mono(c.clone(), e);
            return;
        }
        if e < self.lo {
            let pad = (self.lo - e) as usize;
            let mut v = vec![Int::ZERO; pad];
            v.append(&mut self.p.0);
            self.p.0 = v;
            self.lo = e;
        }
        let k = (e - self.lo) as usize;
        if k >= self.p.0.len() {
            self.p.0.resize(k + 1, Int::ZERO);
        }
        self.p.0[k] = self.p.0[k].add(c);
        if self.p.0[k].is_zero() {
            let p = std::mem::take(&mut self.p);
            *self = Laurent::normalized(self.lo, p);
        }
    }

    pub fn neg(&self) -> Laurent {
        Laurent { lo: self.lo, p: self.p.neg() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        Laurent::normalized(self.lo + o.lo, self.p.mul(&o.p))
    }

    /// Multiply by `(-1)^neg * q^e`.
    pub fn mul_mono(&self, neg: bool, e: i32) -> Laurent {
        Laurent {
            lo: self.lo + e,
            p: if neg { self.p.neg() } else { self.p.clone() },
        }
    }
}

/// An element of Q(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { num: Laurent::zero(), den: Poly::one() }
    }

    pub fn one() -> Scalar {
        Scalar::from_i64(1)
    }

    pub fn from_i64(c: i64) -> Scalar {
        Scalar { num: Laurent::mono(Int::S(c), 0), den: Poly::one() }
    }

    pub fn from_int(c: Int) -> Scalar {
        Scalar { num: Laurent::mono(c, 0), den: Poly::one() }
    }

    /// q^e
    pub fn q_pow(e: i32) -> Scalar {
        Scalar { num: Laurent::mono(Int::ONE, e), den: Poly::one() }
    }

    /// (-1)^neg q^e
    pub fn mono(neg: bool, e: i32) -> Scalar {
        Scalar {
            num: Laurent::mono(Int::S(if neg { -1 } else { 1 }), e),
            den: Poly::one(),
        }
    }

    pub fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    pub fn from_laurent(l: Laurent) -> Scalar {
        let l = Laurent::normalized(l.lo, l.p);
        Scalar { num: l, den: Poly::one() }
    }

    /// Laurent polynomial from (exponent, coefficient) pairs.
    pub fn laurent(terms: &[(i32, i64)]) -> Scalar {
        let mut l = Laurent::zero();
        for &(e, c) in terms {
            l.add_term(&Int::S(c), e);
        }
        Scalar::from_laurent(l)
    }

    /// Build `num / den` from arbitrary Laurent data, canonicalizing.
    pub fn from_parts(num: Laurent, den: Laurent) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make(num.lo - den.lo, num.p, den.p))
    }

    fn make(mut lo: i32, mut p: Poly, mut d: Poly) -> Scalar {
        p.trim();
        d.trim();
        if p.is_zero() {
            return Scalar::zero();
        }
        let k = p.low_order();
        if k > 0 {
            p.shift_down(k);
            lo += k as i32;
        }
        let k = d.low_order();
        if k > 0 {
            d.shift_down(k);
            lo -= k as i32;
        }
        if !d.is_const() {
            let g = p.gcd(&d);
            if !g.is_one() {
                p = p.div_exact(&g);
                d = d.div_exact(&g);
            }
        }
        Scalar::fix_content(Laurent { lo, p }, d)
    }

    fn fix_content(mut num: Laurent, mut den: Poly) -> Scalar {
        if den.is_one() {
            return Scalar { num, den };
        }
        let mut g = den.content().gcd(&num.p.content());
        if den.lc().signum() < 0 {
            g = g.neg();
        }
        if !g.is_one() {
            num.p = num.p.div_int_exact(&g);
            den = den.div_int_exact(&g);
        }
        Scalar { num, den }
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.lo == 0 && self.num.p.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Total number of stored coefficients, a rough size measure.
    pub fn size(&self) -> usize {
        self.num.p.0.len() + self.den.0.len()
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.add(&o.num), den: Poly::one() };
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            return Scalar::make(n.lo, n.p, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let (b, d) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (self.den.div_exact(&g), o.den.div_exact(&g))
        };
        let x = Laurent { lo: self.num.lo, p: self.num.p.mul(&d) };
        let y = Laurent { lo: o.num.lo, p: o.num.p.mul(&b) };
        let n = x.add(&y);
        Scalar::make(n.lo, n.p, self.den.mul(&d))
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = self.num.p.gcd(&o.den);
        let g2 = o.num.p.gcd(&self.den);
        let a = self.num.p.div_exact(&g1);
        let d = o.den.div_exact(&g1);
        let c = o.num.p.div_exact(&g2);
        let b = self.den.div_exact(&g2);
        Scalar::fix_content(
            Laurent { lo: self.num.lo + o.num.lo, p: a.mul(&c) },
            b.mul(&d),
        )
    }

    /// Multiply by `(-1)^neg q^e`.
    pub fn mul_mono(&self, neg: bool, e: i32) -> Scalar {
        Scalar { num: self.num.mul_mono(neg, e), den: self.den.clone() }
    }

    pub fn mul_i64(&self, k: i64) -> Scalar {
        self.mul(&Scalar::from_i64(k))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::make(-self.num.lo, self.den.clone(), self.num.p.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Division that panics on a zero divisor; use [`Scalar::checked_div`]
    /// when the divisor is not known to be nonzero.
    pub fn div(&self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }

    pub fn pow(&self, k: i32) -> Scalar {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinity
        } else {
            Valuation::Finite(self.num.lo)
        }
    }

    pub fn in_a0(&self) -> bool {
        self.is_zero() || self.num.lo >= 0
    }

    /// Leading coefficient of the q-adic expansion.
    pub fn lowest_coeff(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::from_integer(BigInt::from(0));
        }
        BigRational::new(self.num.p.0[0].big(), self.den.0[0].big())
    }

    /// Value at q = 0 of an element of A0.
    pub fn mod_q(&self) -> Result<BigRational, ScalarError> {
        match self.valuation() {
            Valuation::Infinity => Ok(BigRational::from_integer(BigInt::from(0))),
            Valuation::Finite(v) if v < 0 => Err(ScalarError::NotInA0(v)),
            Valuation::Finite(0) => Ok(self.lowest_coeff()),
            Valuation::Finite(_) => Ok(BigRational::from_integer(BigInt::from(0))),
        }
    }

    /// True when `self = ±q^d (1 + q f)` with f in A0; returns the sign.
    pub fn unit_sign_at(&self, d: i32) -> Option<i32> {
        if self.valuation() != Valuation::Finite(d) {
            return None;
        }
        let a = &self.num.p.0[0];
        let b = &self.den.0[0];
        if a == b {
            Some(1)
        } else if a.neg() == *b {
            Some(-1)
        } else {
            None
        }
    }

    /// The substitution q -> -q^{-1}.
    pub fn omega(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let dp = self.num.p.deg() as i32;
        let dd = self.den.deg() as i32;
        let mut p = self.num.p.reverse_alternating();
        if self.num.lo.rem_euclid(2) == 1 {
            p = p.neg();
        }
        let d = self.den.reverse_alternating();
        Scalar::make(-self.num.lo - dp + dd, p, d)
    }

    /// Numerator terms (exponent, coefficient) including the q-power shift.
    pub fn num_terms(&self) -> Vec<(i32, BigInt)> {
        self.num.terms().map(|(e, c)| (e, c.big())).collect()
    }

    pub fn den_terms(&self) -> Vec<(i32, BigInt)> {
        self.den
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i32, c.big()))
            .collect()
    }

    pub fn from_terms(num: &[(i32, BigInt)], den: &[(i32, BigInt)]) -> Result<Scalar, ScalarError> {
        let mut n = Laurent::zero();
        for (e, c) in num {
            n.add_term(&Int::from(c.clone()), *e);
        }
        let mut d = Laurent::zero();
        for (e, c) in den {
            d.add_term(&Int::from(c.clone()), *e);
        }
        Scalar::from_parts(n, d)
    }
}

fn fmt_laurent(f: &mut fmt::Formatter<'_>, l: &Laurent) -> fmt::Result {
    if l.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in l.terms().enumerate() {
        let neg = c.signum() < 0;
        let a = c.abs();
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        match (a.is_one(), e) {
            (_, 0) => write!(f, "{a}")?,
            (true, 1) => write!(f, "q")?,
            (true, _) => write!(f, "q^{e}")?,
            (false, 1) => write!(f, "{a}*q")?,
            (false, _) => write!(f, "{a}*q^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_laurent(f, &self.num);
        }
        write!(f, "(")?;
        fmt_laurent(f, &self.num)?;
        write!(f, ")/(")?;
        fmt_laurent(f, &Laurent { lo: 0, p: self.den.clone() })?;
        write!(f, ")")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Scalar {
        Scalar::from_i64(c)
    }
}

/// [s]_{q^d}
pub fn q_int(s: u32, d: u32) -> Scalar {
    let mut l = Laurent::zero();
    for k in 0..s as i32 {
        l.add_term(&Int::ONE, d as i32 * (s as i32 - 1 - 2 * k));
    }
    Scalar::from_laurent(l)
}

/// {s}_{q^d}
pub fn q_odd_int(s: u32, d: u32) -> Scalar {
    let mut l = Laurent::zero();
    for k in 0..s as i32 {
        let sign = if (s as i32 - 1 - k) % 2 == 0 { 1 } else { -1 };
        l.add_term(&Int::S(sign), d as i32 * (s as i32 - 1 - 2 * k));
    }
    Scalar::from_laurent(l)
}

/// [s]_{q^d}!
pub fn q_int_fact(s: u32, d: u32) -> Scalar {
    (1..=s).fold(Scalar::one(), |acc, k| acc.mul(&q_int(k, d)))
}

/// {s}_{q^d}!
pub fn q_odd_int_fact(s: u32, d: u32) -> Scalar {
    (1..=s).fold(Scalar::one(), |acc, k| acc.mul(&q_odd_int(k, d)))
}
