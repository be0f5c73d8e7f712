//! Dense integer polynomials in one variable.

use super::int::Int;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(pub Vec<Int>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Int::ONE])
    }

    pub fn constant(c: Int) -> Poly {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn from_i64(cs: &[i64]) -> Poly {
        let mut p = Poly(cs.iter().map(|&c| Int::S(c)).collect());
        p.trim();
        p
    }

    pub fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn is_const(&self) -> bool {
        self.0.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &Int {
        self.0.last().expect("lc of zero polynomial")
    }

    /// Number of factors of `q` dividing a nonzero polynomial.
    pub fn low_order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&mut self, k: usize) {
        self.0.drain(..k);
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.0.get(k), o.0.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(Int::neg).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Int::ZERO; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| a.mul(c)).collect())
    }

    pub fn div_int_exact(&self, c: &Int) -> Poly {
        Poly(self.0.iter().map(|a| a.div_exact(c)).collect())
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().signum() < 0 {
            g = g.neg();
        }
        if g.is_one() {
            self.clone()
        } else {
            self.div_int_exact(&g)
        }
    }

    /// Pseudo-remainder of `self` by `b`, kept primitive.
    fn prem(&self, b: &Poly) -> Poly {
        let mut a = self.clone();
        let db = b.deg();
        let lb = b.lc().clone();
        while !a.is_zero() && a.deg() >= db {
            let shift = a.deg() - db;
            let la = a.lc().clone();
            let mut t = a.scale(&lb);
            for (k, c) in b.0.iter().enumerate() {
                t.0[k + shift] = t.0[k + shift].sub(&c.mul(&la));
            }
            t.trim();
            a = t.primitive();
        }
        a
    }

    /// Primitive gcd with positive leading coefficient; constants give 1.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        if self.is_const() || o.is_const() {
            return Poly::one();
        }
        let (mut a, mut b) = if self.deg() >= o.deg() {
            (self.primitive(), o.primitive())
        } else {
            (o.primitive(), self.primitive())
        };
        loop {
            let r = a.prem(&b);
            if r.is_zero() {
                return b;
            }
            if r.is_const() {
                return Poly::one();
            }
            a = b;
            b = r;
        }
    }

    /// Exact quotient over the integers; `o` must divide `self` in Z[q].
    pub fn div_exact(&self, o: &Poly) -> Poly {
        if o.is_one() {
            return self.clone();
        }
        if self.is_zero() {
            return Poly::zero();
        }
        let db = o.deg();
        let lb = o.lc().clone();
        let mut a = self.clone();
        let mut quo = vec![Int::ZERO; self.deg() - db + 1];
        while !a.is_zero() && a.deg() >= db {
            let shift = a.deg() - db;
            let c = a.lc().div_exact(&lb);
            for (k, b) in o.0.iter().enumerate() {
                a.0[k + shift] = a.0[k + shift].sub(&b.mul(&c));
            }
            quo[shift] = c;
            a.trim();
        }
        debug_assert!(a.is_zero(), "inexact polynomial division");
        let mut p = Poly(quo);
        p.trim();
        p
    }

    /// p(-1/q) * q^deg.
    pub fn reverse_alternating(&self) -> Poly {
        let d = self.deg();
        let mut v = vec![Int::ZERO; self.0.len()];
        for (k, c) in self.0.iter().enumerate() {
            v[d - k] = if k % 2 == 1 { c.neg() } else { c.clone() };
        }
        let mut p = Poly(v);
        p.trim();
        p
    }
}
