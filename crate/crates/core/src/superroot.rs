//! Root data for b, c and d of rank (m|n).

use crate::qscalar::Scalar;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub const MAX_RANK: usize = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid algebra: need m >= 2, n >= 1 and m + n <= {MAX_RANK} (got m={0}, n={1})")]
    BadRank(usize, usize),
    #[error("unknown family {0:?}; expected b, c or d")]
    BadFamily(String),
    #[error("({0},{1}) is not a root of the radical")]
    NotRadical(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, RootError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "b" => Ok(Family::B),
            "c" => Ok(Family::C),
            "d" => Ok(Family::D),
            _ => Err(RootError::BadFamily(s.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::B => "b",
            Family::C => "c",
            Family::D => "d",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraType {
    pub family: Family,
    pub m: usize,
    pub n: usize,
}

impl AlgebraType {
    pub fn new(family: Family, m: usize, n: usize) -> Result<AlgebraType, RootError> {
        if m < 2 || n < 1 || m + n > MAX_RANK {
            return Err(RootError::BadRank(m, n));
        }
        Ok(AlgebraType { family, m, n })
    }

    /// r = 2 for b, 1 for c and d.
    pub fn r(&self) -> i32 {
        if self.family == Family::B {
            2
        } else {
            1
        }
    }

    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    /// Letters are 1-based; letters above m are odd.
    pub fn is_odd_letter(&self, a: usize) -> bool {
        a > self.m
    }

    /// (δ_a|δ_a)
    pub fn delta_norm(&self, a: usize) -> i32 {
        if self.is_odd_letter(a) {
            -self.r()
        } else {
            self.r()
        }
    }

    /// The signed letter parameter 𝚚_a = ±q^{±r} as (negative, exponent).
    pub fn qa(&self, a: usize) -> QMono {
        QMono { neg: self.is_odd_letter(a), exp: self.delta_norm(a) }
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}|{}", self.family, self.m, self.n)
    }
}

/// Weight in the δ basis; slot `a - 1` holds the δ_a coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub [i16; MAX_RANK]);

impl Weight {
    pub fn zero() -> Weight {
        Weight::default()
    }

    /// δ_a for a 1-based letter.
    pub fn delta(a: usize) -> Weight {
        let mut w = Weight::zero();
        w.0[a - 1] = 1;
        w
    }

    pub fn from_coords(c: &[i32]) -> Weight {
        let mut w = Weight::zero();
        for (k, &v) in c.iter().enumerate() {
            w.0[k] = v as i16;
        }
        w
    }

    pub fn coords(&self, rank: usize) -> Vec<i32> {
        self.0[..rank].iter().map(|&v| v as i32).collect()
    }

    pub fn get(&self, a: usize) -> i32 {
        self.0[a - 1] as i32
    }

    pub fn add(&self, o: &Weight) -> Weight {
        let mut w = *self;
        for k in 0..MAX_RANK {
            w.0[k] += o.0[k];
        }
        w
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Weight {
        let mut w = *self;
        for v in w.0.iter_mut() {
            *v = -*v;
        }
        w
    }

    pub fn scale(&self, k: i32) -> Weight {
        let mut w = *self;
        for v in w.0.iter_mut() {
            *v *= k as i16;
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// Sum of coordinates.
    pub fn size(&self) -> i32 {
        self.0.iter().map(|&v| v as i32).sum()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&v| v != 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// A signed power of q, the values taken by 𝐪(μ, ν).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QMono {
    pub neg: bool,
    pub exp: i32,
}

impl QMono {
    pub const ONE: QMono = QMono { neg: false, exp: 0 };

    pub fn mul(self, o: QMono) -> QMono {
        QMono { neg: self.neg ^ o.neg, exp: self.exp + o.exp }
    }

    pub fn inv(self) -> QMono {
        QMono { neg: self.neg, exp: -self.exp }
    }

    pub fn pow(self, k: i32) -> QMono {
        QMono { neg: self.neg && k.rem_euclid(2) == 1, exp: self.exp * k }
    }

    pub fn scalar(self) -> Scalar {
        Scalar::mono(self.neg, self.exp)
    }
}

/// (μ|ν)
pub fn bilinear(g: &AlgebraType, mu: &Weight, nu: &Weight) -> i32 {
    (1..=g.rank()).map(|a| g.delta_norm(a) * mu.get(a) * nu.get(a)).sum()
}

/// 𝐪(μ,ν) = ∏ 𝚚_a^{μ_a ν_a}.
pub fn q_factor(g: &AlgebraType, mu: &Weight, nu: &Weight) -> QMono {
    let mut odd = 0;
    for a in g.m + 1..=g.rank() {
        odd += mu.get(a) * nu.get(a);
    }
    QMono { neg: odd.rem_euclid(2) == 1, exp: bilinear(g, mu, nu) }
}

/// Simple roots α_0, ..., α_{m+n-1}.
pub fn simple_roots(g: &AlgebraType) -> Vec<Weight> {
    let mut v = Vec::with_capacity(g.rank());
    let a0 = match g.family {
        Family::B => Weight::delta(1).neg(),
        Family::C => Weight::delta(1).scale(-2),
        Family::D => Weight::delta(1).add(&Weight::delta(2)).neg(),
    };
    v.push(a0);
    for i in 1..g.rank() {
        v.push(Weight::delta(i).sub(&Weight::delta(i + 1)));
    }
    v
}

/// Word over the letters 0..=14, packed four bits per letter so that the
/// integer order is the lexicographic order with a proper prefix smaller.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub u128);

impl Word {
    pub const MAX_LEN: usize = 32;

    pub fn empty() -> Word {
        Word(0)
    }

    pub fn from_letters(ls: &[u8]) -> Word {
        assert!(ls.len() <= Self::MAX_LEN, "word too long");
        let mut w = Word::empty();
        for &l in ls {
            w = w.push(l);
        }
        w
    }

    /// w[a..b] = a, a+1, ..., b
    pub fn range(a: u8, b: u8) -> Word {
        Word::from_letters(&(a..=b).collect::<Vec<_>>())
    }

    pub fn len(&self) -> usize {
        if self.0 == 0 {
            0
        } else {
            (131 - self.0.trailing_zeros() as usize) / 4
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn letter(&self, k: usize) -> u8 {
        ((self.0 >> (124 - 4 * k)) & 0xf) as u8 - 1
    }

    pub fn push(&self, l: u8) -> Word {
        debug_assert!(l < 15);
        let n = self.len();
        assert!(n < Self::MAX_LEN, "word too long");
        Word(self.0 | ((l as u128 + 1) << (124 - 4 * n)))
    }

    pub fn concat(&self, o: &Word) -> Word {
        let n = self.len();
        assert!(n + o.len() <= Self::MAX_LEN, "word too long");
        if n == 0 {
            return *o;
        }
        Word(self.0 | (o.0 >> (4 * n)))
    }

    pub fn prefix(&self, k: usize) -> Word {
        if k == 0 {
            return Word(0);
        }
        if k >= 32 {
            return *self;
        }
        Word(self.0 & !(u128::MAX >> (4 * k)))
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        if k >= 32 {
            return Word(0);
        }
        Word(self.0 << (4 * k))
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.len()).map(|k| self.letter(k)).collect()
    }

    pub fn last(&self) -> Option<u8> {
        let n = self.len();
        (n > 0).then(|| self.letter(n - 1))
    }

    pub fn first(&self) -> Option<u8> {
        (!self.is_empty()).then(|| self.letter(0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.letters())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters().iter().map(|l| l.to_string()).collect();
        write!(f, "w[{}]", s.join(","))
    }
}

/// Strictly smaller than each proper suffix.
pub fn is_lyndon(w: &Word) -> bool {
    let n = w.len();
    n > 0 && (1..n).all(|k| *w < w.suffix_from(k))
}

/// |w| = α_{i_1} + ... + α_{i_r}.
pub fn weight_of_word(g: &AlgebraType, w: &Word) -> Weight {
    let s = simple_roots(g);
    w.letters().iter().fold(Weight::zero(), |acc, &l| acc.add(&s[l as usize]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityClass {
    Even,
    Isotropic,
    NonIsotropicOdd,
}

impl ParityClass {
    pub fn name(&self) -> &'static str {
        match self {
            ParityClass::Even => "even",
            ParityClass::Isotropic => "isotropic",
            ParityClass::NonIsotropicOdd => "nonisotropic_odd",
        }
    }
}

/// Pair encoding of a radical root: (i,i) = -2δ_i/r, (i,j) = -δ_i-δ_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: u8,
    pub j: u8,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Root {
        Root { i: i as u8, j: j as u8 }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// A root of the radical.
    Radical(Root),
    /// α_a + ... + α_b = δ_a - δ_{b+1} with 1 <= a <= b.
    Levi(u8, u8),
}

#[derive(Clone, Debug)]
pub struct RootInfo {
    pub kind: RootKind,
    pub weight: Weight,
    pub ht: u32,
    pub class: ParityClass,
    pub word: Word,
    /// (β|β)
    pub norm: i32,
    pub odd: bool,
}

impl RootInfo {
    pub fn is_isotropic(&self) -> bool {
        self.class == ParityClass::Isotropic
    }

    pub fn radical(&self) -> Option<Root> {
        match self.kind {
            RootKind::Radical(r) => Some(r),
            RootKind::Levi(..) => None,
        }
    }
}

/// All reduced positive roots. Indices `0..n_rad` are the radical roots in
/// ≺ order; Levi roots follow, also in word order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub g: AlgebraType,
    pub roots: Vec<RootInfo>,
    pub n_rad: usize,
    pub simple: Vec<Weight>,
    by_word: HashMap<Word, usize>,
    by_pair: HashMap<Root, usize>,
    by_weight: HashMap<Weight, usize>,
}

fn good_lyndon_words(g: &AlgebraType) -> Vec<Word> {
    let top = (g.rank() - 1) as u8;
    let mut out = Vec::new();
    let cat = |a: Word, b: Word| a.concat(&b);
    for i in 1..=top {
        for j in i..=top {
            out.push(Word::range(i, j));
        }
    }
    match g.family {
        Family::B => {
            for k in 0..=top {
                out.push(Word::range(0, k));
            }
            for j in 0..=top {
                for k in j + 1..=top {
                    out.push(cat(Word::range(0, j), Word::range(0, k)));
                }
            }
        }
        Family::C => {
            for k in 0..=top {
                out.push(Word::range(0, k));
            }
            for k in 1..=top {
                for j in 1..k {
                    out.push(cat(Word::range(0, k), Word::range(1, j)));
                }
            }
            for k in 1..g.m as u8 {
                out.push(cat(Word::range(0, k), Word::range(1, k)));
            }
        }
        Family::D => {
            let head = |k: u8| {
                if k < 2 {
                    Word::from_letters(&[0])
                } else {
                    cat(Word::from_letters(&[0]), Word::range(2, k))
                }
            };
            out.push(head(0));
            for i in 2..=top {
                out.push(head(i));
            }
            for k in 2..=top {
                for j in 1..k {
                    out.push(cat(head(k), Word::range(1, j)));
                }
            }
            for k in (g.m as u8).max(2)..=top {
                out.push(cat(head(k), Word::range(1, k)));
            }
        }
    }
    out
}

impl RootSystem {
    pub fn new(g: AlgebraType) -> RootSystem {
        let simple = simple_roots(&g);
        let mut rad = Vec::new();
        let mut levi = Vec::new();
        for w in good_lyndon_words(&g) {
            let weight = weight_of_word(&g, &w);
            let norm = bilinear(&g, &weight, &weight);
            let odd = (g.m + 1..=g.rank()).map(|a| weight.get(a)).sum::<i32>().rem_euclid(2) == 1;
            let class = if norm == 0 {
                ParityClass::Isotropic
            } else if odd {
                ParityClass::NonIsotropicOdd
            } else {
                ParityClass::Even
            };
            let kind = if w.first() == Some(0) {
                RootKind::Radical(pair_of_weight(&g, &weight))
            } else {
                let ls = w.letters();
                RootKind::Levi(ls[0], *ls.last().unwrap())
            };
            let info = RootInfo { kind, weight, ht: w.len() as u32, class, word: w, norm, odd };
            if matches!(kind, RootKind::Radical(_)) {
                rad.push(info);
            } else {
                levi.push(info);
            }
        }
        rad.sort_by_key(|r| r.word);
        levi.sort_by_key(|r| r.word);
        let n_rad = rad.len();
        let mut roots = rad;
        roots.extend(levi);
        let mut by_word = HashMap::new();
        let mut by_pair = HashMap::new();
        let mut by_weight = HashMap::new();
        for (k, r) in roots.iter().enumerate() {
            by_word.insert(r.word, k);
            by_weight.insert(r.weight, k);
            if let RootKind::Radical(p) = r.kind {
                by_pair.insert(p, k);
            }
        }
        RootSystem { g, roots, n_rad, simple, by_word, by_pair, by_weight }
    }

    pub fn radical(&self) -> &[RootInfo] {
        &self.roots[..self.n_rad]
    }

    pub fn info(&self, k: usize) -> &RootInfo {
        &self.roots[k]
    }

    pub fn pair(&self, k: usize) -> Root {
        self.roots[k].radical().expect("not a radical root")
    }

    pub fn index_of_word(&self, w: &Word) -> Option<usize> {
        self.by_word.get(w).copied()
    }

    pub fn index_of_weight(&self, w: &Weight) -> Option<usize> {
        self.by_weight.get(w).copied()
    }

    /// ≺ position (0-based) of a radical root.
    pub fn index(&self, r: Root) -> Result<usize, RootError> {
        self.by_pair.get(&r).copied().ok_or(RootError::NotRadical(r.i as usize, r.j as usize))
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        self.index(Root::new(i, j)).expect("radical root")
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.by_pair.contains_key(&Root::new(i, j))
    }

    /// Index of the simple root α_i.
    pub fn simple_index(&self, i: usize) -> usize {
        self.by_word[&Word::from_letters(&[i as u8])]
    }

    pub fn lyndon_word(&self, r: Root) -> Result<Word, RootError> {
        Ok(self.roots[self.index(r)?].word)
    }

    /// Membership in the full root system, including non-reduced multiples.
    pub fn is_root(&self, v: &Weight) -> bool {
        let g = &self.g;
        let nz: Vec<(usize, i32)> =
            (1..=g.rank()).filter(|&a| v.get(a) != 0).map(|a| (a, v.get(a))).collect();
        match nz.as_slice() {
            [(_, x), (_, y)] => x.abs() == 1 && y.abs() == 1,
            [(_, x)] if x.abs() == 1 => g.family == Family::B,
            [(a, x)] if x.abs() == 2 => match g.family {
                Family::B | Family::D => g.is_odd_letter(*a),
                Family::C => !g.is_odd_letter(*a),
            },
            _ => false,
        }
    }

    pub fn bilinear(&self, mu: &Weight, nu: &Weight) -> i32 {
        bilinear(&self.g, mu, nu)
    }

    pub fn q_factor(&self, mu: &Weight, nu: &Weight) -> QMono {
        q_factor(&self.g, mu, nu)
    }
}

fn pair_of_weight(g: &AlgebraType, w: &Weight) -> Root {
    let nz: Vec<usize> = (1..=g.rank()).filter(|&a| w.get(a) != 0).collect();
    match nz.as_slice() {
        [a] => Root::new(*a, *a),
        [a, b] => Root::new(*a, *b),
        _ => panic!("weight {w:?} is not a radical root"),
    }
}
