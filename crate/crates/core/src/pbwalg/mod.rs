//! Root vectors of the radical, the ordered PBW basis with divided powers,
//! straightening by the commutator tables, derivations and the adjoint action
//! of the Levi part.
//!
//! Monomials are ordered products of divided powers 𝐟_γ^{(c_γ)}, indexed by
//! the position of γ in `RootSystem::roots`. Elements of the radical algebra
//! only use radical roots; Levi roots appear when a shuffle element is
//! expanded in the PBW basis of the whole negative half.

mod tables;
pub mod verify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::qscalar::{q_int, q_odd_int, Scalar};
use crate::qshuffle::{ShuffleVec, Shuffler, Trie};
use crate::superroot::{
    weight_of_word, AlgebraType, Family, ParityClass, QMono, Root, RootError, RootSystem, Weight, Word,
    MAX_RANK,
};

pub use tables::TableTerm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbwError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("inhomogeneous element")]
    Inhomogeneous,
    #[error("isotropic root {0} raised to power {1}")]
    IsotropicPower(Root, u32),
    #[error("{0}_{1} is not an l-direction")]
    NotLevi(char, usize),
    #[error("index {0} is out of range")]
    BadIndex(usize),
    #[error("shuffle element is not in the span of the PBW images (residual at {0})")]
    Residual(Word),
    #[error("result has a Levi factor: {0}")]
    LeavesRadical(String),
}

/// Normalization of root vectors whose shorter part is a non-isotropic odd
/// root: `Standard` divides by [r+1], `OddBraces` by {r+1}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    Standard,
    OddBraces,
}

/// Noncommutative polynomial in the generators f_i, keyed by generator words.
pub type FreeElement = HashMap<Word, Scalar>;

/// Simple-root multiplicities.
pub type Coords = [u8; MAX_RANK];

#[derive(Clone, Debug)]
pub struct Split {
    pub beta1: usize,
    pub beta2: usize,
    pub r: u32,
    pub denom: Scalar,
}

/// Exponents of an ordered product of divided powers, one slot per root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono(pub Vec<u8>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Position of the ≺-largest factor.
    pub fn top(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c > 0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k, c))
    }

    pub fn bumped(&self, k: usize, by: i32) -> Mono {
        let mut m = self.clone();
        m.0[k] = (m.0[k] as i32 + by) as u8;
        m
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgElement {
    pub terms: BTreeMap<Mono, Scalar>,
}

impl AlgElement {
    pub fn zero() -> AlgElement {
        AlgElement::default()
    }

    pub fn unit(n: usize) -> AlgElement {
        AlgElement::term(Mono::one(n), Scalar::one())
    }

    pub fn term(m: Mono, c: Scalar) -> AlgElement {
        let mut out = AlgElement::zero();
        out.add_term(m, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &AlgElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &o.terms {
            self.add_term(m.clone(), &x.mul(c));
        }
    }

    pub fn add(&self, o: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::one());
        out
    }

    pub fn sub(&self, o: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::from_i64(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> AlgElement {
        let mut out = AlgElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }
}

/// Per-algebra engine. Caches are filled lazily and are safe to share
/// between threads.
pub struct Pbw {
    pub rs: Arc<RootSystem>,
    pub sh: Shuffler,
    conv: Convention,
    splits: Vec<Option<Split>>,
    kappa: Vec<Scalar>,
    coords: Vec<Coords>,
    psi: Vec<OnceLock<ShuffleVec>>,
    tries: Vec<OnceLock<Trie>>,
    comm: Mutex<HashMap<(usize, usize), Arc<AlgElement>>>,
    rmul_memo: Mutex<HashMap<(Mono, usize), Arc<AlgElement>>>,
}

fn word_coords(w: &Word) -> Coords {
    let mut c = [0u8; MAX_RANK];
    for l in w.letters() {
        c[l as usize] += 1;
    }
    c
}

impl Pbw {
    pub fn new(g: AlgebraType) -> Pbw {
        Pbw::with_convention(g, Convention::Standard)
    }

    pub fn with_convention(g: AlgebraType, conv: Convention) -> Pbw {
        let rs = Arc::new(RootSystem::new(g));
        let sh = Shuffler::new(&rs);
        let n = rs.roots.len();
        let coords = rs.roots.iter().map(|r| word_coords(&r.word)).collect();
        let mut pbw = Pbw {
            rs,
            sh,
            conv,
            splits: vec![None; n],
            kappa: vec![Scalar::one(); n],
            coords,
            psi: (0..n).map(|_| OnceLock::new()).collect(),
            tries: (0..n).map(|_| OnceLock::new()).collect(),
            comm: Mutex::new(HashMap::new()),
            rmul_memo: Mutex::new(HashMap::new()),
        };
        pbw.build_splits();
        pbw
    }

    pub fn algebra(&self) -> AlgebraType {
        self.rs.g
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    pub fn n_roots(&self) -> usize {
        self.rs.roots.len()
    }

    pub fn split(&self, k: usize) -> Option<&Split> {
        self.splits[k].as_ref()
    }

    /// Ratio between this convention's root vector and the standard one.
    pub fn kappa(&self, k: usize) -> &Scalar {
        &self.kappa[k]
    }

    fn build_splits(&mut self) {
        let rs = self.rs.clone();
        let g = rs.g;
        let mut order: Vec<usize> = (0..rs.roots.len()).collect();
        order.sort_by_key(|&k| rs.roots[k].ht);
        for k in order {
            let info = &rs.roots[k];
            if info.ht == 1 {
                continue;
            }
            let exception = match info.radical() {
                Some(p) if g.family == Family::D && p.i == p.j => {
                    let u = p.i as usize - 1;
                    Some((rs.idx(u, u + 1), rs.simple_index(u)))
                }
                _ => None,
            };
            let (b1, b2, r, d, odd_s) = if let Some((b1, b2)) = exception {
                (b1, b2, 1, 1, false)
            } else {
                let w = info.word;
                let (b1, b2) = (1..w.len())
                    .rev()
                    .find_map(|cut| {
                        let (p, s) = (w.prefix(cut), w.suffix_from(cut));
                        if p >= s {
                            return None;
                        }
                        Some((rs.index_of_word(&p)?, rs.index_of_word(&s)?))
                    })
                    .expect("every good Lyndon word of length > 1 splits");
                let (w1, w2) = (&rs.roots[b1].weight, &rs.roots[b2].weight);
                let mut r = 0;
                while rs.is_root(&w1.sub(&w2.scale(r as i32 + 1))) {
                    r += 1;
                }
                let s = if rs.roots[b1].norm <= rs.roots[b2].norm { b1 } else { b2 };
                let ns = rs.roots[s].norm;
                let d = if ns == 0 { g.r() as u32 } else { ns.unsigned_abs() / 2 };
                (b1, b2, r, d, rs.roots[s].class == ParityClass::NonIsotropicOdd)
            };
            let std_den = q_int(r + 1, d);
            let denom = if odd_s && self.conv == Convention::OddBraces {
                q_odd_int(r + 1, d)
            } else {
                std_den.clone()
            };
            self.kappa[k] = self.kappa[b1].mul(&self.kappa[b2]).mul(&std_den).div(&denom);
            self.splits[k] = Some(Split { beta1: b1, beta2: b2, r, denom });
        }
    }

    /// The base z = q^d of the quantum integers attached to a root.
    pub fn root_qexp(&self, k: usize) -> u32 {
        let norm = self.rs.roots[k].norm;
        if norm == 0 {
            self.rs.g.r() as u32
        } else {
            norm.unsigned_abs() / 2
        }
    }

    /// [s] or {s} in the base of root k.
    pub fn root_qint(&self, k: usize, s: u32) -> Scalar {
        let d = self.root_qexp(k);
        match self.rs.roots[k].class {
            ParityClass::NonIsotropicOdd => q_odd_int(s, d),
            _ => q_int(s, d),
        }
    }

    pub fn root_fact(&self, k: usize, s: u32) -> Scalar {
        (1..=s).fold(Scalar::one(), |acc, j| acc.mul(&self.root_qint(k, j)))
    }

    pub fn root_index(&self, r: Root) -> Result<usize, PbwError> {
        Ok(self.rs.index(r)?)
    }

    /// 𝐪(β_a, β_b) for two root indices.
    pub fn qroots(&self, a: usize, b: usize) -> QMono {
        self.rs.q_factor(&self.rs.roots[a].weight, &self.rs.roots[b].weight)
    }

    // ---- root vectors ----

    pub fn root_vector(&self, beta: Root) -> Result<FreeElement, PbwError> {
        Ok(self.root_vector_at(self.root_index(beta)?))
    }

    pub fn root_vector_at(&self, k: usize) -> FreeElement {
        match &self.splits[k] {
            None => {
                let mut out = FreeElement::new();
                out.insert(self.rs.roots[k].word, Scalar::one());
                out
            }
            Some(sp) => {
                let x1 = self.root_vector_at(sp.beta1);
                let x2 = self.root_vector_at(sp.beta2);
                let qinv = self.qroots(sp.beta1, sp.beta2).inv().scalar();
                let mut out = free_mul(&x2, &x1);
                for (w, c) in free_mul(&x1, &x2) {
                    free_add(&mut out, w, &c.mul(&qinv).neg());
                }
                let inv = sp.denom.inv().expect("nonzero quantum integer");
                out.into_iter().map(|(w, c)| (w, c.mul(&inv))).collect()
            }
        }
    }

    /// Ψ(𝐟_γ), computed from the defining recursion.
    pub fn psi_root(&self, k: usize) -> &ShuffleVec {
        self.psi[k].get_or_init(|| match &self.splits[k] {
            None => ShuffleVec::word(self.rs.roots[k].word),
            Some(sp) => {
                let p1 = self.psi_root(sp.beta1);
                let p2 = self.psi_root(sp.beta2);
                let qinv = self.qroots(sp.beta1, sp.beta2).inv().scalar();
                let v = self.sh.shuffle(p2, p1).sub(&self.sh.shuffle(p1, p2).scale(&qinv));
                v.scale(&sp.denom.inv().expect("nonzero quantum integer"))
            }
        })
    }

    pub fn trie(&self, k: usize) -> &Trie {
        self.tries[k].get_or_init(|| self.sh.trie(self.psi_root(k)))
    }

    // ---- tables as algebra elements ----

    fn table_element(&self, terms: Vec<TableTerm>, scale: &Scalar) -> AlgElement {
        let n = self.n_roots();
        let mut out = AlgElement::zero();
        for (c, roots) in terms {
            let idx: Vec<usize> = roots.iter().map(|r| self.rs.idx(r.i as usize, r.j as usize)).collect();
            let mut c = c.mul(scale);
            for &k in &idx {
                c = c.div(&self.kappa[k]);
            }
            let prod = self.mul_factors(&AlgElement::unit(n), &idx);
            out.add_scaled(&prod, &c);
        }
        out
    }

    /// [𝐟_b, 𝐟_a]_𝐪 for radical indices a < b, from the tables.
    pub fn commutator(&self, a: usize, b: usize) -> Arc<AlgElement> {
        if let Some(v) = self.comm.lock().unwrap().get(&(a, b)) {
            return v.clone();
        }
        let terms = tables::commutator(&self.rs, self.rs.pair(a), self.rs.pair(b));
        let v = Arc::new(self.table_element(terms, &self.kappa[a].mul(&self.kappa[b])));
        self.comm.lock().unwrap().insert((a, b), v.clone());
        v
    }

    /// Raw table entry, before any rescaling or straightening.
    pub fn commutator_table(&self, alpha: Root, beta: Root) -> Vec<TableTerm> {
        tables::commutator(&self.rs, alpha, beta)
    }

    /// e_i · 𝐟_β from the table.
    pub fn e_table(&self, i: usize, k: usize) -> AlgElement {
        let terms = tables::e_action(&self.rs, i, self.rs.pair(k));
        self.table_element(terms, &self.kappa[k])
    }

    /// f_i · 𝐟_β from the table.
    pub fn f_table(&self, i: usize, k: usize) -> AlgElement {
        let terms = tables::f_action(&self.rs, i, self.rs.pair(k));
        self.table_element(terms, &self.kappa[k])
    }

    // ---- straightening ----

    /// m · 𝐟_g in the ordered basis.
    pub fn rmul(&self, m: &Mono, g: usize) -> Arc<AlgElement> {
        let key = (m.clone(), g);
        if let Some(v) = self.rmul_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let out = match m.top() {
            None => AlgElement::term(m.bumped(g, 1), Scalar::one()),
            Some(t) if t < g => AlgElement::term(m.bumped(g, 1), Scalar::one()),
            Some(t) if t == g => {
                if self.rs.roots[g].is_isotropic() {
                    AlgElement::zero()
                } else {
                    AlgElement::term(m.bumped(g, 1), self.root_qint(g, m.0[g] as u32 + 1))
                }
            }
            Some(t) => {
                // 𝐟_t^{(a)} = 𝐟_t^{(a-1)} 𝐟_t / [a], and
                // 𝐟_t 𝐟_g = 𝐪(β_g, β_t)^{-1} 𝐟_g 𝐟_t + [𝐟_t, 𝐟_g]_𝐪.
                let a = m.0[t] as u32;
                let rest = m.bumped(t, -1);
                let qinv = self.qroots(g, t).inv().scalar();
                let mut acc = AlgElement::zero();
                for (m2, c2) in &self.rmul(&rest, g).terms {
                    acc.add_scaled(&self.rmul(m2, t), &c2.mul(&qinv));
                }
                let br = self.commutator(g, t);
                for (m3, c3) in &br.terms {
                    let prod = self.mul_factors(&AlgElement::term(rest.clone(), Scalar::one()), &expand_factors(m3));
                    acc.add_scaled(&prod, &c3.div(&self.mono_fact(m3)));
                }
                acc.scale(&self.root_qint(t, a).inv().expect("nonzero quantum integer"))
            }
        };
        let out = Arc::new(out);
        self.rmul_memo.lock().unwrap().insert(key, out.clone());
        out
    }

    /// x · 𝐟_{k_1} ⋯ 𝐟_{k_s} (plain powers).
    pub fn mul_factors(&self, x: &AlgElement, idx: &[usize]) -> AlgElement {
        let mut cur = x.clone();
        for &g in idx {
            let mut next = AlgElement::zero();
            for (m, c) in &cur.terms {
                next.add_scaled(&self.rmul(m, g), c);
            }
            cur = next;
        }
        cur
    }

    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (my, cy) in &y.terms {
            let idx = expand_factors(my);
            let f = self.mono_fact(my);
            let p = self.mul_factors(x, &idx);
            out.add_scaled(&p, &cy.div(&f));
        }
        out
    }

    fn mono_fact(&self, m: &Mono) -> Scalar {
        m.factors().fold(Scalar::one(), |f, (k, c)| f.mul(&self.root_fact(k, c as u32)))
    }

    /// The product 𝐟_{β_1} ⋯ 𝐟_{β_s} in the ordered basis.
    pub fn straighten(&self, word: &[Root]) -> Result<AlgElement, PbwError> {
        let idx = word.iter().map(|&r| self.root_index(r)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.straighten_idx(&idx))
    }

    pub fn straighten_idx(&self, idx: &[usize]) -> AlgElement {
        self.mul_factors(&AlgElement::unit(self.n_roots()), idx)
    }

    pub fn root_element(&self, k: usize) -> AlgElement {
        AlgElement::term(Mono::one(self.n_roots()).bumped(k, 1), Scalar::one())
    }

    // ---- weights ----

    /// Σ c_γ γ over the factors; the weight of the monomial is its negative.
    pub fn mono_root_sum(&self, m: &Mono) -> Weight {
        m.factors().fold(Weight::zero(), |w, (k, c)| w.add(&self.rs.roots[k].weight.scale(c as i32)))
    }

    pub fn mono_coords(&self, m: &Mono) -> Coords {
        let mut out = [0u8; MAX_RANK];
        for (k, c) in m.factors() {
            for (o, x) in out.iter_mut().zip(self.coords[k].iter()) {
                *o += x * c;
            }
        }
        out
    }

    pub fn root_coords(&self, k: usize) -> &Coords {
        &self.coords[k]
    }

    /// Σ c_γ γ shared by all terms.
    pub fn root_sum(&self, x: &AlgElement) -> Result<Weight, PbwError> {
        let mut it = x.terms.keys().map(|m| self.mono_root_sum(m));
        let first = it.next().unwrap_or_default();
        if it.all(|w| w == first) {
            Ok(first)
        } else {
            Err(PbwError::Inhomogeneous)
        }
    }

    /// Splits an element into homogeneous components.
    pub fn components(&self, x: &AlgElement) -> Vec<AlgElement> {
        let mut by: BTreeMap<Weight, AlgElement> = BTreeMap::new();
        for (m, c) in &x.terms {
            by.entry(self.mono_root_sum(m)).or_default().add_term(m.clone(), c);
        }
        by.into_values().collect()
    }

    /// [x, y]_𝐪 = xy - 𝐪(|x|,|y|)^{-1} yx.
    pub fn q_bracket(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement, PbwError> {
        if x.is_zero() || y.is_zero() {
            return Ok(AlgElement::zero());
        }
        let (wx, wy) = (self.root_sum(x)?, self.root_sum(y)?);
        let qinv = self.rs.q_factor(&wx, &wy).inv().scalar();
        Ok(self.mul(x, y).sub(&self.mul(y, x).scale(&qinv)))
    }

    /// [x, y]_𝐪 in the free algebra.
    pub fn q_bracket_free(&self, x: &FreeElement, y: &FreeElement) -> Result<FreeElement, PbwError> {
        let wx = free_weight(&self.rs, x)?;
        let wy = free_weight(&self.rs, y)?;
        let (Some(wx), Some(wy)) = (wx, wy) else {
            return Ok(FreeElement::new());
        };
        let qinv = self.rs.q_factor(&wx, &wy).inv().scalar();
        let mut out = free_mul(x, y);
        for (w, c) in free_mul(y, x) {
            free_add(&mut out, w, &c.mul(&qinv).neg());
        }
        Ok(out)
    }

    // ---- divided powers ----

    /// The lattice normalization 𝐅_β^{(k)} = scale · 𝐟_β^{(k)}.
    pub fn lattice_scale(&self, k: usize, c: u32) -> Scalar {
        let info = &self.rs.roots[k];
        if info.norm >= 0 || c == 0 {
            return Scalar::one();
        }
        let c = c as i32;
        let diagonal = matches!(info.radical(), Some(p) if p.i == p.j);
        let e = match (self.rs.g.family, diagonal) {
            (Family::B, true) => -(c * (c - 1) / 2),
            (Family::D, true) => -(c * c),
            _ => -(c * (c - 1) * self.rs.g.r() / 2),
        };
        Scalar::q_pow(e)
    }

    /// 𝐅^{(𝐜)} for exponents indexed by radical position.
    pub fn divided_monomial(&self, c: &[u32]) -> Result<AlgElement, PbwError> {
        if c.len() > self.rs.n_rad {
            return Err(PbwError::BadIndex(c.len()));
        }
        let mut m = Mono::one(self.n_roots());
        let mut s = Scalar::one();
        for (k, &e) in c.iter().enumerate() {
            if e > 1 && self.rs.roots[k].is_isotropic() {
                return Err(PbwError::IsotropicPower(self.rs.pair(k), e));
            }
            m.0[k] = e as u8;
            s = s.mul(&self.lattice_scale(k, e));
        }
        Ok(AlgElement::term(m, s))
    }

    /// Inverse of `divided_monomial` on a single term: coefficient of 𝐅^{(𝐜)}.
    pub fn lattice_coeffs(&self, x: &AlgElement) -> Vec<(Vec<u32>, Scalar)> {
        x.terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<u32> = m.0[..self.rs.n_rad].iter().map(|&v| v as u32).collect();
                let s = e.iter().enumerate().fold(Scalar::one(), |s, (k, &v)| s.mul(&self.lattice_scale(k, v)));
                (e, c.div(&s))
            })
            .collect()
    }

    // ---- shuffle side ----

    pub fn leading_word(&self, m: &Mono) -> Word {
        let mut w = Word::empty();
        for (k, c) in m.factors().collect::<Vec<_>>().into_iter().rev() {
            for _ in 0..c {
                w = w.concat(&self.rs.roots[k].word);
            }
        }
        w
    }

    /// Coefficient of `w` in Ψ(m) without expanding the product.
    pub fn psi_coeff(&self, m: &Mono, w: &Word) -> Scalar {
        let idx = expand_factors(m);
        let ts: Vec<&Trie> = idx.iter().map(|&k| self.trie(k)).collect();
        self.sh.product_coeff(&ts, w).div(&self.mono_fact(m))
    }

    pub fn psi_mono(&self, m: &Mono) -> ShuffleVec {
        let mut v = ShuffleVec::word(Word::empty());
        for k in expand_factors(m) {
            v = self.sh.shuffle(&v, self.psi_root(k));
        }
        v.scale(&self.mono_fact(m).inv().expect("nonzero factorial"))
    }

    pub fn psi(&self, x: &AlgElement) -> ShuffleVec {
        let mut out = ShuffleVec::zero();
        for (m, c) in &x.terms {
            out = out.add(&self.psi_mono(m).scale(c));
        }
        out
    }

    /// All PBW monomials with the given simple-root multiplicities; radical
    /// roots only unless `levi` is set.
    pub fn monomials(&self, target: &Coords, levi: bool) -> Vec<Mono> {
        let n = if levi { self.n_roots() } else { self.rs.n_rad };
        let mut out = Vec::new();
        let mut cur = Mono::one(self.n_roots());
        let mut rem = *target;
        self.enum_monos(0, n, &mut rem, &mut cur, &mut out);
        out
    }

    fn enum_monos(&self, k: usize, n: usize, rem: &mut Coords, cur: &mut Mono, out: &mut Vec<Mono>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if k == n {
            return;
        }
        self.enum_monos(k + 1, n, rem, cur, out);
        let cap = if self.rs.roots[k].is_isotropic() { 1 } else { u8::MAX };
        let c = &self.coords[k];
        let mut e = 0u8;
        while e < cap && (0..MAX_RANK).all(|a| rem[a] >= c[a]) {
            for a in 0..MAX_RANK {
                rem[a] -= c[a];
            }
            e += 1;
            cur.0[k] = e;
            self.enum_monos(k + 1, n, rem, cur, out);
        }
        for a in 0..MAX_RANK {
            rem[a] += c[a] * e;
        }
        cur.0[k] = 0;
    }

    /// Triangular solve against the PBW images: finds coefficients x_M with
    /// Σ x_M Ψ(M) agreeing with `coeff` at every leading word w_M ≤ `upper`.
    /// When the target lies in Ψ of the negative half and `levi` is set this
    /// is its exact expansion.
    pub fn solve_leading(
        &self,
        target: &Coords,
        levi: bool,
        upper: Option<Word>,
        coeff: impl Fn(&Word) -> Scalar,
    ) -> AlgElement {
        let mut mons: Vec<(Word, Mono)> = self
            .monomials(target, levi)
            .into_iter()
            .map(|m| (self.leading_word(&m), m))
            .filter(|(w, _)| upper.is_none_or(|u| *w <= u))
            .collect();
        mons.sort_by(|a, b| b.0.cmp(&a.0));
        let mut found: Vec<(Mono, Scalar)> = Vec::new();
        for (w, m) in mons {
            let mut v = coeff(&w);
            for (m2, c2) in &found {
                v = v.sub(&c2.mul(&self.psi_coeff(m2, &w)));
            }
            if !v.is_zero() {
                let lead = self.psi_coeff(&m, &w);
                found.push((m, v.div(&lead)));
            }
        }
        let mut out = AlgElement::zero();
        for (m, c) in found {
            out.add_term(m, &c);
        }
        out
    }

    /// Expands a homogeneous shuffle element in the PBW basis of the whole
    /// negative half; with `check` the residual is recomputed in full.
    pub fn expand_in_pbw(&self, x: &ShuffleVec, check: bool) -> Result<AlgElement, PbwError> {
        let Some(top) = x.max_word() else {
            return Ok(AlgElement::zero());
        };
        let target = word_coords(&top);
        if x.terms.keys().any(|w| word_coords(w) != target) {
            return Err(PbwError::Inhomogeneous);
        }
        let out = self.solve_leading(&target, true, Some(top), |w| x.coeff(w));
        if check {
            let res = x.sub(&self.psi(&out));
            if let Some(w) = res.max_word() {
                return Err(PbwError::Residual(w));
            }
        }
        Ok(out)
    }

    /// Fails if some term has a Levi factor.
    pub fn require_radical(&self, x: AlgElement) -> Result<AlgElement, PbwError> {
        let n = self.rs.n_rad;
        if let Some((m, _)) = x.terms.iter().find(|(m, _)| m.0[n..].iter().any(|&c| c > 0)) {
            return Err(PbwError::LeavesRadical(self.format_mono(m)));
        }
        Ok(x)
    }

    // ---- derivations and the adjoint action ----

    /// e'_i: on the shuffle side, removal of a final letter i.
    pub fn eprime(&self, i: usize, u: &AlgElement) -> Result<AlgElement, PbwError> {
        self.check_letter(i)?;
        let mut out = AlgElement::zero();
        for comp in self.components(u) {
            let p = self.psi(&comp);
            let mut d = ShuffleVec::zero();
            for (w, c) in &p.terms {
                if w.last() == Some(i as u8) {
                    d.add_term(w.prefix(w.len() - 1), c);
                }
            }
            out = out.add(&self.expand_in_pbw(&d, false)?);
        }
        Ok(out)
    }

    /// e''_i: removal of an initial letter i, twisted by 𝐪(α_i, weight of the rest).
    pub fn edoubleprime(&self, i: usize, u: &AlgElement) -> Result<AlgElement, PbwError> {
        self.check_letter(i)?;
        let mut out = AlgElement::zero();
        for comp in self.components(u) {
            let p = self.psi(&comp);
            let mut d = ShuffleVec::zero();
            for (w, c) in &p.terms {
                if w.first() == Some(i as u8) {
                    let rest = w.suffix_from(1);
                    let q = self.rs.q_factor(&self.rs.simple[i], &weight_of_word(&self.rs.g, &rest));
                    d.add_term(rest, &c.mul(&q.scalar()));
                }
            }
            out = out.add(&self.expand_in_pbw(&d, false)?);
        }
        Ok(out)
    }

    fn check_letter(&self, i: usize) -> Result<(), PbwError> {
        if i >= self.rs.g.rank() {
            return Err(PbwError::BadIndex(i));
        }
        Ok(())
    }

    fn check_levi(&self, x: char, i: usize) -> Result<(), PbwError> {
        if i == 0 {
            return Err(PbwError::NotLevi(x, 0));
        }
        self.check_letter(i)
    }

    fn qi_minus_inv(&self) -> Scalar {
        let r = self.rs.g.r();
        Scalar::q_pow(r).sub(&Scalar::q_pow(-r))
    }

    /// e_i · u through e'_i.
    pub fn adjoint_e(&self, i: usize, u: &AlgElement) -> Result<AlgElement, PbwError> {
        self.check_levi('e', i)?;
        let ai = &self.rs.simple[i];
        let mut out = AlgElement::zero();
        for comp in self.components(u) {
            let nu = self.root_sum(&comp)?;
            let f = self.rs.q_factor(ai, &ai.sub(&nu)).inv().scalar().neg().div(&self.qi_minus_inv());
            out.add_scaled(&self.eprime(i, &comp)?, &f);
        }
        self.require_radical(out)
    }

    /// f_i · u = f_i u - k_i u k_i^{-1} f_i, evaluated through Ψ.
    pub fn adjoint_f(&self, i: usize, u: &AlgElement) -> Result<AlgElement, PbwError> {
        self.check_levi('f', i)?;
        let ai = &self.rs.simple[i];
        let fi = ShuffleVec::word(Word::from_letters(&[i as u8]));
        let mut out = AlgElement::zero();
        for comp in self.components(u) {
            let nu = self.root_sum(&comp)?;
            let p = self.psi(&comp);
            let qinv = self.rs.q_factor(ai, &nu).inv().scalar();
            let x = self.sh.shuffle(&fi, &p).sub(&self.sh.shuffle(&p, &fi).scale(&qinv));
            out = out.add(&self.expand_in_pbw(&x, false)?);
        }
        self.require_radical(out)
    }

    /// k_μ · u.
    pub fn adjoint_k(&self, mu: &Weight, u: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (m, c) in &u.terms {
            let q = self.rs.q_factor(&self.mono_root_sum(m).neg(), mu);
            out.add_term(m.clone(), &c.mul(&q.scalar()));
        }
        out
    }

    /// e_i · u from the e-table and the coproduct rule.
    pub fn adjoint_e_rule(&self, i: usize, u: &AlgElement) -> Result<AlgElement, PbwError> {
        self.check_levi('e', i)?;
        let ai = &self.rs.simple[i];
        let mut out = AlgElement::zero();
        for (m, c) in &u.terms {
            let xs = expand_factors(m);
            let c = c.div(&self.mono_fact(m));
            for t in 0..xs.len() {
                let head = self.straighten_idx(&xs[..t]);
                let mid = self.mul(&head, &self.e_table(i, xs[t]));
                let tail = &xs[t + 1..];
                let nu = tail.iter().fold(Weight::zero(), |w, &k| w.add(&self.rs.roots[k].weight));
                let kf = self.rs.q_factor(&nu, ai).scalar();
                out.add_scaled(&self.mul_factors(&mid, tail), &c.mul(&kf));
            }
        }
        Ok(out)
    }

    /// f_i · u from the f-table and the coproduct rule.
    pub fn adjoint_f_rule(&self, i: usize, u: &AlgElement) -> Result<AlgElement, PbwError> {
        self.check_levi('f', i)?;
        let ai = &self.rs.simple[i];
        let mut out = AlgElement::zero();
        for (m, c) in &u.terms {
            let xs = expand_factors(m);
            let c = c.div(&self.mono_fact(m));
            for t in 0..xs.len() {
                let head = &xs[..t];
                let nu = head.iter().fold(Weight::zero(), |w, &k| w.add(&self.rs.roots[k].weight));
                let kf = self.rs.q_factor(&nu, ai).inv().scalar();
                let mid = self.mul(&self.straighten_idx(head), &self.f_table(i, xs[t]));
                out.add_scaled(&self.mul_factors(&mid, &xs[t + 1..]), &c.mul(&kf));
            }
        }
        Ok(out)
    }

    // ---- display ----

    pub fn format_mono(&self, m: &Mono) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .factors()
            .map(|(k, c)| {
                let name = match self.rs.roots[k].radical() {
                    Some(p) => format!("f{p}"),
                    None => format!("f{}", self.rs.roots[k].word),
                };
                if c == 1 {
                    name
                } else {
                    format!("{name}^({c})")
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn format(&self, x: &AlgElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            x.terms.iter().map(|(m, c)| format!("({c})*{}", self.format_mono(m))).collect();
        parts.join(" + ")
    }

    pub fn display<'a>(&'a self, x: &'a AlgElement) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Pbw, &'a AlgElement);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, x)
    }
}

/// Factor list of a monomial with multiplicity, in increasing order.
pub fn expand_factors(m: &Mono) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.total() as usize);
    for (k, c) in m.factors() {
        v.extend(std::iter::repeat_n(k, c as usize));
    }
    v
}

pub fn free_add(x: &mut FreeElement, w: Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let e = x.entry(w).or_default();
    *e = e.add(c);
    if e.is_zero() {
        x.remove(&w);
    }
}

pub fn free_mul(x: &FreeElement, y: &FreeElement) -> FreeElement {
    let mut out = FreeElement::new();
    for (u, a) in x {
        for (v, b) in y {
            free_add(&mut out, u.concat(v), &a.mul(b));
        }
    }
    out
}

/// Common weight of the terms; `None` for the zero element.
pub fn free_weight(rs: &RootSystem, x: &FreeElement) -> Result<Option<Weight>, PbwError> {
    let mut it = x.keys().map(|w| weight_of_word(&rs.g, w));
    let Some(first) = it.next() else {
        return Ok(None);
    };
    if it.all(|w| w == first) {
        Ok(Some(first))
    } else {
        Err(PbwError::Inhomogeneous)
    }
}
