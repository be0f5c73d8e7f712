//! The quantum shuffle algebra on the letters w_0, ..., w_{m+n-1} and the
//! embedding Ψ of the negative half.

use crate::qscalar::{Int, Laurent, Scalar};
use crate::superroot::{Family, QMono, Root, RootError, RootSystem, Word, MAX_RANK};
use std::collections::HashMap;
use std::sync::Mutex;

/// Formal linear combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShuffleVec {
    pub terms: HashMap<Word, Scalar>,
}

impl ShuffleVec {
    pub fn zero() -> ShuffleVec {
        ShuffleVec::default()
    }

    pub fn word(w: Word) -> ShuffleVec {
        ShuffleVec::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> ShuffleVec {
        let mut v = ShuffleVec::zero();
        v.add_term(w, &c);
        v
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

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, o: &ShuffleVec) -> ShuffleVec {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(*w, c);
        }
        r
    }

    pub fn sub(&self, o: &ShuffleVec) -> ShuffleVec {
        self.add(&o.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ShuffleVec {
        if c.is_zero() {
            return ShuffleVec::zero();
        }
        ShuffleVec { terms: self.terms.iter().map(|(w, x)| (*w, x.mul(c))).collect() }
    }

    /// Prepend a letter to every word.
    pub fn prepend(&self, l: u8) -> ShuffleVec {
        let head = Word::from_letters(&[l]);
        ShuffleVec { terms: self.terms.iter().map(|(w, c)| (head.concat(w), c.clone())).collect() }
    }

    pub fn max_word(&self) -> Option<Word> {
        self.terms.keys().max().copied()
    }

    /// Terms sorted by word, descending.
    pub fn sorted(&self) -> Vec<(Word, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }
}

/// Accumulates signed q-monomials per word before converting to scalars.
type MonoSum = HashMap<Word, Laurent>;

fn bump(acc: &mut MonoSum, w: Word, m: QMono) {
    acc.entry(w).or_default().add_term(&Int::S(if m.neg { -1 } else { 1 }), m.exp);
}

/// Shuffle engine for one algebra: letter form table plus a word-pair memo.
pub struct Shuffler {
    /// qtab[x][y] = 𝐪(α_x, α_y)
    qtab: [[QMono; MAX_RANK]; MAX_RANK],
    rank: usize,
    memo: Mutex<HashMap<(Word, Word), std::sync::Arc<Vec<(Word, Laurent)>>>>,
}

const MEMO_LIMIT: usize = 1 << 18;

impl Shuffler {
    pub fn new(rs: &RootSystem) -> Shuffler {
        let mut qtab = [[QMono::ONE; MAX_RANK]; MAX_RANK];
        let r = rs.g.rank();
        for x in 0..r {
            for y in 0..r {
                qtab[x][y] = rs.q_factor(&rs.simple[x], &rs.simple[y]);
            }
        }
        Shuffler { qtab, rank: r, memo: Mutex::new(HashMap::new()) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// 𝐪(α_x, α_y)
    pub fn qpair(&self, x: u8, y: u8) -> QMono {
        self.qtab[x as usize][y as usize]
    }

    /// 𝐪(|u|, α_y)
    pub fn q_word_letter(&self, u: &Word, y: u8) -> QMono {
        u.letters().iter().fold(QMono::ONE, |acc, &x| acc.mul(self.qpair(x, y)))
    }

    /// 𝐪(|u|, |v|)
    pub fn q_words(&self, u: &Word, v: &Word) -> QMono {
        v.letters().iter().fold(QMono::ONE, |acc, &y| acc.mul(self.q_word_letter(u, y)))
    }

    /// All interleavings of two words; a letter y of `v` placed after
    /// letters x of `u` picks up 𝐪(α_x, α_y)^{-1}.
    pub fn shuffle_words(&self, u: &Word, v: &Word) -> std::sync::Arc<Vec<(Word, Laurent)>> {
        let key = (*u, *v);
        if let Some(r) = self.memo.lock().unwrap().get(&key) {
            return r.clone();
        }
        let ul = u.letters();
        let vl = v.letters();
        let mut acc = MonoSum::new();
        let mut s = [QMono::ONE; MAX_RANK];
        self.interleave(&ul, &vl, 0, 0, Word::empty(), QMono::ONE, &mut s, &mut acc);
        let mut out: Vec<(Word, Laurent)> = acc.into_iter().filter(|(_, l)| !l.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let out = std::sync::Arc::new(out);
        let mut memo = self.memo.lock().unwrap();
        if memo.len() < MEMO_LIMIT {
            memo.insert(key, out.clone());
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn interleave(
        &self,
        u: &[u8],
        v: &[u8],
        i: usize,
        j: usize,
        w: Word,
        m: QMono,
        s: &mut [QMono; MAX_RANK],
        acc: &mut MonoSum,
    ) {
        if i == u.len() && j == v.len() {
            bump(acc, w, m);
            return;
        }
        if i < u.len() {
            let x = u[i];
            let saved = *s;
            for y in 0..self.rank {
                s[y] = s[y].mul(self.qtab[x as usize][y]);
            }
            self.interleave(u, v, i + 1, j, w.push(x), m, s, acc);
            *s = saved;
        }
        if j < v.len() {
            let y = v[j];
            self.interleave(u, v, i, j + 1, w.push(y), m.mul(s[y as usize].inv()), s, acc);
        }
    }

    pub fn shuffle(&self, a: &ShuffleVec, b: &ShuffleVec) -> ShuffleVec {
        let mut acc: HashMap<Word, Scalar> = HashMap::new();
        for (u, cu) in &a.terms {
            for (v, cv) in &b.terms {
                let c = cu.mul(cv);
                for (w, l) in self.shuffle_words(u, v).iter() {
                    let x = c.mul(&Scalar::from_laurent(l.clone()));
                    let e = acc.entry(*w).or_default();
                    *e = e.add(&x);
                }
            }
        }
        ShuffleVec { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Ψ of a free-algebra element given as generator words with coefficients.
    pub fn psi(&self, expr: &HashMap<Word, Scalar>) -> ShuffleVec {
        let mut memo: HashMap<Word, ShuffleVec> = HashMap::new();
        let mut out = ShuffleVec::zero();
        for (gw, c) in expr {
            let img = self.psi_word(gw, &mut memo);
            out = out.add(&img.scale(c));
        }
        out
    }

    fn psi_word(&self, gw: &Word, memo: &mut HashMap<Word, ShuffleVec>) -> ShuffleVec {
        if gw.is_empty() {
            return ShuffleVec::word(Word::empty());
        }
        if let Some(v) = memo.get(gw) {
            return v.clone();
        }
        let n = gw.len();
        let head = self.psi_word(&gw.prefix(n - 1), memo);
        let last = Word::from_letters(&[gw.letter(n - 1)]);
        let r = self.shuffle(&head, &ShuffleVec::word(last));
        memo.insert(*gw, r.clone());
        r
    }

    /// Coefficient of `w` in factors[0] ∗ factors[1] ∗ ... without expanding
    /// the product.
    pub fn product_coeff(&self, factors: &[&Trie], w: &Word) -> Scalar {
        if factors.is_empty() {
            return if w.is_empty() { Scalar::one() } else { Scalar::zero() };
        }
        let total: usize = factors.iter().map(|t| t.len).sum();
        if total != w.len() {
            return Scalar::zero();
        }
        let k = factors.len();
        let mut states: HashMap<Vec<u32>, Laurent> = HashMap::new();
        states.insert(vec![0; k], Laurent::mono(Int::ONE, 0));
        for p in 0..w.len() {
            let y = w.letter(p);
            let mut next: HashMap<Vec<u32>, Laurent> = HashMap::new();
            for (st, val) in &states {
                let mut m = QMono::ONE;
                for b in 0..k {
                    let t = factors[b];
                    let node = st[b] as usize;
                    let child = t.child[node][y as usize];
                    if child != 0 {
                        let mut ns = st.clone();
                        ns[b] = child;
                        let f = m.inv();
                        let v = val.mul_mono(f.neg, f.exp);
                        let e = next.entry(ns).or_default();
                        *e = e.add(&v);
                    }
                    m = m.mul(t.qv[node][y as usize]);
                }
            }
            next.retain(|_, v| !v.is_zero());
            if next.is_empty() {
                return Scalar::zero();
            }
            states = next;
        }
        let mut out = Scalar::zero();
        for (st, val) in states {
            let mut c = Scalar::from_laurent(val);
            for b in 0..k {
                match &factors[b].coeff[st[b] as usize] {
                    Some(x) => c = c.mul(x),
                    None => {
                        c = Scalar::zero();
                        break;
                    }
                }
            }
            out = out.add(&c);
        }
        out
    }

    pub fn trie(&self, v: &ShuffleVec) -> Trie {
        Trie::new(self, v)
    }
}

/// Prefix tree of a homogeneous shuffle element, carrying for each node the
/// twist 𝐪(|prefix|, α_y) for every letter y.
pub struct Trie {
    pub len: usize,
    child: Vec<[u32; MAX_RANK]>,
    qv: Vec<[QMono; MAX_RANK]>,
    coeff: Vec<Option<Scalar>>,
}

impl Trie {
    fn new(sh: &Shuffler, v: &ShuffleVec) -> Trie {
        let mut t = Trie {
            len: v.terms.keys().next().map_or(0, |w| w.len()),
            child: vec![[0; MAX_RANK]],
            qv: vec![[QMono::ONE; MAX_RANK]],
            coeff: vec![None],
        };
        for (w, c) in v.sorted() {
            assert_eq!(w.len(), t.len, "inhomogeneous shuffle element");
            let mut node = 0usize;
            for x in w.letters() {
                let nx = t.child[node][x as usize];
                node = if nx == 0 {
                    let id = t.child.len();
                    let mut q = t.qv[node];
                    for (y, qy) in q.iter_mut().enumerate().take(sh.rank) {
                        *qy = qy.mul(sh.qtab[x as usize][y]);
                    }
                    t.child.push([0; MAX_RANK]);
                    t.qv.push(q);
                    t.coeff.push(None);
                    t.child[node][x as usize] = id as u32;
                    id
                } else {
                    nx as usize
                };
            }
            t.coeff[node] = Some(c);
        }
        t
    }
}

fn a_coef(rs: &RootSystem, i: usize, from: usize) -> Scalar {
    let mut acc = Scalar::one();
    for k in from..=i {
        let qa = rs.g.qa(k).pow(2);
        acc = acc.mul(&Scalar::one().sub(&qa.scalar()));
    }
    acc
}

/// The closed formulas for Ψ(𝐟_β).
pub fn psi_image(rs: &RootSystem, sh: &Shuffler, beta: Root) -> Result<ShuffleVec, RootError> {
    rs.index(beta)?;
    let (i, j) = (beta.i as usize, beta.j as usize);
    let w = |a: usize, b: usize| -> ShuffleVec {
        if a > b {
            ShuffleVec::word(Word::empty())
        } else {
            ShuffleVec::word(Word::range(a as u8, b as u8))
        }
    };
    let a = |k: usize| a_coef(rs, k, 1);
    let b = |k: usize| a_coef(rs, k, 2);
    let qmq = Scalar::laurent(&[(-1, 1), (1, -1)]);
    let one_plus_q2 = Scalar::laurent(&[(0, 1), (2, 1)]);
    let one_minus_q2 = Scalar::laurent(&[(0, 1), (2, -1)]);
    let out = match rs.g.family {
        Family::B => {
            if i == 1 && j == 1 {
                w(0, 0)
            } else if i == j {
                w(0, i - 1).scale(&a(i - 1))
            } else if i == 1 {
                w(0, j - 1).prepend(0).scale(&qmq.mul(&a(j - 1)))
            } else {
                sh.shuffle(&w(1, i - 1), &w(0, j - 1)).prepend(0).scale(&qmq.mul(&a(i - 1)).mul(&a(j - 1)))
            }
        }
        Family::C => {
            if i == 1 && j == 1 {
                w(0, 0)
            } else if i == 1 {
                w(0, j - 1).scale(&one_plus_q2.mul(&a(j - 1)))
            } else if i < j {
                sh.shuffle(&w(1, i - 1), &w(1, j - 1))
                    .prepend(0)
                    .scale(&one_plus_q2.mul(&a(i - 1)).mul(&a(j - 1)))
            } else {
                sh.shuffle(&w(1, i - 1), &w(1, i - 1)).prepend(0).scale(&Scalar::q().mul(&a(i - 1).pow(2)))
            }
        }
        Family::D => {
            if i == 1 && j == 2 {
                w(0, 0)
            } else if i == 1 {
                w(2, j - 1).prepend(0).scale(&b(j - 1))
            } else if i < j {
                let x = sh.shuffle(&w(1, i - 1), &w(2, j - 1));
                let y = sh.shuffle(&w(2, i - 1), &w(1, j - 1));
                x.sub(&y.scale(&Scalar::q())).prepend(0).scale(&one_minus_q2.mul(&b(i - 1)).mul(&b(j - 1)))
            } else {
                sh.shuffle(&w(1, i - 1), &w(2, i - 1))
                    .prepend(0)
                    .scale(&Scalar::q().mul(&one_minus_q2).mul(&b(i - 1).pow(2)))
            }
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superroot::AlgebraType;

    fn b23() -> RootSystem {
        RootSystem::new(AlgebraType::new(Family::B, 2, 3).unwrap())
    }

    #[test]
    fn unit_and_two_letters() {
        let rs = b23();
        let sh = Shuffler::new(&rs);
        let e = ShuffleVec::word(Word::empty());
        let x = ShuffleVec::word(Word::from_letters(&[2, 0, 1]));
        assert_eq!(sh.shuffle(&x, &e), x);
        assert_eq!(sh.shuffle(&e, &x), x);
        let w0 = ShuffleVec::word(Word::from_letters(&[0]));
        let w1 = ShuffleVec::word(Word::from_letters(&[1]));
        let got = sh.shuffle(&w0, &w1);
        let mut want = ShuffleVec::word(Word::from_letters(&[1, 0]));
        want.add_term(Word::from_letters(&[0, 1]), &sh.qpair(0, 1).inv().scalar());
        assert_eq!(got, want);
    }

    #[test]
    fn product_coeff_matches_expansion() {
        let rs = b23();
        let sh = Shuffler::new(&rs);
        let u = ShuffleVec::word(Word::from_letters(&[0, 1, 2]))
            .add(&ShuffleVec::term(Word::from_letters(&[1, 0, 2]), Scalar::q()));
        let v = ShuffleVec::word(Word::from_letters(&[0, 1]));
        let t = ShuffleVec::word(Word::from_letters(&[3]));
        let full = sh.shuffle(&sh.shuffle(&u, &v), &t);
        let (tu, tv, tt) = (sh.trie(&u), sh.trie(&v), sh.trie(&t));
        for (w, c) in &full.terms {
            assert_eq!(sh.product_coeff(&[&tu, &tv, &tt], w), *c);
        }
        assert!(sh.product_coeff(&[&tu, &tv, &tt], &Word::from_letters(&[3, 3, 3, 0, 0, 0])).is_zero());
    }

    #[test]
    fn psi_examples() {
        let rs = b23();
        let sh = Shuffler::new(&rs);
        let mut f0 = HashMap::new();
        f0.insert(Word::from_letters(&[0]), Scalar::one());
        assert_eq!(sh.psi(&f0), ShuffleVec::word(Word::from_letters(&[0])));
        let mut one = HashMap::new();
        one.insert(Word::empty(), Scalar::one());
        assert_eq!(sh.psi(&one), ShuffleVec::word(Word::empty()));
        let mut f01 = HashMap::new();
        f01.insert(Word::from_letters(&[0, 1]), Scalar::one());
        let w0 = ShuffleVec::word(Word::from_letters(&[0]));
        let w1 = ShuffleVec::word(Word::from_letters(&[1]));
        assert_eq!(sh.psi(&f01), sh.shuffle(&w0, &w1));
    }

    #[test]
    fn psi_image_examples() {
        let rs = b23();
        let sh = Shuffler::new(&rs);
        assert_eq!(psi_image(&rs, &sh, Root::new(1, 1)).unwrap(), ShuffleVec::word(Word::from_letters(&[0])));
        // a_1 = 1 - q^4 for b
        let a1 = Scalar::laurent(&[(0, 1), (4, -1)]);
        assert_eq!(
            psi_image(&rs, &sh, Root::new(2, 2)).unwrap(),
            ShuffleVec::term(Word::from_letters(&[0, 1]), a1)
        );
        let c = RootSystem::new(AlgebraType::new(Family::C, 2, 3).unwrap());
        let shc = Shuffler::new(&c);
        let a2 = Scalar::laurent(&[(0, 1), (2, -1)]).mul(&Scalar::laurent(&[(0, 1), (2, -1)]));
        let want = Scalar::laurent(&[(0, 1), (2, 1)]).mul(&a2);
        assert_eq!(
            psi_image(&c, &shc, Root::new(1, 3)).unwrap(),
            ShuffleVec::term(Word::from_letters(&[0, 1, 2]), want)
        );
        assert!(psi_image(&c, &shc, Root::new(3, 3)).is_err());
    }
}
