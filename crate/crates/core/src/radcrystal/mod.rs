//! The crystal of the radical algebra on exponent arrays: local crystals on
//! the blocks touching rows and columns i, i+1, assembled by the signature
//! rule, plus the α₀ operator.

pub mod appendix;
pub mod verify;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::superroot::{AlgebraType, Family, Root, RootError, RootSystem, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("array has {0} entries, expected {1}")]
    Length(usize, usize),
    #[error("isotropic root {0} has exponent {1}")]
    Isotropic(Root, u32),
    #[error("crystal index {0} outside 0..{1}")]
    BadIndex(usize, usize),
}

/// Exponents c_β, one per radical root in ≺ order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RadArray(pub Vec<u32>);

impl RadArray {
    pub fn zero(n: usize) -> RadArray {
        RadArray(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalKind {
    /// 𝐅_{(k,i)}^{(a)} 𝐅_{(k,i+1)}^{(b)}
    PairRow(usize),
    /// 𝐅_{(i,l)}^{(a)} 𝐅_{(i+1,l)}^{(b)}
    PairCol(usize),
    /// 𝐅_{(i,i)}^{(a)} 𝐅_{(i,i+1)}^{(b)} 𝐅_{(i+1,i+1)}^{(c)}
    Delta,
}

/// Which table governs the diagonal block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaRule {
    /// Only (i,i+1) is a root.
    Trivial,
    BLess,
    BGreater,
    BEqual,
    CLess,
    CEqual,
    DGreater,
    DEqual,
}

#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub kind: LocalKind,
    /// Radical indices of the slots; a missing diagonal root is `None`.
    pub slots: [Option<usize>; 3],
    /// Largest allowed exponent per slot (1 on isotropic roots).
    pub caps: [u32; 3],
    pub rule: Option<DeltaRule>,
}

impl LocalFactor {
    pub fn read(&self, c: &RadArray) -> [u32; 3] {
        self.slots.map(|s| s.map_or(0, |k| c.0[k]))
    }

    fn write(&self, c: &mut RadArray, st: [u32; 3]) {
        for (s, v) in self.slots.iter().zip(st) {
            if let Some(k) = s {
                c.0[*k] = v;
            }
        }
    }

    fn valid(&self, st: [i64; 3]) -> Option<[u32; 3]> {
        let mut out = [0u32; 3];
        for k in 0..3 {
            if st[k] < 0 || st[k] > self.caps[k] as i64 || (self.slots[k].is_none() && st[k] != 0) {
                return None;
            }
            out[k] = st[k] as u32;
        }
        Some(out)
    }

    /// The closed-form local f̃_i.
    pub fn local_f(&self, st: [u32; 3]) -> Option<[u32; 3]> {
        let [a, b, c] = st.map(|v| v as i64);
        let next = match (self.kind, self.rule) {
            (LocalKind::PairRow(_) | LocalKind::PairCol(_), _) => [a - 1, b + 1, 0],
            (LocalKind::Delta, Some(rule)) => match rule {
                DeltaRule::Trivial => return None,
                DeltaRule::BLess => {
                    if a - c >= 2 {
                        [a - 2, b + 1, c]
                    } else if a - c == 1 {
                        [a - 1, b, c + 1]
                    } else if b >= 1 {
                        [a, b - 1, c + 2]
                    } else {
                        return None;
                    }
                }
                DeltaRule::BGreater => [a - 1, b, c + 1],
                DeltaRule::BEqual => match (a, b) {
                    (a, 0) if a >= 2 => [a - 2, 1, c],
                    (1, 0) => [0, 0, c + 1],
                    _ => return None,
                },
                DeltaRule::CLess => {
                    if a - c >= 1 {
                        [a - 1, b + 1, c]
                    } else if b >= 1 {
                        [a, b - 1, c + 1]
                    } else {
                        return None;
                    }
                }
                DeltaRule::CEqual => [a - 1, b + 1, c],
                DeltaRule::DGreater => {
                    if b % 2 == 1 {
                        [a, b - 1, c + 1]
                    } else {
                        [a - 1, b + 1, c]
                    }
                }
                DeltaRule::DEqual => [a, b - 1, c + 1],
            },
            (LocalKind::Delta, None) => return None,
        };
        self.valid(next)
    }

    /// Inverse of [`local_f`](Self::local_f).
    pub fn local_e(&self, st: [u32; 3]) -> Option<[u32; 3]> {
        let s = st.map(|v| v as i64);
        const MOVES: [[i64; 3]; 5] = [[1, -1, 0], [0, 1, -1], [2, -1, 0], [1, 0, -1], [0, 1, -2]];
        MOVES
            .iter()
            .filter_map(|d| self.valid([s[0] + d[0], s[1] + d[1], s[2] + d[2]]))
            .find(|&y| self.local_f(y) == Some(st))
    }

    /// (ε, φ) as string lengths.
    pub fn local_eps_phi(&self, st: [u32; 3]) -> (usize, usize) {
        let run = |step: &dyn Fn([u32; 3]) -> Option<[u32; 3]>| {
            let (mut x, mut k) = (st, 0);
            while let Some(y) = step(x) {
                x = y;
                k += 1;
            }
            k
        };
        (run(&|x| self.local_e(x)), run(&|x| self.local_f(x)))
    }
}

pub struct RadCrystal {
    pub rs: Arc<RootSystem>,
    /// Factors for each direction i, in tensor order; index 0 is unused.
    factors: Vec<Vec<LocalFactor>>,
    alpha0: usize,
}

impl RadCrystal {
    pub fn new(g: AlgebraType) -> RadCrystal {
        RadCrystal::from_roots(Arc::new(RootSystem::new(g)))
    }

    pub fn from_roots(rs: Arc<RootSystem>) -> RadCrystal {
        let rank = rs.g.rank();
        let mut factors = vec![Vec::new()];
        for i in 1..rank {
            factors.push(build_factors(&rs, i));
        }
        let alpha0 = rs.index_of_weight(&rs.simple[0]).expect("α₀ is a radical root");
        RadCrystal { rs, factors, alpha0 }
    }

    pub fn algebra(&self) -> AlgebraType {
        self.rs.g
    }

    pub fn n_roots(&self) -> usize {
        self.rs.n_rad
    }

    pub fn zero(&self) -> RadArray {
        RadArray::zero(self.rs.n_rad)
    }

    pub fn factors(&self, i: usize) -> &[LocalFactor] {
        &self.factors[i]
    }

    pub fn alpha0(&self) -> usize {
        self.alpha0
    }

    pub fn check(&self, c: &RadArray) -> Result<(), CrystalError> {
        if c.0.len() != self.rs.n_rad {
            return Err(CrystalError::Length(c.0.len(), self.rs.n_rad));
        }
        for (k, &v) in c.0.iter().enumerate() {
            if v > 1 && self.rs.roots[k].is_isotropic() {
                return Err(CrystalError::Isotropic(self.rs.pair(k), v));
            }
        }
        Ok(())
    }

    pub fn from_pairs(&self, entries: &[(Root, u32)]) -> Result<RadArray, CrystalError> {
        let mut c = self.zero();
        for &(r, v) in entries {
            c.0[self.rs.index(r)?] = v;
        }
        self.check(&c)?;
        Ok(c)
    }

    pub fn get(&self, c: &RadArray, i: usize, j: usize) -> u32 {
        c.0[self.rs.idx(i, j)]
    }

    /// wt(𝐜) = −Σ c_β β.
    pub fn weight(&self, c: &RadArray) -> Weight {
        c.0.iter().enumerate().fold(Weight::zero(), |w, (k, &v)| w.sub(&self.rs.roots[k].weight.scale(v as i32)))
    }

    /// Σ c_β ht(β).
    pub fn degree(&self, c: &RadArray) -> u32 {
        c.0.iter().enumerate().map(|(k, &v)| v * self.rs.roots[k].ht).sum()
    }

    fn local_weight(&self, fac: &LocalFactor, c: &RadArray) -> Weight {
        fac.slots.iter().flatten().fold(Weight::zero(), |w, &k| w.sub(&self.rs.roots[k].weight.scale(c.0[k] as i32)))
    }

    /// Factor acted on by f̃_i (`raise` = false) or ẽ_i, and the (ε, φ) of 𝐜.
    fn locate(&self, i: usize, c: &RadArray, raise: bool) -> (Option<usize>, (usize, usize)) {
        let facs = &self.factors[i];
        let g = self.rs.g;
        if i == g.m {
            let am = &self.rs.simple[i];
            let mut run = 0;
            let mut last_zero = 0;
            for (t, fac) in facs.iter().enumerate().take(facs.len() - 1) {
                run += self.rs.bilinear(&self.local_weight(fac, c), am);
                if run == 0 {
                    last_zero = t + 1;
                }
            }
            let fac = &facs[last_zero];
            let st = fac.read(c);
            let hit = if raise { fac.local_e(st) } else { fac.local_f(st) };
            // ε_m, φ_m are string lengths; see `eps_phi`.
            return (hit.map(|_| last_zero), (0, 0));
        }
        let stats: Vec<(usize, usize)> = facs.iter().map(|f| f.local_eps_phi(f.read(c))).collect();
        let (minus, plus) = if i < g.m {
            // (−^ε, +^φ) per factor; a + cancels a later −.
            let (mut minus, mut plus) = (Vec::new(), Vec::<usize>::new());
            for (t, &(e, p)) in stats.iter().enumerate() {
                for _ in 0..e {
                    if plus.pop().is_none() {
                        minus.push(t);
                    }
                }
                plus.extend(std::iter::repeat(t).take(p));
            }
            (minus, plus)
        } else {
            // (+^φ, −^ε) per factor; a − cancels a later +.
            let (mut minus, mut plus) = (Vec::<usize>::new(), Vec::new());
            for (t, &(e, p)) in stats.iter().enumerate() {
                for _ in 0..p {
                    if minus.pop().is_none() {
                        plus.push(t);
                    }
                }
                minus.extend(std::iter::repeat(t).take(e));
            }
            (minus, plus)
        };
        let target = match (i < g.m, raise) {
            (true, false) => plus.first(),
            (true, true) => minus.last(),
            (false, false) => plus.last(),
            (false, true) => minus.first(),
        };
        (target.copied(), (minus.len(), plus.len()))
    }

    fn string_lengths(&self, i: usize, c: &RadArray) -> (usize, usize) {
        let run = |raise: bool| {
            let (mut x, mut k) = (c.clone(), 0);
            while let Some(y) = self.act(i, &x, raise) {
                x = y;
                k += 1;
            }
            k
        };
        (run(true), run(false))
    }

    fn act(&self, i: usize, c: &RadArray, raise: bool) -> Option<RadArray> {
        let (t, _) = self.locate(i, c, raise);
        let fac = &self.factors[i][t?];
        let st = fac.read(c);
        let next = if raise { fac.local_e(st) } else { fac.local_f(st) }?;
        let mut out = c.clone();
        fac.write(&mut out, next);
        Some(out)
    }

    /// f̃_i for i in 0..m+n; i = 0 raises the α₀ exponent.
    pub fn f(&self, i: usize, c: &RadArray) -> Option<RadArray> {
        if i == 0 {
            return Some(self.f0(c));
        }
        if i >= self.rs.g.rank() {
            return None;
        }
        self.act(i, c, false)
    }

    pub fn e(&self, i: usize, c: &RadArray) -> Option<RadArray> {
        if i == 0 {
            return self.e0(c);
        }
        if i >= self.rs.g.rank() {
            return None;
        }
        self.act(i, c, true)
    }

    pub fn f0(&self, c: &RadArray) -> RadArray {
        let mut out = c.clone();
        out.0[self.alpha0] += 1;
        out
    }

    pub fn e0(&self, c: &RadArray) -> Option<RadArray> {
        let mut out = c.clone();
        out.0[self.alpha0] = out.0[self.alpha0].checked_sub(1)?;
        Some(out)
    }

    /// (ε_i, φ_i); i = 0 gives (c_{α₀}, ∞) reported as `usize::MAX`.
    pub fn eps_phi(&self, i: usize, c: &RadArray) -> (usize, usize) {
        if i == 0 {
            return (c.0[self.alpha0] as usize, usize::MAX);
        }
        if i >= self.rs.g.rank() {
            return (0, 0);
        }
        if i == self.rs.g.m {
            return self.string_lengths(i, c);
        }
        self.locate(i, c, false).1
    }

    pub fn checked_op(&self, i: usize, c: &RadArray, raise: bool) -> Result<Option<RadArray>, CrystalError> {
        if i >= self.rs.g.rank() {
            return Err(CrystalError::BadIndex(i, self.rs.g.rank()));
        }
        self.check(c)?;
        Ok(if raise { self.e(i, c) } else { self.f(i, c) })
    }

    /// Roots whose exponents f̃_i may change.
    pub fn support(&self, i: usize) -> Vec<usize> {
        if i == 0 {
            return vec![self.alpha0];
        }
        let mut v: Vec<usize> = self.factors[i].iter().flat_map(|f| f.slots.iter().flatten().copied()).collect();
        v.sort_unstable();
        v
    }

    /// Every array of degree at most `max_degree`, in lexicographic order of
    /// the exponent vector.
    pub fn enumerate(&self, max_degree: u32) -> Vec<RadArray> {
        let mut out = Vec::new();
        let mut cur = self.zero();
        self.enum_rec(0, max_degree, &mut cur, &mut out);
        out.sort();
        out
    }

    fn enum_rec(&self, k: usize, budget: u32, cur: &mut RadArray, out: &mut Vec<RadArray>) {
        if k == self.rs.n_rad {
            out.push(cur.clone());
            return;
        }
        let info = &self.rs.roots[k];
        let cap = if info.is_isotropic() { 1 } else { u32::MAX };
        let mut v = 0;
        while v <= cap && v * info.ht <= budget {
            cur.0[k] = v;
            self.enum_rec(k + 1, budget - v * info.ht, cur, out);
            v += 1;
        }
        cur.0[k] = 0;
    }

    /// Arrays whose weight has δ-size exactly `size`; these sets are
    /// closed under f̃_i, ẽ_i for i ≠ 0.
    pub fn enumerate_size(&self, size: u32) -> Vec<RadArray> {
        let sizes: Vec<u32> = self.rs.radical().iter().map(|r| (-r.weight.size()) as u32).collect();
        let mut out = Vec::new();
        let mut cur = self.zero();
        self.size_rec(0, size, &sizes, &mut cur, &mut out);
        out.sort();
        out
    }

    fn size_rec(&self, k: usize, budget: u32, sizes: &[u32], cur: &mut RadArray, out: &mut Vec<RadArray>) {
        if k == self.rs.n_rad {
            if budget == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if self.rs.roots[k].is_isotropic() { 1 } else { u32::MAX };
        let mut v = 0;
        while v <= cap && v * sizes[k] <= budget {
            cur.0[k] = v;
            self.size_rec(k + 1, budget - v * sizes[k], sizes, cur, out);
            v += 1;
        }
        cur.0[k] = 0;
    }

    pub fn format(&self, c: &RadArray) -> String {
        let parts: Vec<String> =
            c.0.iter().enumerate().filter(|(_, &v)| v > 0).map(|(k, v)| format!("{}:{}", self.rs.pair(k), v)).collect();
        if parts.is_empty() {
            "O".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn display<'a>(&'a self, c: &'a RadArray) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RadCrystal, &'a RadArray);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, c)
    }
}

fn delta_rule(g: &AlgebraType, i: usize) -> DeltaRule {
    use std::cmp::Ordering::*;
    match (g.family, i.cmp(&g.m)) {
        (Family::B, Less) => DeltaRule::BLess,
        (Family::B, Greater) => DeltaRule::BGreater,
        (Family::B, Equal) => DeltaRule::BEqual,
        (Family::C, Less) => DeltaRule::CLess,
        (Family::C, Equal) => DeltaRule::CEqual,
        (Family::D, Greater) => DeltaRule::DGreater,
        (Family::D, Equal) => DeltaRule::DEqual,
        _ => DeltaRule::Trivial,
    }
}

/// N_1(i) ⊗ ⋯ ⊗ N_{i−1}(i) ⊗ N_Δ(i) ⊗ N^{i+2}(i) ⊗ ⋯ ⊗ N^{m+n}(i).
fn build_factors(rs: &RootSystem, i: usize) -> Vec<LocalFactor> {
    let rank = rs.g.rank();
    let slot = |a: usize, b: usize| rs.has(a, b).then(|| rs.idx(a, b));
    let cap = |s: Option<usize>| match s {
        Some(k) if rs.roots[k].is_isotropic() => 1,
        Some(_) => u32::MAX,
        None => 0,
    };
    let pair = |kind, x: Option<usize>, y: Option<usize>| LocalFactor {
        kind,
        slots: [x, y, None],
        caps: [cap(x), cap(y), 0],
        rule: None,
    };
    let mut out = Vec::new();
    for k in 1..i {
        out.push(pair(LocalKind::PairRow(k), slot(k, i), slot(k, i + 1)));
    }
    let d = [slot(i, i), slot(i, i + 1), slot(i + 1, i + 1)];
    out.push(LocalFactor { kind: LocalKind::Delta, slots: d, caps: d.map(cap), rule: Some(delta_rule(&rs.g, i)) });
    for l in i + 2..=rank {
        out.push(pair(LocalKind::PairCol(l), slot(i, l), slot(i + 1, l)));
    }
    out
}
