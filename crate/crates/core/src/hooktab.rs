//! Hook partitions, (m|n)-hook semistandard tableaux and their crystal
//! structure, transported from tensor powers of the letter crystal
//! 1 → 2 → ⋯ → m+n through the column word.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::superroot::{AlgebraType, Weight, MAX_RANK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HookError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotPartition(Vec<usize>),
    #[error("partition {0:?} violates the ({1}|{2}) hook condition")]
    Hook(Vec<usize>, usize, usize),
    #[error("need m >= 1, n >= 1 and m + n <= {MAX_RANK} (got m={0}, n={1})")]
    BadRank(usize, usize),
    #[error("row lengths {0:?} do not form a partition")]
    BadShape(Vec<usize>),
    #[error("letter {0} outside 1..={1}")]
    BadLetter(u8, usize),
    #[error("not semistandard at row {0}, column {1}")]
    NotSemistandard(usize, usize),
    #[error("crystal index {0} outside 1..{1}")]
    BadIndex(usize, usize),
}

/// The super type (m|n) of the Levi factor gl(m|n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HookType {
    pub m: usize,
    pub n: usize,
}

impl HookType {
    pub fn new(m: usize, n: usize) -> Result<HookType, HookError> {
        if m == 0 || n == 0 || m + n > MAX_RANK {
            return Err(HookError::BadRank(m, n));
        }
        Ok(HookType { m, n })
    }

    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    pub fn is_odd(&self, a: u8) -> bool {
        a as usize > self.m
    }

    fn check_index(&self, i: usize) -> Result<(), HookError> {
        if i == 0 || i >= self.rank() {
            return Err(HookError::BadIndex(i, self.rank()));
        }
        Ok(())
    }
}

impl From<AlgebraType> for HookType {
    fn from(g: AlgebraType) -> HookType {
        HookType { m: g.m, n: g.n }
    }
}

impl From<&AlgebraType> for HookType {
    fn from(g: &AlgebraType) -> HookType {
        HookType { m: g.m, n: g.n }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HookPartition {
    parts: Vec<usize>,
}

impl HookPartition {
    /// Any partition; trailing zeros are dropped.
    pub fn new(parts: &[usize]) -> Result<HookPartition, HookError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(HookError::NotPartition(parts.to_vec()));
        }
        let len = parts.iter().rposition(|&p| p > 0).map_or(0, |k| k + 1);
        Ok(HookPartition { parts: parts[..len].to_vec() })
    }

    /// A partition with λ_{m+1} ≤ n.
    pub fn hook(h: HookType, parts: &[usize]) -> Result<HookPartition, HookError> {
        let p = HookPartition::new(parts)?;
        p.check_hook(h)?;
        Ok(p)
    }

    pub fn empty() -> HookPartition {
        HookPartition::default()
    }

    pub fn check_hook(&self, h: HookType) -> Result<(), HookError> {
        if self.part(h.m + 1) > h.n {
            return Err(HookError::Hook(self.parts.clone(), h.m, h.n));
        }
        Ok(())
    }

    pub fn is_hook(&self, h: HookType) -> bool {
        self.check_hook(h).is_ok()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// λ_k for 1-based k, zero past the end.
    pub fn part(&self, k: usize) -> usize {
        self.parts.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> HookPartition {
        let w = self.part(1);
        let parts = (1..=w).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        HookPartition { parts }
    }

    /// Rows strictly below row `k` (1-based), as a partition.
    pub fn tail(&self, k: usize) -> HookPartition {
        HookPartition { parts: self.parts.iter().skip(k).copied().collect() }
    }
}

impl fmt::Display for HookPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `size`, largest first in lexicographic order.
pub fn partitions(size: usize) -> Vec<HookPartition> {
    fn go(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<HookPartition>) {
        if rest == 0 {
            out.push(HookPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, &mut Vec::new(), &mut out);
    out
}

/// Λ_λ = Σ_{i≤m} λ_i δ_i + Σ_j μ_j δ_{m+j}, μ the conjugate of the rows below m.
pub fn hw_weight(h: HookType, lambda: &HookPartition) -> Result<Weight, HookError> {
    lambda.check_hook(h)?;
    let mut w = Weight::zero();
    for i in 1..=h.m {
        w.0[i - 1] = lambda.part(i) as i16;
    }
    for (j, &mu) in lambda.tail(h.m).conjugate().parts().iter().enumerate() {
        w.0[h.m + j] = mu as i16;
    }
    Ok(w)
}

/// Inverse of [`hw_weight`]: the hook partition with Λ_λ = `w`, if any.
pub fn partition_of_weight(h: HookType, w: &Weight) -> Option<HookPartition> {
    if w.0[h.rank()..].iter().any(|&v| v != 0) || w.0[..h.rank()].iter().any(|&v| v < 0) {
        return None;
    }
    let head: Vec<usize> = (1..=h.m).map(|i| w.get(i) as usize).collect();
    let mu: Vec<usize> = (h.m + 1..=h.rank()).map(|a| w.get(a) as usize).collect();
    let mu = HookPartition::new(&mu).ok()?;
    let tail = mu.conjugate();
    if !tail.is_empty() && head.last().copied().unwrap_or(0) < tail.part(1) {
        return None;
    }
    let mut parts = head;
    parts.extend_from_slice(tail.parts());
    let p = HookPartition::new(&parts).ok()?;
    (hw_weight(h, &p).ok()? == *w).then_some(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookTableau {
    shape: HookPartition,
    rows: Vec<Vec<u8>>,
}

impl HookTableau {
    /// Validates shape and the hook semistandard conditions: rows and
    /// columns weakly increase, letters ≤ m are column-strict, letters > m
    /// are row-strict.
    pub fn new(h: HookType, rows: Vec<Vec<u8>>) -> Result<HookTableau, HookError> {
        let lens: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        let shape = HookPartition::new(&lens).map_err(|_| HookError::BadShape(lens.clone()))?;
        if shape.len() != rows.len() {
            return Err(HookError::BadShape(lens));
        }
        let t = HookTableau { shape, rows };
        for (r, row) in t.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == 0 || x as usize > h.rank() {
                    return Err(HookError::BadLetter(x, h.rank()));
                }
                if !fits(h, x, t.left(r, c), t.above(r, c)) {
                    return Err(HookError::NotSemistandard(r + 1, c + 1));
                }
            }
        }
        Ok(t)
    }

    pub fn shape(&self) -> &HookPartition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.rows[r][c]
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    fn left(&self, r: usize, c: usize) -> Option<u8> {
        (c > 0).then(|| self.rows[r][c - 1])
    }

    fn above(&self, r: usize, c: usize) -> Option<u8> {
        (r > 0).then(|| self.rows[r - 1][c])
    }

    pub fn weight(&self) -> Weight {
        self.rows.iter().flatten().fold(Weight::zero(), |w, &x| w.add(&Weight::delta(x as usize)))
    }

    /// Box positions in reading order: columns right to left, each top to
    /// bottom.
    pub fn reading_positions(&self) -> Vec<(usize, usize)> {
        let conj = self.shape.conjugate();
        (0..conj.len()).rev().flat_map(|c| (0..conj.parts()[c]).map(move |r| (r, c))).collect()
    }

    pub fn column_word(&self) -> Vec<u8> {
        self.reading_positions().into_iter().map(|(r, c)| self.rows[r][c]).collect()
    }

    fn act(&self, h: HookType, i: usize, raise: bool) -> Option<HookTableau> {
        let pos = self.reading_positions();
        let word: Vec<u8> = pos.iter().map(|&(r, c)| self.rows[r][c]).collect();
        let (k, x) = word_act(h, i, &word, raise)?;
        let (r, c) = pos[k];
        let mut t = self.clone();
        t.rows[r][c] = x;
        Some(t)
    }

    pub fn f(&self, h: HookType, i: usize) -> Option<HookTableau> {
        self.act(h, i, false)
    }

    pub fn e(&self, h: HookType, i: usize) -> Option<HookTableau> {
        self.act(h, i, true)
    }

    pub fn eps_phi(&self, h: HookType, i: usize) -> (usize, usize) {
        word_eps_phi(h, i, &self.column_word())
    }
}

impl fmt::Display for HookTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

fn fits(h: HookType, x: u8, left: Option<u8>, above: Option<u8>) -> bool {
    let row_ok = left.map_or(true, |l| l < x || (l == x && !h.is_odd(x)));
    let col_ok = above.map_or(true, |a| a < x || (a == x && h.is_odd(x)));
    row_ok && col_ok
}

/// H_λ: row i filled with i for i ≤ m, then column j of the rows below m
/// filled with m + j.
pub fn genuine_hw(h: HookType, lambda: &HookPartition) -> Result<HookTableau, HookError> {
    lambda.check_hook(h)?;
    let rows = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(r, &len)| (0..len).map(|c| if r < h.m { r as u8 + 1 } else { (h.m + c + 1) as u8 }).collect())
        .collect();
    HookTableau::new(h, rows)
}

/// Every tableau in SST_{m|n}(λ), in lexicographic order of the row
/// readings.
pub fn enumerate_sst(h: HookType, lambda: &HookPartition) -> Result<Vec<HookTableau>, HookError> {
    lambda.check_hook(h)?;
    let cells: Vec<(usize, usize)> =
        lambda.parts().iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut rows: Vec<Vec<u8>> = lambda.parts().iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fill(h, &cells, 0, &mut rows, lambda, &mut out);
    Ok(out)
}

fn fill(h: HookType, cells: &[(usize, usize)], k: usize, rows: &mut Vec<Vec<u8>>, shape: &HookPartition, out: &mut Vec<HookTableau>) {
    if k == cells.len() {
        out.push(HookTableau { shape: shape.clone(), rows: rows.clone() });
        return;
    }
    let (r, c) = cells[k];
    let left = (c > 0).then(|| rows[r][c - 1]);
    let above = (r > 0).then(|| rows[r - 1][c]);
    for x in 1..=h.rank() as u8 {
        if fits(h, x, left, above) {
            rows[r][c] = x;
            fill(h, cells, k + 1, rows, shape, out);
        }
    }
    rows[r][c] = 0;
}

/// Signature of a word for direction i: (position, is_plus) for each letter
/// i (+) or i+1 (−), in the order the rule scans them. For i > m the word
/// is scanned right to left.
fn signature(h: HookType, i: usize, word: &[u8]) -> Vec<(usize, bool)> {
    let mut s: Vec<(usize, bool)> = word
        .iter()
        .enumerate()
        .filter_map(|(k, &x)| match x as usize {
            a if a == i => Some((k, true)),
            a if a == i + 1 => Some((k, false)),
            _ => None,
        })
        .collect();
    if i > h.m {
        s.reverse();
    }
    s
}

/// Unmatched signs after cancelling every + followed by a −.
fn reduce(sig: &[(usize, bool)]) -> (Vec<usize>, Vec<usize>) {
    let mut minus = Vec::new();
    let mut plus: Vec<usize> = Vec::new();
    for &(k, p) in sig {
        if p {
            plus.push(k);
        } else if plus.pop().is_none() {
            minus.push(k);
        }
    }
    (minus, plus)
}

/// Position acted on and its new letter, or `None` for 0. `raise` selects ẽ.
pub fn word_act(h: HookType, i: usize, word: &[u8], raise: bool) -> Option<(usize, u8)> {
    if i == 0 || i >= h.rank() {
        return None;
    }
    if i == h.m {
        let k = word.iter().position(|&x| x as usize == i || x as usize == i + 1)?;
        let x = word[k] as usize;
        return match (raise, x == i) {
            (false, true) => Some((k, (i + 1) as u8)),
            (true, false) => Some((k, i as u8)),
            _ => None,
        };
    }
    let (minus, plus) = reduce(&signature(h, i, word));
    if raise {
        minus.last().map(|&k| (k, i as u8))
    } else {
        plus.first().map(|&k| (k, (i + 1) as u8))
    }
}

pub fn word_f(h: HookType, i: usize, word: &[u8]) -> Option<Vec<u8>> {
    word_act(h, i, word, false).map(|(k, x)| set(word, k, x))
}

pub fn word_e(h: HookType, i: usize, word: &[u8]) -> Option<Vec<u8>> {
    word_act(h, i, word, true).map(|(k, x)| set(word, k, x))
}

fn set(word: &[u8], k: usize, x: u8) -> Vec<u8> {
    let mut w = word.to_vec();
    w[k] = x;
    w
}

/// (ε_i, φ_i) of a word.
pub fn word_eps_phi(h: HookType, i: usize, word: &[u8]) -> (usize, usize) {
    if i == 0 || i >= h.rank() {
        return (0, 0);
    }
    if i == h.m {
        return match word.iter().find(|&&x| x as usize == i || x as usize == i + 1) {
            Some(&x) if x as usize == i => (0, 1),
            Some(_) => (1, 0),
            None => (0, 0),
        };
    }
    let (minus, plus) = reduce(&signature(h, i, word));
    (minus.len(), plus.len())
}

/// f̃_i or ẽ_i on a word by applying the two-factor tensor rule to
/// (w_1 ⊗ ⋯ ⊗ w_{ℓ−1}) ⊗ w_ℓ recursively, with ε and φ of the left block
/// taken as string lengths. Exponential in the length; meant as a check.
pub fn word_act_nested(h: HookType, i: usize, word: &[u8], raise: bool) -> Option<Vec<u8>> {
    if i == 0 || i >= h.rank() || word.is_empty() {
        return None;
    }
    let (head, last) = word.split_at(word.len() - 1);
    let b2 = last[0] as usize;
    let letter = |x: usize| -> Option<usize> {
        match (raise, x) {
            (false, a) if a == i => Some(i + 1),
            (true, a) if a == i + 1 => Some(i),
            _ => None,
        }
    };
    let on_last = |w: &[u8]| letter(b2).map(|x| [w, &[x as u8]].concat());
    let on_head = || word_act_nested(h, i, head, raise).map(|w| [&w[..], last].concat());
    if head.is_empty() {
        return on_last(&[]);
    }
    if i == h.m {
        // (wt(b_1)|α_m) in units of r: δ_m pairs to 1, δ_{m+1} to −(−1).
        let pairing: i32 = head.iter().map(|&x| i32::from(x as usize == i) + i32::from(x as usize == i + 1)).sum();
        return if pairing != 0 { on_head() } else { on_last(head) };
    }
    let (e1, p1) = nested_strings(h, i, head);
    let (e2, p2) = (usize::from(b2 == i + 1), usize::from(b2 == i));
    let first = if i < h.m {
        if raise {
            p1 >= e2
        } else {
            p1 > e2
        }
    } else if raise {
        p2 < e1
    } else {
        p2 <= e1
    };
    if first {
        on_head()
    } else {
        on_last(head)
    }
}

fn nested_strings(h: HookType, i: usize, word: &[u8]) -> (usize, usize) {
    let count = |raise| {
        let mut w = word.to_vec();
        let mut k = 0;
        while let Some(v) = word_act_nested(h, i, &w, raise) {
            w = v;
            k += 1;
        }
        k
    };
    (count(true), count(false))
}

#[derive(Clone, Debug)]
pub struct SstReport {
    pub lambda: HookPartition,
    pub size: usize,
    pub reached: usize,
    pub sources: Vec<HookTableau>,
    pub closed: bool,
}

impl SstReport {
    pub fn connected(&self) -> bool {
        self.closed && self.reached == self.size
    }

    /// H_λ is a source and every other source has a weight below Λ_λ
    /// (a fake highest weight vector).
    pub fn genuine_source(&self, h: HookType) -> bool {
        let Ok(top) = hw_weight(h, &self.lambda) else { return false };
        let Ok(hw) = genuine_hw(h, &self.lambda) else { return false };
        self.sources.iter().filter(|t| t.weight() == top).eq([&hw])
    }

    pub fn unique_source(&self) -> bool {
        self.sources.len() == 1
    }

    pub fn fake_sources(&self) -> usize {
        self.sources.len().saturating_sub(1)
    }
}

/// Closure, undirected connectedness from H_λ, and the set of sources of
/// SST_{m|n}(λ).
pub fn check_sst(h: HookType, lambda: &HookPartition) -> Result<SstReport, HookError> {
    let all = enumerate_sst(h, lambda)?;
    let set: HashSet<&HookTableau> = all.iter().collect();
    let mut closed = true;
    let mut sources = Vec::new();
    for t in &all {
        let mut source = true;
        for i in 1..h.rank() {
            for (raise, img) in [(false, t.f(h, i)), (true, t.e(h, i))] {
                if let Some(u) = img {
                    closed &= set.contains(&u) && u.act(h, i, !raise).as_ref() == Some(t);
                    if raise {
                        source = false;
                    }
                }
            }
        }
        if source {
            sources.push(t.clone());
        }
    }
    let start = genuine_hw(h, lambda)?;
    let mut seen: BTreeSet<HookTableau> = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(t) = queue.pop_front() {
        for i in 1..h.rank() {
            for u in [t.f(h, i), t.e(h, i)].into_iter().flatten() {
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    Ok(SstReport { lambda: lambda.clone(), size: all.len(), reached: seen.len(), sources, closed })
}

/// Checked crystal operator on a tableau: `i` must lie in 1..m+n.
pub fn tableau_op(h: HookType, i: usize, t: &HookTableau, raise: bool) -> Result<Option<HookTableau>, HookError> {
    h.check_index(i)?;
    Ok(t.act(h, i, raise))
}
