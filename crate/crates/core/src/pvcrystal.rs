//! The crystal ℬ(𝒩) ⊗ SST(λ) of a parabolic Verma module, its truncated
//! graph, highest-weight scans and the 𝔩-branching of ℬ(𝒩).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::hooktab::{enumerate_sst, genuine_hw, partition_of_weight, partitions, HookError, HookPartition, HookTableau, HookType};
use crate::radcrystal::{CrystalError, RadArray, RadCrystal};
use crate::superroot::{AlgebraType, Family, Weight};

/// Default vertex cap for [`PvCrystal::build_graph`].
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PvError {
    #[error(transparent)]
    Hook(#[from] HookError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("tableau has shape {found}, expected {expected}")]
    Shape { found: HookPartition, expected: HookPartition },
    #[error("graph would have {count} vertices, above the cap of {cap}")]
    TooLarge { count: usize, cap: usize },
}

/// 𝐜 ⊗ T.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PVElement {
    pub rad: RadArray,
    pub tab: HookTableau,
}

pub struct PvCrystal {
    pub rad: RadCrystal,
    pub hook: HookType,
    pub lambda: HookPartition,
    sst: Vec<HookTableau>,
}

impl PvCrystal {
    pub fn new(g: AlgebraType, lambda: HookPartition) -> Result<PvCrystal, PvError> {
        PvCrystal::from_rad(RadCrystal::new(g), lambda)
    }

    pub fn from_rad(rad: RadCrystal, lambda: HookPartition) -> Result<PvCrystal, PvError> {
        let hook = HookType::from(rad.algebra());
        let mut sst = enumerate_sst(hook, &lambda)?;
        sst.sort();
        Ok(PvCrystal { rad, hook, lambda, sst })
    }

    pub fn algebra(&self) -> AlgebraType {
        self.rad.algebra()
    }

    /// Operators are indexed by 0..rank.
    pub fn rank(&self) -> usize {
        self.algebra().rank()
    }

    /// SST(λ) in sorted order.
    pub fn tableaux(&self) -> &[HookTableau] {
        &self.sst
    }

    /// 𝕆 ⊗ H_λ.
    pub fn highest(&self) -> PVElement {
        PVElement { rad: self.rad.zero(), tab: genuine_hw(self.hook, &self.lambda).expect("λ checked on construction") }
    }

    pub fn check(&self, b: &PVElement) -> Result<(), PvError> {
        self.rad.check(&b.rad)?;
        if *b.tab.shape() != self.lambda {
            return Err(PvError::Shape { found: b.tab.shape().clone(), expected: self.lambda.clone() });
        }
        HookTableau::new(self.hook, b.tab.rows().to_vec())?;
        Ok(())
    }

    pub fn weight(&self, b: &PVElement) -> Weight {
        self.rad.weight(&b.rad).add(&b.tab.weight())
    }

    pub fn degree(&self, b: &PVElement) -> u32 {
        self.rad.degree(&b.rad)
    }

    pub fn f(&self, i: usize, b: &PVElement) -> Option<PVElement> {
        self.act(i, b, false)
    }

    pub fn e(&self, i: usize, b: &PVElement) -> Option<PVElement> {
        self.act(i, b, true)
    }

    pub fn checked_op(&self, i: usize, b: &PVElement, raise: bool) -> Result<Option<PVElement>, PvError> {
        if i >= self.rank() {
            return Err(CrystalError::BadIndex(i, self.rank()).into());
        }
        self.check(b)?;
        Ok(self.act(i, b, raise))
    }

    /// Whether the operator acts on the 𝒩 factor.
    fn on_rad(&self, i: usize, b: &PVElement, raise: bool) -> bool {
        let m = self.algebra().m;
        if i == 0 {
            return true;
        }
        if i == m {
            let rs = &self.rad.rs;
            return rs.bilinear(&self.rad.weight(&b.rad), &rs.simple[m]) != 0;
        }
        let (e1, p1) = self.rad.eps_phi(i, &b.rad);
        let (e2, p2) = b.tab.eps_phi(self.hook, i);
        match (i < m, raise) {
            (true, false) => p1 > e2,
            (true, true) => p1 >= e2,
            (false, false) => p2 <= e1,
            (false, true) => p2 < e1,
        }
    }

    fn act(&self, i: usize, b: &PVElement, raise: bool) -> Option<PVElement> {
        if i >= self.rank() {
            return None;
        }
        if self.on_rad(i, b, raise) {
            let rad = if raise { self.rad.e(i, &b.rad) } else { self.rad.f(i, &b.rad) }?;
            Some(PVElement { rad, tab: b.tab.clone() })
        } else {
            let tab = if raise { b.tab.e(self.hook, i) } else { b.tab.f(self.hook, i) }?;
            Some(PVElement { rad: b.rad.clone(), tab })
        }
    }

    pub fn is_highest(&self, b: &PVElement) -> bool {
        (0..self.rank()).all(|i| self.e(i, b).is_none())
    }

    /// Applies the first ẽ_i that does not vanish until none does; returns
    /// the endpoint and the number of steps.
    pub fn greedy_reduce(&self, b: &PVElement) -> (PVElement, usize) {
        let mut cur = b.clone();
        let mut steps = 0;
        while let Some(next) = (0..self.rank()).find_map(|i| self.e(i, &cur)) {
            cur = next;
            steps += 1;
        }
        (cur, steps)
    }

    /// Every 𝐜 ⊗ T with deg 𝐜 ≤ `max_degree`, sorted.
    pub fn vertices(&self, max_degree: u32) -> Vec<PVElement> {
        let arrays = self.rad.enumerate(max_degree);
        arrays
            .iter()
            .flat_map(|c| self.sst.iter().map(move |t| PVElement { rad: c.clone(), tab: t.clone() }))
            .collect()
    }

    pub fn vertex_count(&self, max_degree: u32) -> usize {
        self.rad.enumerate(max_degree).len() * self.sst.len()
    }

    pub fn build_graph(&self, max_degree: u32, cap: usize) -> Result<CrystalGraph, PvError> {
        let count = self.vertex_count(max_degree);
        if count > cap {
            return Err(PvError::TooLarge { count, cap });
        }
        let vertices = self.vertices(max_degree);
        let index: HashMap<&PVElement, usize> = vertices.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let edges: Vec<Edge> = vertices
            .par_iter()
            .enumerate()
            .flat_map_iter(|(k, b)| {
                let index = &index;
                (0..self.rank()).filter_map(move |i| {
                    let to = *index.get(&self.f(i, b)?)?;
                    Some(Edge { from: k, color: i, to })
                })
            })
            .collect();
        Ok(CrystalGraph {
            algebra: self.algebra(),
            lambda: self.lambda.clone(),
            max_degree,
            vertices,
            edges,
        })
    }

    /// All b with deg ≤ `max_degree` and ẽ_i b = 0 for every i.
    pub fn hw_scan(&self, max_degree: u32) -> Vec<PVElement> {
        let arrays: Vec<RadArray> =
            self.rad.enumerate(max_degree).into_iter().filter(|c| self.rad.e0(c).is_none()).collect();
        let mut out: Vec<PVElement> = arrays
            .par_iter()
            .flat_map_iter(|c| {
                self.sst.iter().filter_map(move |t| {
                    let b = PVElement { rad: c.clone(), tab: t.clone() };
                    self.is_highest(&b).then_some(b)
                })
            })
            .collect();
        out.sort();
        out
    }

    /// Runs [`hw_scan`](Self::hw_scan), greedy reduction from every vertex
    /// and a connectivity count of the truncated graph.
    pub fn scan_report(&self, max_degree: u32, cap: usize) -> Result<HwReport, PvError> {
        let sources = self.hw_scan(max_degree);
        let highest = self.highest();
        let graph = self.build_graph(max_degree, cap)?;
        let ends: Vec<(PVElement, usize)> = graph.vertices.par_iter().map(|b| self.greedy_reduce(b)).collect();
        let mut reached: BTreeMap<PVElement, usize> = BTreeMap::new();
        let mut longest = 0;
        for (end, steps) in ends {
            longest = longest.max(steps);
            *reached.entry(end).or_default() += 1;
        }
        Ok(HwReport {
            algebra: self.algebra(),
            lambda: self.lambda.clone(),
            max_degree,
            vertices: graph.vertices.len(),
            genuine_found: sources.contains(&highest),
            sources,
            reached_highest: reached.get(&highest).copied().unwrap_or(0),
            highest,
            reached,
            longest_path: longest,
            components: graph.components().0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub color: usize,
    pub to: usize,
}

/// Vertices of degree ≤ `max_degree`; an edge means f̃_color(from) = to.
/// ẽ-moves never raise the degree, so every ẽ-edge appears reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    pub algebra: AlgebraType,
    pub lambda: HookPartition,
    pub max_degree: u32,
    pub vertices: Vec<PVElement>,
    pub edges: Vec<Edge>,
}

impl CrystalGraph {
    /// Vertices without incoming edges.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.vertices.len()];
        for e in &self.edges {
            has_in[e.to] = true;
        }
        (0..self.vertices.len()).filter(|&k| !has_in[k]).collect()
    }

    /// Weakly connected components, as a component id per vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        let labels = uf.into_labeling();
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let comp: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(*l).or_insert(next)
            })
            .collect();
        (ids.len(), comp)
    }
}

#[derive(Clone, Debug)]
pub struct HwReport {
    pub algebra: AlgebraType,
    pub lambda: HookPartition,
    pub max_degree: u32,
    pub vertices: usize,
    /// 𝕆 ⊗ H_λ.
    pub highest: PVElement,
    pub sources: Vec<PVElement>,
    pub genuine_found: bool,
    /// Greedy endpoints with the number of vertices reducing to each.
    pub reached: BTreeMap<PVElement, usize>,
    pub reached_highest: usize,
    pub longest_path: usize,
    /// Weakly connected components of the truncated graph.
    pub components: usize,
}

impl HwReport {
    pub fn unique_source(&self) -> bool {
        self.genuine_found && self.sources.len() == 1
    }

    /// Sources other than 𝕆 ⊗ H_λ.
    pub fn fake_sources(&self) -> impl Iterator<Item = &PVElement> {
        self.sources.iter().filter(|b| **b != self.highest)
    }

    /// Fake sources whose 𝒩 part is nonzero.
    pub fn fake_off_zero(&self) -> usize {
        self.sources.iter().filter(|b| !b.rad.is_zero()).count()
    }

    pub fn greedy_reaches_highest(&self) -> bool {
        self.reached_highest == self.vertices
    }

    pub fn connected(&self) -> bool {
        self.components == 1
    }
}

/// 𝒫(𝔤) restricted to |μ| = `size`: hook partitions, with all parts even
/// for 𝔠 and with even conjugate for 𝔡.
pub fn eligible(g: AlgebraType, size: usize) -> Vec<HookPartition> {
    let h = HookType::from(g);
    partitions(size)
        .into_iter()
        .filter(|p| p.is_hook(h))
        .filter(|p| match g.family {
            Family::B => true,
            Family::C => p.parts().iter().all(|x| x % 2 == 0),
            Family::D => p.conjugate().parts().iter().all(|x| x % 2 == 0),
        })
        .collect()
}

/// One connected component of ℬ(𝒩) under ẽ_i, f̃_i with i ≠ 0.
#[derive(Clone, Debug)]
pub struct LComponent {
    pub size: u32,
    pub vertices: usize,
    /// The source of dominant weight.
    pub source: RadArray,
    pub weight: Weight,
    pub partition: Option<HookPartition>,
    /// Sources other than the dominant one.
    pub fake_sources: usize,
    /// #SST(μ), when μ is known.
    pub expected_vertices: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Branching {
    pub algebra: AlgebraType,
    pub max_size: u32,
    pub components: Vec<LComponent>,
}

impl Branching {
    pub fn multiset(&self) -> BTreeMap<HookPartition, usize> {
        let mut out = BTreeMap::new();
        for c in &self.components {
            if let Some(p) = &c.partition {
                *out.entry(p.clone()).or_default() += 1;
            }
        }
        out
    }

    pub fn unmatched(&self) -> impl Iterator<Item = &LComponent> {
        self.components.iter().filter(|c| c.partition.is_none())
    }

    /// Each eligible μ with |μ| ≤ max_size appears exactly once, nothing
    /// else appears, and each component has the size of SST(μ).
    pub fn matches_eligible(&self) -> bool {
        let want: BTreeMap<HookPartition, usize> =
            (0..=self.max_size as usize).flat_map(|k| eligible(self.algebra, k)).map(|p| (p, 1)).collect();
        self.unmatched().next().is_none()
            && self.multiset() == want
            && self.components.iter().all(|c| c.expected_vertices == Some(c.vertices))
    }

    pub fn fake_sources(&self) -> usize {
        self.components.iter().map(|c| c.fake_sources).sum()
    }
}

/// μ ≥ ν in dominance order on weights of equal size.
fn dominates(w: &Weight, v: &Weight, rank: usize) -> bool {
    let mut a = 0;
    let mut b = 0;
    for k in 1..=rank {
        a += w.get(k);
        b += v.get(k);
        if a < b {
            return false;
        }
    }
    true
}

/// Splits ℬ(𝒩) into 𝔩-components, one δ-size at a time up to `max_size`.
/// Operators with i ≠ 0 keep the δ-size, so each slice is a union of whole
/// components.
pub fn l_branching(x: &RadCrystal, max_size: u32) -> Branching {
    let g = x.algebra();
    let h = HookType::from(g);
    let rank = g.rank();
    let mut components = Vec::new();
    for size in 0..=max_size {
        let slice = x.enumerate_size(size);
        let index: HashMap<&RadArray, usize> = slice.iter().enumerate().map(|(k, c)| (c, k)).collect();
        let moves: Vec<(usize, bool, Vec<usize>)> = slice
            .par_iter()
            .map(|c| {
                let highest = (1..rank).all(|i| x.e(i, c).is_none());
                let targets = (1..rank).filter_map(|i| x.f(i, c)).map(|d| index[&d]).collect();
                (index[c], highest, targets)
            })
            .collect();
        let mut uf = UnionFind::<usize>::new(slice.len());
        for (k, _, ts) in &moves {
            for &t in ts {
                uf.union(*k, t);
            }
        }
        let mut groups: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
        for (k, highest, _) in &moves {
            let entry = groups.entry(uf.find(*k)).or_default();
            entry.0 += 1;
            if *highest {
                entry.1.push(*k);
            }
        }
        for (_, (count, sources)) in groups {
            let best = *sources
                .iter()
                .find(|&&s| sources.iter().all(|&t| dominates(&x.weight(&slice[s]), &x.weight(&slice[t]), rank)))
                .or(sources.first())
                .expect("a finite component has a source");
            let weight = x.weight(&slice[best]);
            let partition = partition_of_weight(h, &weight);
            let expected_vertices = partition.as_ref().and_then(|p| enumerate_sst(h, p).ok()).map(|v| v.len());
            components.push(LComponent {
                size,
                vertices: count,
                source: slice[best].clone(),
                weight,
                partition,
                fake_sources: sources.len() - 1,
                expected_vertices,
            });
        }
    }
    components.sort_by(|a, b| (a.size, &a.partition, &a.source).cmp(&(b.size, &b.partition, &b.source)));
    Branching { algebra: g, max_size, components }
}

impl fmt::Display for PVElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ {:?}", self.rad.0, self.tab.rows())
    }
}
