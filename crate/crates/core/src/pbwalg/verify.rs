//! Checks of the commutator and adjoint tables against the shuffle
//! realization, PBW independence, and the duality between types c and d.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{expand_factors, AlgElement, Coords, Mono, Pbw, PbwError};
use crate::qscalar::Scalar;
use crate::qshuffle::Trie;
use crate::superroot::{AlgebraType, Family, Root, Word, MAX_RANK};

#[derive(Clone, Debug)]
pub struct PairCheck {
    pub alpha: Root,
    pub beta: Root,
    pub ok: bool,
    pub table: String,
    pub computed: String,
}

#[derive(Clone, Debug)]
pub struct CommutatorReport {
    pub algebra: AlgebraType,
    pub pairs: Vec<PairCheck>,
}

impl CommutatorReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.ok)
    }
}

fn add_coords(a: &Coords, b: &Coords) -> Coords {
    let mut c = [0u8; MAX_RANK];
    for k in 0..MAX_RANK {
        c[k] = a[k] + b[k];
    }
    c
}

impl Pbw {
    /// [𝐟_b, 𝐟_a]_𝐪 computed on the shuffle side and expanded in the PBW
    /// basis of the whole negative half.
    pub fn shuffle_commutator(&self, a: usize, b: usize) -> AlgElement {
        let (ta, tb): (&Trie, &Trie) = (self.trie(a), self.trie(b));
        let qinv = self.qroots(a, b).inv().scalar();
        let target = add_coords(self.root_coords(a), self.root_coords(b));
        self.solve_leading(&target, true, None, |w: &Word| {
            let x = self.sh.product_coeff(&[tb, ta], w);
            let y = self.sh.product_coeff(&[ta, tb], w);
            x.sub(&y.mul(&qinv))
        })
    }

    /// Every pair α ≺ β of radical roots: table value against the shuffle
    /// computation.
    pub fn verify_commutators(&self) -> CommutatorReport {
        let n = self.rs.n_rad;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        let checks = pairs
            .par_iter()
            .map(|&(a, b)| {
                let table = self.commutator(a, b);
                let computed = self.shuffle_commutator(a, b);
                PairCheck {
                    alpha: self.rs.pair(a),
                    beta: self.rs.pair(b),
                    ok: *table == computed,
                    table: self.format(&table),
                    computed: self.format(&computed),
                }
            })
            .collect();
        CommutatorReport { algebra: self.algebra(), pairs: checks }
    }
}

#[derive(Clone, Debug)]
pub struct AdjointCheck {
    /// 'e' or 'f'
    pub op: char,
    pub i: usize,
    pub beta: Root,
    pub ok: bool,
    pub table: String,
    pub computed: String,
}

#[derive(Clone, Debug)]
pub struct AdjointReport {
    pub algebra: AlgebraType,
    pub checks: Vec<AdjointCheck>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl Pbw {
    /// e_i · 𝐟_β and f_i · 𝐟_β from first principles against the tables.
    pub fn verify_adjoint(&self) -> AdjointReport {
        let jobs: Vec<(char, usize, usize)> = (1..self.rs.g.rank())
            .flat_map(|i| (0..self.rs.n_rad).flat_map(move |k| [('e', i, k), ('f', i, k)]))
            .collect();
        let checks = jobs
            .par_iter()
            .map(|&(op, i, k)| {
                let u = self.root_element(k);
                let (table, computed) = if op == 'e' {
                    (self.e_table(i, k), self.adjoint_e(i, &u))
                } else {
                    (self.f_table(i, k), self.adjoint_f(i, &u))
                };
                let (ok, computed) = match computed {
                    Ok(c) => (c == table, self.format(&c)),
                    Err(e) => (false, e.to_string()),
                };
                AdjointCheck { op, i, beta: self.rs.pair(k), ok, table: self.format(&table), computed }
            })
            .collect();
        AdjointReport { algebra: self.algebra(), checks }
    }
}

#[derive(Clone, Debug)]
pub struct RankCheck {
    pub coords: Vec<u8>,
    pub monomials: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub algebra: AlgebraType,
    pub max_degree: u32,
    pub weights: Vec<RankCheck>,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.weights.iter().all(|w| w.rank == w.monomials)
    }
}

/// Rank of a set of sparse vectors over Q(q) by exact elimination.
pub fn exact_rank(rows: &[HashMap<Word, Scalar>]) -> usize {
    let mut rows: Vec<BTreeMap<Word, Scalar>> = rows.iter().map(|r| r.iter().map(|(w, c)| (*w, c.clone())).collect()).collect();
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let piv = rows.swap_remove(pos);
        // Eliminate on the smallest coefficient of the pivot row.
        let (pw, pc) = piv.iter().min_by_key(|(_, c)| c.size()).map(|(w, c)| (*w, c.clone())).unwrap();
        for r in rows.iter_mut() {
            let Some(c) = r.get(&pw).cloned() else { continue };
            let f = c.div(&pc);
            for (w, x) in &piv {
                let v = r.get(w).cloned().unwrap_or_default().sub(&x.mul(&f));
                if v.is_zero() {
                    r.remove(w);
                } else {
                    r.insert(*w, v);
                }
            }
        }
        rank += 1;
    }
    rank
}

impl Pbw {
    /// Radical monomials of degree Σ c_β ht(β) ≤ `max_degree`, grouped by
    /// simple-root multiplicities.
    pub fn radical_monomials_by_weight(&self, max_degree: u32) -> BTreeMap<Coords, Vec<Mono>> {
        let mut out: BTreeMap<Coords, Vec<Mono>> = BTreeMap::new();
        let mut cur = Mono::one(self.n_roots());
        self.collect_monos(0, max_degree, &mut cur, &mut out);
        out
    }

    fn collect_monos(&self, k: usize, budget: u32, cur: &mut Mono, out: &mut BTreeMap<Coords, Vec<Mono>>) {
        if k == self.rs.n_rad {
            if !cur.is_one() {
                out.entry(self.mono_coords(cur)).or_default().push(cur.clone());
            }
            return;
        }
        let ht = self.rs.roots[k].ht;
        let cap = if self.rs.roots[k].is_isotropic() { 1 } else { u32::MAX };
        let mut e = 0;
        while e <= cap && e * ht <= budget {
            cur.0[k] = e as u8;
            self.collect_monos(k + 1, budget - e * ht, cur, out);
            e += 1;
        }
        cur.0[k] = 0;
    }

    /// Exact rank of the shuffle images of all ordered radical monomials,
    /// weight by weight.
    pub fn pbw_rank(&self, max_degree: u32) -> RankReport {
        let groups: Vec<(Coords, Vec<Mono>)> = self.radical_monomials_by_weight(max_degree).into_iter().collect();
        let weights = groups
            .par_iter()
            .map(|(c, ms)| {
                let rows: Vec<HashMap<Word, Scalar>> = ms.iter().map(|m| self.psi_mono(m).terms).collect();
                RankCheck { coords: c[..self.rs.g.rank()].to_vec(), monomials: ms.len(), rank: exact_rank(&rows) }
            })
            .collect();
        RankReport { algebra: self.algebra(), max_degree, weights }
    }
}

#[derive(Clone, Debug)]
pub struct OmegaCheck {
    pub x: Vec<Root>,
    pub y: Vec<Root>,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct OmegaReport {
    pub m: usize,
    pub n: usize,
    pub checks: Vec<OmegaCheck>,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// The anti-isomorphism from the radical of c_{m|n} to that of d_{n|m}.
pub struct Omega<'a> {
    pub c: &'a Pbw,
    pub d: &'a Pbw,
    /// Target index and sign for each radical root of c.
    map: Vec<(usize, bool)>,
}

impl<'a> Omega<'a> {
    pub fn new(c: &'a Pbw, d: &'a Pbw) -> Result<Omega<'a>, PbwError> {
        let (gc, gd) = (c.algebra(), d.algebra());
        if gc.family != Family::C || gd.family != Family::D || gc.m != gd.n || gc.n != gd.m {
            return Err(PbwError::BadIndex(gd.m));
        }
        let top = gc.rank() + 1;
        let map = (0..c.rs.n_rad)
            .map(|k| {
                let p = c.rs.pair(k);
                let (i, j) = (p.i as usize, p.j as usize);
                Ok((d.root_index(Root::new(top - j, top - i))?, i == j))
            })
            .collect::<Result<Vec<_>, PbwError>>()?;
        Ok(Omega { c, d, map })
    }

    pub fn image_root(&self, k: usize) -> (usize, bool) {
        self.map[k]
    }

    /// ω of an element of the c-side radical.
    pub fn apply(&self, x: &AlgElement) -> AlgElement {
        let nd = self.d.n_roots();
        let mut out = AlgElement::zero();
        for (m, c) in &x.terms {
            let fact = m.factors().fold(Scalar::one(), |f, (k, e)| f.mul(&self.c.root_fact(k, e as u32)));
            let mut coef = c.div(&fact).omega();
            let mut idx = Vec::new();
            for k in expand_factors(m).into_iter().rev() {
                let (t, neg) = self.map[k];
                if neg {
                    coef = coef.neg();
                }
                idx.push(t);
            }
            out.add_scaled(&self.d.mul_factors(&AlgElement::unit(nd), &idx), &coef);
        }
        out
    }
}

/// ω(x·y) = ω(y)·ω(x) on random products with at most `max_factors` factors
/// in total.
pub fn omega_check(m: usize, n: usize, samples: usize, max_factors: usize, seed: u64) -> Result<OmegaReport, PbwError> {
    let c = Pbw::new(AlgebraType::new(Family::C, m, n)?);
    let d = Pbw::new(AlgebraType::new(Family::D, n, m)?);
    let om = Omega::new(&c, &d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(samples);
    for _ in 0..samples {
        let total = rng.gen_range(2..=max_factors.max(2));
        let split = rng.gen_range(1..total);
        let pick = |rng: &mut ChaCha8Rng, len| (0..len).map(|_| rng.gen_range(0..c.rs.n_rad)).collect::<Vec<_>>();
        let xs = pick(&mut rng, split);
        let ys = pick(&mut rng, total - split);
        let x = c.straighten_idx(&xs);
        let y = c.straighten_idx(&ys);
        let lhs = om.apply(&c.mul(&x, &y));
        let rhs = d.mul(&om.apply(&y), &om.apply(&x));
        checks.push(OmegaCheck {
            x: xs.iter().map(|&k| c.rs.pair(k)).collect(),
            y: ys.iter().map(|&k| c.rs.pair(k)).collect(),
            ok: lhs == rhs,
        });
    }
    Ok(OmegaReport { m, n, checks })
}
