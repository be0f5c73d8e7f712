//! Algebraic checks of the crystal base of 𝒩: the Kashiwara operators
//! computed in the PBW algebra are compared with the combinatorial ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::{RadArray, RadCrystal};
use crate::pbwalg::{AlgElement, Pbw, PbwError};
use crate::qscalar::{q_int_fact, Scalar};
use crate::superroot::{AlgebraType, Weight};

/// Coordinates in the lattice basis 𝐅^{(𝐜)}.
pub type LatVec = BTreeMap<RadArray, Scalar>;

pub fn to_lattice(pbw: &Pbw, x: &AlgElement) -> LatVec {
    pbw.lattice_coeffs(x).into_iter().filter(|(_, s)| !s.is_zero()).map(|(c, s)| (RadArray(c), s)).collect()
}

pub fn from_lattice(pbw: &Pbw, v: &LatVec) -> Result<AlgElement, PbwError> {
    let mut out = AlgElement::zero();
    for (c, s) in v {
        out.add_scaled(&pbw.divided_monomial(&c.0)?, s);
    }
    Ok(out)
}

/// Basis of the null space of the matrix whose columns are `cols`.
pub fn kernel(cols: &[LatVec]) -> Vec<Vec<Scalar>> {
    let mut rows: Vec<&RadArray> = cols.iter().flat_map(|c| c.keys()).collect();
    rows.sort();
    rows.dedup();
    let mut a: Vec<Vec<Scalar>> =
        rows.iter().map(|r| cols.iter().map(|c| c.get(*r).cloned().unwrap_or_else(Scalar::zero)).collect()).collect();
    let pivots = rref(&mut a, cols.len());
    let free: Vec<usize> = (0..cols.len()).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols.len()];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

/// Reduced row echelon form in place over the first `ncols` columns; returns
/// the pivot column of each leading row.
fn rref(a: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&k| !a[k][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for k in 0..a.len() {
            if k != r && !a[k][col].is_zero() {
                let f = a[k][col].clone();
                for j in 0..a[k].len() {
                    if !a[r][j].is_zero() {
                        a[k][j] = a[k][j].sub(&f.mul(&a[r][j]));
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

/// Inverse of a square matrix given by columns, or `None` when singular.
fn invert(cols: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = cols.len();
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
            row.extend((0..n).map(|j| if j == r { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    if rref(&mut a, n).len() < n {
        return None;
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[derive(Clone, Debug)]
pub struct LatticeCheck {
    pub c: RadArray,
    pub i: usize,
    pub raise: bool,
    pub expected: Option<RadArray>,
    pub detail: String,
}

impl fmt::Display for LatticeCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.raise { 'e' } else { 'f' };
        write!(f, "{op}{} on {:?}: {}", self.i, self.c.0, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub algebra: AlgebraType,
    pub i: usize,
    pub max_degree: u32,
    pub checks: usize,
    pub failures: Vec<LatticeCheck>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The string f_i^{(0)}κ, f_i^{(1)}κ, … of an e_i-highest vector, up to
/// total degree `top`.
fn f_chain(pbw: &Pbw, i: usize, kappa: AlgElement, deg: u32, top: u32) -> Result<Vec<AlgElement>, PbwError> {
    let r = pbw.algebra().r() as u32;
    let mut out = vec![kappa];
    let mut raw = out[0].clone();
    for k in 1..=top.saturating_sub(deg) {
        raw = pbw.adjoint_f(i, &raw)?;
        if raw.is_zero() {
            break;
        }
        out.push(raw.scale(&q_int_fact(k, r).inv().expect("nonzero")));
    }
    Ok(out)
}

struct Strings {
    /// Per weight: the e_i-kernel vectors with their f_i-strings.
    chains: HashMap<Weight, Vec<Vec<AlgElement>>>,
}

/// Compares algebraic f̃_i, ẽ_i on every 𝐅^{(𝐜)} of degree ≤ `max_degree`
/// with the combinatorial operators: the image must lie in 𝓛(𝒩) and reduce
/// to ±𝐅^{(f̃_i𝐜)} (or 0) mod q𝓛(𝒩).
pub fn verify_lattice(pbw: &Pbw, x: &RadCrystal, i: usize, max_degree: u32) -> Result<LatticeReport, PbwError> {
    verify_lattice_against(pbw, x, i, max_degree, &|c, raise| if raise { x.e(i, c) } else { x.f(i, c) })
}

/// Oracle for the expected mod-q image: (𝐜, raise) ↦ ẽ_i𝐜 or f̃_i𝐜.
pub type Oracle<'a> = dyn Fn(&RadArray, bool) -> Option<RadArray> + Sync + 'a;

/// [`verify_lattice`] with the combinatorial side supplied by `oracle`.
pub fn verify_lattice_against(
    pbw: &Pbw,
    x: &RadCrystal,
    i: usize,
    max_degree: u32,
    oracle: &Oracle,
) -> Result<LatticeReport, PbwError> {
    let g = pbw.algebra();
    let mut by_weight: BTreeMap<Weight, Vec<RadArray>> = BTreeMap::new();
    for c in x.enumerate(max_degree) {
        by_weight.entry(x.weight(&c)).or_default().push(c);
    }
    let mut report = LatticeReport { algebra: g, i, max_degree, checks: 0, failures: Vec::new() };
    let results: Vec<Result<Vec<(usize, Vec<LatticeCheck>)>, PbwError>> = if i == g.m {
        by_weight
            .par_iter()
            .map(|(_, cs)| cs.iter().map(|c| odd_check(pbw, x, i, c, oracle)).collect())
            .collect()
    } else {
        let strings = build_strings(pbw, x, i, &by_weight, max_degree)?;
        by_weight
            .par_iter()
            .map(|(w, cs)| even_checks(pbw, x, i, w, cs, &strings, oracle).map(|v| vec![v]))
            .collect()
    };
    for r in results {
        for (n, fails) in r? {
            report.checks += n;
            report.failures.extend(fails);
        }
    }
    Ok(report)
}

fn build_strings(
    pbw: &Pbw,
    x: &RadCrystal,
    i: usize,
    by_weight: &BTreeMap<Weight, Vec<RadArray>>,
    max_degree: u32,
) -> Result<Strings, PbwError> {
    let chains: Vec<(Weight, Result<Vec<Vec<AlgElement>>, PbwError>)> = by_weight
        .par_iter()
        .map(|(w, cs)| {
            let run = || -> Result<Vec<Vec<AlgElement>>, PbwError> {
                let basis: Vec<AlgElement> = cs.iter().map(|c| pbw.divided_monomial(&c.0)).collect::<Result<_, _>>()?;
                let images: Vec<LatVec> =
                    basis.iter().map(|b| pbw.adjoint_e(i, b).map(|e| to_lattice(pbw, &e))).collect::<Result<_, _>>()?;
                let deg = x.degree(&cs[0]);
                kernel(&images)
                    .into_iter()
                    .map(|v| {
                        let mut kappa = AlgElement::zero();
                        for (b, s) in basis.iter().zip(&v) {
                            kappa.add_scaled(b, s);
                        }
                        f_chain(pbw, i, kappa, deg, max_degree + 1)
                    })
                    .collect()
            };
            (*w, run())
        })
        .collect();
    let mut out = HashMap::new();
    for (w, r) in chains {
        out.insert(w, r?);
    }
    Ok(Strings { chains: out })
}

fn mod_q_check(x: &RadCrystal, v: &LatVec, expected: &Option<RadArray>) -> Result<(), String> {
    let mut hits = Vec::new();
    for (c, s) in v {
        if !s.in_a0() {
            return Err(format!("coefficient of {} has valuation {:?}", x.format(c), s.valuation()));
        }
        let r = s.mod_q().expect("in A0");
        if r != num_rational::BigRational::from_integer(0.into()) {
            hits.push((c, r));
        }
    }
    let one = num_rational::BigRational::from_integer(1.into());
    match (expected, hits.as_slice()) {
        (None, []) => Ok(()),
        (Some(e), [(c, r)]) if *c == e && (*r == one || *r == -one.clone()) => Ok(()),
        _ => Err(format!(
            "mod q image {:?}, expected {}",
            hits.iter().map(|(c, r)| format!("{r}·{}", x.format(c))).collect::<Vec<_>>(),
            expected.as_ref().map_or("0".to_string(), |e| x.format(e))
        )),
    }
}

fn odd_check(pbw: &Pbw, x: &RadCrystal, i: usize, c: &RadArray, oracle: &Oracle) -> Result<(usize, Vec<LatticeCheck>), PbwError> {
    let u = pbw.divided_monomial(&c.0)?;
    let r = pbw.algebra().r();
    let f = pbw.adjoint_f(i, &u)?;
    let e = pbw.adjoint_k(&x.rs.simple[i], &pbw.adjoint_e(i, &u)?).scale(&Scalar::q_pow(-r));
    let mut fails = Vec::new();
    for (raise, img) in [(false, f), (true, e)] {
        let expected = oracle(c, raise);
        if let Err(detail) = mod_q_check(x, &to_lattice(pbw, &img), &expected) {
            fails.push(LatticeCheck { c: c.clone(), i, raise, expected, detail });
        }
    }
    Ok((2, fails))
}

fn even_checks(
    pbw: &Pbw,
    x: &RadCrystal,
    i: usize,
    w: &Weight,
    cs: &[RadArray],
    strings: &Strings,
    oracle: &Oracle,
) -> Result<(usize, Vec<LatticeCheck>), PbwError> {
    let g = pbw.algebra();
    let ai = x.rs.simple[i];
    // (k, kernel vector index) for each string vector through this weight
    let mut labels = Vec::new();
    let mut vecs = Vec::new();
    let mut nu = *w;
    for k in 0.. {
        let Some(chs) = strings.chains.get(&nu) else { break };
        for (j, ch) in chs.iter().enumerate() {
            if let Some(v) = ch.get(k) {
                labels.push((k, nu, j));
                vecs.push(to_lattice(pbw, v));
            }
        }
        nu = nu.add(&ai);
    }
    let fail = |detail: String| {
        let fails: Vec<LatticeCheck> = cs
            .iter()
            .map(|c| LatticeCheck { c: c.clone(), i, raise: false, expected: oracle(c, false), detail: detail.clone() })
            .collect();
        Ok((2 * cs.len(), fails))
    };
    if vecs.len() != cs.len() {
        return fail(format!("string vectors span {} of {} dimensions", vecs.len(), cs.len()));
    }
    let cols: Vec<Vec<Scalar>> =
        vecs.iter().map(|v| cs.iter().map(|c| v.get(c).cloned().unwrap_or_else(Scalar::zero)).collect()).collect();
    let Some(inv) = invert(&cols) else {
        return fail("string vectors are dependent".to_string());
    };
    let r = g.r();
    let mut fails = Vec::new();
    for (col, c) in cs.iter().enumerate() {
        let mut up = AlgElement::zero();
        let mut down = AlgElement::zero();
        for (row, &(k, nu, j)) in labels.iter().enumerate() {
            let coef = &inv[row][col];
            if coef.is_zero() {
                continue;
            }
            let l = -x.rs.bilinear(&nu, &ai) / g.r();
            let ch = &strings.chains[&nu][j];
            let k = k as i32;
            let (pf, pe) = if i < g.m { (0, 0) } else { (r * (l - 2 * k - 1), r * (-l + 2 * k - 1)) };
            if let Some(v) = ch.get(k as usize + 1) {
                up.add_scaled(v, &coef.mul(&Scalar::q_pow(pf)));
            }
            if k >= 1 {
                down.add_scaled(&ch[k as usize - 1], &coef.mul(&Scalar::q_pow(pe)));
            }
        }
        for (raise, img) in [(false, &up), (true, &down)] {
            let expected = oracle(c, raise);
            if let Err(detail) = mod_q_check(x, &to_lattice(pbw, img), &expected) {
                fails.push(LatticeCheck { c: c.clone(), i, raise, expected, detail });
            }
        }
    }
    Ok((2 * cs.len(), fails))
}
