use osp_core::radcrystal::*;
use osp_core::superroot::{AlgebraType, Family, Root, Weight};
use proptest::prelude::*;

fn crystal(f: Family, m: usize, n: usize) -> RadCrystal {
    RadCrystal::new(AlgebraType::new(f, m, n).unwrap())
}

fn array(x: &RadCrystal, entries: &[((usize, usize), u32)]) -> RadArray {
    let pairs: Vec<(Root, u32)> = entries.iter().map(|&((i, j), v)| (Root::new(i, j), v)).collect();
    x.from_pairs(&pairs).unwrap()
}

fn with(x: &RadCrystal, c: &RadArray, changes: &[((usize, usize), u32)]) -> RadArray {
    let mut out = c.clone();
    for &((i, j), v) in changes {
        out.0[x.rs.idx(i, j)] = v;
    }
    out
}

pub fn b23_example(x: &RadCrystal) -> RadArray {
    array(
        x,
        &[
            ((1, 1), 2), ((1, 2), 2), ((1, 3), 1), ((1, 5), 1), ((2, 2), 1), ((2, 4), 1),
            ((3, 4), 2), ((3, 5), 1), ((4, 4), 1), ((5, 5), 1),
        ],
    )
}

#[test]
fn weight_and_degree() {
    let x = crystal(Family::B, 2, 3);
    let o = x.zero();
    assert_eq!(x.weight(&o), Weight::zero());
    assert_eq!(x.degree(&o), 0);
    let a = array(&x, &[((1, 1), 1)]);
    assert_eq!(x.weight(&a), Weight::delta(1));
    assert_eq!(x.degree(&a), 1);
    // Independent sum of δ_i + δ_j (or δ_i on the diagonal) over the entries.
    let c = b23_example(&x);
    let mut want = [0i32; 5];
    for (k, &v) in c.0.iter().enumerate() {
        let p = x.rs.pair(k);
        want[p.i as usize - 1] += v as i32;
        if p.i != p.j {
            want[p.j as usize - 1] += v as i32;
        }
    }
    assert_eq!(want, [6, 4, 4, 4, 3]);
    assert_eq!(x.weight(&c), Weight::from_coords(&want));
}

#[test]
fn local_tables() {
    let x = crystal(Family::B, 3, 2);
    let d = x.factors(1).iter().find(|f| f.kind == LocalKind::Delta).unwrap();
    assert_eq!(d.rule, Some(DeltaRule::BLess));
    assert_eq!(d.local_f([4, 0, 1]), Some([2, 1, 1]));
    assert_eq!(d.local_f([2, 0, 1]), Some([1, 0, 2]));
    assert_eq!(d.local_f([1, 1, 2]), Some([1, 0, 4]));
    assert_eq!(d.local_f([1, 0, 2]), None);
    let x = crystal(Family::C, 2, 3);
    let d = x.factors(2).iter().find(|f| f.kind == LocalKind::Delta).unwrap();
    assert_eq!(d.rule, Some(DeltaRule::CEqual));
    assert_eq!(d.local_f([3, 0, 0]), Some([2, 1, 0]));
    assert_eq!(d.local_f([3, 1, 0]), None);
    let x = crystal(Family::D, 3, 3);
    let d = x.factors(4).iter().find(|f| f.kind == LocalKind::Delta).unwrap();
    assert_eq!(d.rule, Some(DeltaRule::DGreater));
    assert_eq!(d.local_f([1, 3, 0]), Some([1, 2, 1]));
    assert_eq!(d.local_f([1, 2, 0]), Some([0, 3, 0]));
    assert_eq!(d.local_f([0, 2, 5]), None);
    let dm = x.factors(3).iter().find(|f| f.kind == LocalKind::Delta).unwrap();
    assert_eq!(dm.rule, Some(DeltaRule::DEqual));
    assert_eq!(dm.local_f([0, 1, 2]), Some([0, 0, 3]));
    assert_eq!(dm.local_f([0, 0, 2]), None);
    // b, i > m and i = m
    let x = crystal(Family::B, 2, 3);
    let d3 = x.factors(3).iter().find(|f| f.kind == LocalKind::Delta).unwrap();
    assert_eq!(d3.local_f([2, 1, 0]), Some([1, 1, 1]));
    assert_eq!(d3.local_f([0, 1, 0]), None);
    let d2 = x.factors(2).iter().find(|f| f.kind == LocalKind::Delta).unwrap();
    assert_eq!(d2.local_f([3, 0, 1]), Some([1, 1, 1]));
    assert_eq!(d2.local_f([1, 0, 1]), Some([0, 0, 2]));
    assert_eq!(d2.local_f([1, 1, 1]), None);
}

#[test]
fn local_tables_are_injective() {
    for f in [Family::B, Family::C, Family::D] {
        let x = crystal(f, 3, 3);
        for i in 1..6 {
            for fac in x.factors(i) {
                for a in 0..6u32 {
                    for b in 0..6u32 {
                        for c in 0..6u32 {
                            let st = [a, b, c];
                            if fac.slots.iter().zip(st).any(|(s, v)| s.is_none() && v > 0)
                                || st.iter().zip(fac.caps).any(|(&v, cap)| v > cap)
                            {
                                continue;
                            }
                            if let Some(y) = fac.local_f(st) {
                                assert_eq!(fac.local_e(y), Some(st), "{f:?} i={i} {st:?}");
                            }
                            if let Some(y) = fac.local_e(st) {
                                assert_eq!(fac.local_f(y), Some(st));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn example_b23() {
    let x = crystal(Family::B, 2, 3);
    let c = b23_example(&x);
    assert_eq!(x.f(1, &c), Some(with(&x, &c, &[((1, 1), 1), ((1, 2), 2), ((2, 2), 2)])));
    assert_eq!(x.eps_phi(1, &c), (2, 4));
    assert_eq!(x.f(2, &c), None);
    assert_eq!(x.f(3, &c), Some(with(&x, &c, &[((1, 3), 0), ((1, 4), 1)])));
    assert_eq!(x.eps_phi(3, &c), (1, 1));
    let f12 = x.f(1, &x.f(1, &c).unwrap()).unwrap();
    assert_eq!((x.get(&f12, 1, 1), x.get(&f12, 1, 2), x.get(&f12, 2, 2)), (1, 1, 4));
    assert_eq!(x.f0(&c), with(&x, &c, &[((1, 1), 3)]));
}

#[test]
fn example_c23() {
    let x = crystal(Family::C, 2, 3);
    let c = array(
        &x,
        &[((1, 1), 1), ((1, 3), 1), ((1, 5), 1), ((2, 4), 1), ((3, 5), 2), ((4, 5), 1)],
    );
    assert_eq!(x.eps_phi(1, &c), (0, 3));
    let c1 = x.f(1, &c).unwrap();
    assert_eq!(c1, with(&x, &c, &[((1, 1), 0), ((1, 2), 1)]));
    let c2 = x.f(1, &c1).unwrap();
    assert_eq!(c2, with(&x, &c1, &[((1, 2), 0), ((2, 2), 1)]));
    let c3 = x.f(1, &c2).unwrap();
    assert_eq!(c3, with(&x, &c2, &[((1, 5), 0), ((2, 5), 1)]));
    assert_eq!(x.f(1, &c3), None);
    assert_eq!(x.eps_phi(3, &c), (1, 2));
    let d1 = x.f(3, &c).unwrap();
    assert_eq!(d1, with(&x, &c, &[((3, 5), 1), ((4, 5), 2)]));
    let d2 = x.f(3, &d1).unwrap();
    assert_eq!(d2, with(&x, &d1, &[((1, 3), 0), ((1, 4), 1)]));
}

#[test]
fn example_d33() {
    let x = crystal(Family::D, 3, 3);
    let c = array(
        &x,
        &[
            ((1, 3), 2), ((1, 5), 1), ((2, 3), 1), ((2, 4), 1), ((2, 6), 1), ((3, 4), 1), ((3, 6), 1),
            ((4, 4), 2), ((4, 5), 2), ((4, 6), 3), ((5, 5), 1), ((5, 6), 2),
        ],
    );
    assert_eq!(x.eps_phi(4, &c), (2, 6));
    let mut y = c.clone();
    for _ in 0..6 {
        y = x.f(4, &y).unwrap();
    }
    assert_eq!(x.f(4, &y), None);
    let want = with(&x, &c, &[((3, 4), 0), ((3, 5), 1), ((4, 4), 0), ((4, 5), 2), ((4, 6), 2), ((5, 5), 3), ((5, 6), 3)]);
    assert_eq!(y, want);
}

#[test]
fn alpha0_operators() {
    let x = crystal(Family::B, 2, 3);
    assert_eq!(x.e0(&x.zero()), None);
    let c = b23_example(&x);
    assert_eq!(x.e0(&x.f0(&c)), Some(c.clone()));
    assert_eq!(x.e(0, &c), Some(with(&x, &c, &[((1, 1), 1)])));
    let d = crystal(Family::D, 2, 2);
    assert_eq!(d.rs.pair(d.alpha0()), Root::new(1, 2));
}

#[test]
fn enumeration_small() {
    let x = crystal(Family::B, 2, 3);
    assert_eq!(x.enumerate(0), vec![x.zero()]);
    assert_eq!(x.enumerate(1), vec![x.zero(), array(&x, &[((1, 1), 1)])]);
    // brute force over exponent vectors with entries ≤ 2
    let hts: Vec<u32> = x.rs.radical().iter().map(|r| r.ht).collect();
    let iso: Vec<bool> = x.rs.radical().iter().map(|r| r.is_isotropic()).collect();
    let n = hts.len();
    let mut count = 0;
    let mut v = vec![0u32; n];
    'outer: loop {
        let deg: u32 = v.iter().zip(&hts).map(|(a, b)| a * b).sum();
        if deg <= 2 && v.iter().zip(&iso).all(|(&a, &i)| !i || a <= 1) {
            count += 1;
        }
        for k in 0..n {
            if v[k] < 2 {
                v[k] += 1;
                continue 'outer;
            }
            v[k] = 0;
        }
        break;
    }
    assert_eq!(x.enumerate(2).len(), count);
}

#[test]
fn checked_op_rejects_bad_input() {
    let x = crystal(Family::B, 2, 2);
    assert!(x.checked_op(4, &x.zero(), false).is_err());
    assert!(x.checked_op(1, &RadArray(vec![0; 3]), false).is_err());
    let mut bad = x.zero();
    bad.0[x.rs.idx(1, 3)] = 2;
    assert!(x.check(&bad).is_err());
}

fn family() -> impl Strategy<Value = (Family, usize, usize)> {
    (prop_oneof![Just(Family::B), Just(Family::C), Just(Family::D)], 2usize..=3, 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crystal_axioms((f, m, n) in family(), seed in 0usize..10_000) {
        let x = crystal(f, m, n);
        let all = x.enumerate(5);
        let c = &all[seed % all.len()];
        let deg = x.degree(c);
        for i in 0..x.algebra().rank() {
            let support = x.support(i);
            if let Some(y) = x.f(i, c) {
                prop_assert_eq!(x.degree(&y), deg + 1);
                prop_assert_eq!(x.e(i, &y), Some(c.clone()));
                prop_assert!(x.check(&y).is_ok());
                for k in 0..x.n_roots() {
                    if !support.contains(&k) {
                        prop_assert_eq!(y.0[k], c.0[k]);
                    }
                }
                if i > 0 {
                    prop_assert_eq!(x.weight(&y), x.weight(c).sub(&x.rs.simple[i]));
                }
            }
            if let Some(y) = x.e(i, c) {
                prop_assert_eq!(x.degree(&y) + 1, deg);
                prop_assert_eq!(x.f(i, &y), Some(c.clone()));
            }
            if i > 0 {
                let (e, p) = x.eps_phi(i, c);
                let count = |raise: bool| {
                    let (mut y, mut k) = (c.clone(), 0);
                    while let Some(z) = if raise { x.e(i, &y) } else { x.f(i, &y) } {
                        y = z;
                        k += 1;
                    }
                    k
                };
                prop_assert_eq!((e, p), (count(true), count(false)));
                if i == m {
                    prop_assert!(p <= 1 && e <= 1);
                }
            }
        }
    }
}
