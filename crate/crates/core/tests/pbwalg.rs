use osp_core::pbwalg::verify::{omega_check, Omega};
use osp_core::pbwalg::{AlgElement, Convention, Mono, Pbw, PbwError};
use osp_core::qshuffle::{psi_image, ShuffleVec};
use osp_core::superroot::{AlgebraType, Family, Root, Word};
use osp_core::Scalar;
use proptest::prelude::*;

fn pbw(f: Family, m: usize, n: usize) -> Pbw {
    Pbw::new(AlgebraType::new(f, m, n).unwrap())
}

fn lp(t: &[(i32, i64)]) -> Scalar {
    Scalar::laurent(t)
}

fn mono(p: &Pbw, fs: &[((usize, usize), u8)]) -> Mono {
    let mut m = Mono::one(p.n_roots());
    for &((i, j), c) in fs {
        m.0[p.rs.idx(i, j)] = c;
    }
    m
}

fn el(p: &Pbw, terms: &[(&[((usize, usize), u8)], Scalar)]) -> AlgElement {
    let mut x = AlgElement::zero();
    for (fs, c) in terms {
        x.add_term(mono(p, fs), c);
    }
    x
}

fn qplus() -> Scalar {
    lp(&[(1, 1), (-1, 1)])
}

#[test]
fn simple_root_vectors_are_generators() {
    for f in [Family::B, Family::C, Family::D] {
        let p = pbw(f, 2, 2);
        for i in 0..4 {
            let k = p.rs.simple_index(i);
            let v = p.root_vector_at(k);
            assert_eq!(v.len(), 1);
            assert!(v[&Word::from_letters(&[i as u8])].is_one());
        }
    }
}

#[test]
fn root_vectors_agree_with_closed_forms() {
    for (f, m, n) in [(Family::B, 2, 3), (Family::C, 2, 3), (Family::D, 3, 3), (Family::D, 2, 2), (Family::B, 3, 2)] {
        let p = pbw(f, m, n);
        for k in 0..p.rs.n_rad {
            let closed = psi_image(&p.rs, &p.sh, p.rs.pair(k)).unwrap();
            assert_eq!(p.psi_root(k), &closed, "{f}{m}|{n} {}", p.rs.pair(k));
        }
    }
}

#[test]
fn free_root_vector_maps_to_shuffle_recursion() {
    let p = pbw(Family::D, 3, 2);
    for k in 0..p.rs.roots.len() {
        let free = p.root_vector_at(k);
        assert_eq!(&p.sh.psi(&free), p.psi_root(k));
    }
}

#[test]
fn b_root_vector_one_two() {
    let p = pbw(Family::B, 2, 3);
    let v = p.sh.psi(&p.root_vector(Root::new(1, 2)).unwrap());
    // (q^-1 - q)(1 - q^4) w[0,0,1]
    let c = lp(&[(-1, 1), (1, -1)]).mul(&lp(&[(0, 1), (4, -1)]));
    assert_eq!(v, ShuffleVec::term(Word::from_letters(&[0, 0, 1]), c));
}

#[test]
fn d_diagonal_root_uses_the_uniform_rule() {
    let p = pbw(Family::D, 2, 2);
    // f_{(3,3)} = (1/[2]) [f_2, f_{(2,3)}]_q
    let k = p.rs.idx(3, 3);
    let sp = p.split(k).unwrap();
    assert_eq!(sp.beta1, p.rs.idx(2, 3));
    assert_eq!(sp.beta2, p.rs.simple_index(2));
    assert_eq!(sp.denom, qplus());
    let f2 = p.root_vector_at(p.rs.simple_index(2));
    let f23 = p.root_vector(Root::new(2, 3)).unwrap();
    let br = p.q_bracket_free(&f2, &f23).unwrap();
    let inv = qplus().inv().unwrap();
    let expect: std::collections::HashMap<_, _> = br.into_iter().map(|(w, c)| (w, c.mul(&inv))).collect();
    assert_eq!(p.root_vector(Root::new(3, 3)).unwrap(), expect);
}

#[test]
fn not_a_radical_root() {
    let p = pbw(Family::C, 2, 2);
    assert!(matches!(p.root_vector(Root::new(3, 3)), Err(PbwError::Root(_))));
    assert!(p.straighten(&[Root::new(1, 1), Root::new(4, 4)]).is_err());
}

#[test]
fn bracket_examples() {
    let p = pbw(Family::B, 2, 3);
    let f11 = p.straighten(&[Root::new(1, 1)]).unwrap();
    let f22 = p.straighten(&[Root::new(2, 2)]).unwrap();
    assert_eq!(p.q_bracket(&f22, &f11).unwrap(), el(&p, &[(&[((1, 2), 1)], qplus())]));
    let s = p.straighten(&[Root::new(2, 2), Root::new(1, 1)]).unwrap();
    assert_eq!(s, el(&p, &[(&[((1, 1), 1), ((2, 2), 1)], Scalar::one()), (&[((1, 2), 1)], qplus())]));

    let c = pbw(Family::C, 2, 3);
    let f11 = c.straighten(&[Root::new(1, 1)]).unwrap();
    let f22 = c.straighten(&[Root::new(2, 2)]).unwrap();
    // (q^-2 - 1)(q + q^-1)^{-1} f_{(1,2)}^2 = (q^-2 - 1) f_{(1,2)}^{(2)}
    assert_eq!(c.q_bracket(&f22, &f11).unwrap(), el(&c, &[(&[((1, 2), 2)], lp(&[(-2, 1), (0, -1)]))]));
}

#[test]
fn bracket_of_disjoint_generators() {
    let p = pbw(Family::B, 2, 2);
    let f0 = p.sh.psi(&p.root_vector_at(p.rs.simple_index(0)));
    let f0v = p.root_vector_at(p.rs.simple_index(0));
    let f2v = p.root_vector_at(p.rs.simple_index(2));
    let br = p.q_bracket_free(&f0v, &f2v).unwrap();
    assert_eq!(br.len(), 2);
    assert!(br[&Word::from_letters(&[0, 2])].is_one());
    assert_eq!(br[&Word::from_letters(&[2, 0])], Scalar::from_i64(-1));
    assert_eq!(f0.len(), 1);
}

#[test]
fn isotropic_bracket_doubles() {
    let p = pbw(Family::B, 2, 2);
    let k = p.rs.idx(1, 3);
    assert!(p.rs.roots[k].is_isotropic());
    let x = p.root_element(k);
    // 𝐪(|x|,|x|) = -1, so [x,x] = 2x^2, and x^2 = 0.
    assert!(p.q_bracket(&x, &x).unwrap().is_zero());
    let xv = p.root_vector_at(k);
    let br = p.q_bracket_free(&xv, &xv).unwrap();
    let sq = osp_core::pbwalg::free_mul(&xv, &xv);
    for (w, c) in &br {
        assert_eq!(c, &sq[w].mul_i64(2));
    }
}

#[test]
fn isotropic_squares_vanish() {
    for (f, m, n) in [(Family::B, 2, 3), (Family::C, 3, 2), (Family::D, 3, 3)] {
        let p = pbw(f, m, n);
        for k in 0..p.rs.n_rad {
            if p.rs.roots[k].is_isotropic() {
                assert!(p.straighten_idx(&[k, k]).is_zero());
            }
        }
    }
}

#[test]
fn ordered_input_only_gains_factorials() {
    let p = pbw(Family::C, 2, 2);
    let s = p.straighten(&[Root::new(1, 1), Root::new(1, 2), Root::new(1, 2)]).unwrap();
    assert_eq!(s, el(&p, &[(&[((1, 1), 1), ((1, 2), 2)], qplus())]));
    assert_eq!(p.straighten(&[]).unwrap(), AlgElement::unit(p.n_roots()));
}

#[test]
fn derivation_examples() {
    let p = pbw(Family::B, 2, 2);
    let n = p.rs.g.rank();
    for i in 0..n {
        for j in 0..n {
            let fj = AlgElement::term(Mono::one(p.n_roots()).bumped(p.rs.simple_index(j), 1), Scalar::one());
            let d = p.eprime(i, &fj).unwrap();
            let expect = if i == j { AlgElement::unit(p.n_roots()) } else { AlgElement::zero() };
            assert_eq!(d, expect);
            assert_eq!(p.edoubleprime(i, &fj).unwrap(), expect);
        }
    }
    for (f, m, nn) in [(Family::B, 2, 2), (Family::C, 2, 2), (Family::D, 2, 2)] {
        let p = pbw(f, m, nn);
        for k in 0..p.rs.n_rad {
            let u = p.root_element(k);
            for i in 1..p.rs.g.rank() {
                assert!(p.edoubleprime(i, &u).unwrap().is_zero());
            }
            if k != p.rs.simple_index(0) {
                assert!(p.eprime(0, &u).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn adjoint_examples() {
    let p = pbw(Family::B, 2, 3);
    for i in 1..5 {
        let u = p.straighten(&[Root::new(i + 1, i + 1)]).unwrap();
        assert_eq!(p.adjoint_e(i, &u).unwrap(), el(&p, &[(&[((i, i), 1)], Scalar::one())]));
        let u = p.straighten(&[Root::new(i, i + 1)]).unwrap();
        // (𝚚_{i+1}^{-1} - 1)(q + q^-1)^{-1} f^2, with f^2 = [2] f^{(2)} or {2} f^{(2)}
        let sq = p.root_qint(p.rs.idx(i + 1, i + 1), 2);
        let qa = p.rs.g.qa(i + 1).inv().scalar().sub(&Scalar::one()).mul(&sq).div(&qplus());
        assert_eq!(p.adjoint_f(i, &u).unwrap(), el(&p, &[(&[((i + 1, i + 1), 2)], qa)]));
    }
    let d = pbw(Family::D, 2, 3);
    for i in 2..5 {
        let u = d.straighten(&[Root::new(i + 1, i + 1)]).unwrap();
        let got = d.adjoint_e(i, &u).unwrap();
        assert_eq!(got, el(&d, &[(&[((i, i + 1), 1)], Scalar::from_i64(-1))]));
    }
    assert_eq!(p.adjoint_e(0, &AlgElement::unit(p.n_roots())), Err(PbwError::NotLevi('e', 0)));
    assert_eq!(p.adjoint_f(0, &AlgElement::unit(p.n_roots())), Err(PbwError::NotLevi('f', 0)));
}

#[test]
fn k_acts_by_weight() {
    let p = pbw(Family::C, 2, 2);
    let k = p.rs.idx(1, 1);
    let u = p.root_element(k);
    let mu = p.rs.simple[1].clone();
    let got = p.adjoint_k(&mu, &u);
    let w = p.rs.roots[k].weight.neg();
    assert_eq!(got, u.scale(&p.rs.q_factor(&w, &mu).scalar()));
}

#[test]
fn lattice_normalization() {
    let d = pbw(Family::D, 2, 2);
    let mut c = vec![0u32; d.rs.n_rad];
    assert_eq!(d.divided_monomial(&c).unwrap(), AlgElement::unit(d.n_roots()));
    let k = d.rs.idx(3, 3);
    c[k] = 2;
    assert_eq!(d.divided_monomial(&c).unwrap(), el(&d, &[(&[((3, 3), 2)], Scalar::q_pow(-4))]));
    let iso = d.rs.idx(1, 3);
    c[iso] = 2;
    assert!(matches!(d.divided_monomial(&c), Err(PbwError::IsotropicPower(..))));

    let b = pbw(Family::B, 2, 2);
    assert_eq!(b.lattice_scale(b.rs.idx(3, 3), 3), Scalar::q_pow(-3));
    assert_eq!(b.lattice_scale(b.rs.idx(3, 4), 3), Scalar::q_pow(-6));
    assert!(b.lattice_scale(b.rs.idx(1, 1), 3).is_one());
}

#[test]
fn odd_braces_convention() {
    let g = AlgebraType::new(Family::B, 2, 2).unwrap();
    let p = Pbw::with_convention(g, Convention::OddBraces);
    assert!(p.verify_commutators().passed());
    assert!(p.verify_adjoint().passed());
    let k = p.rs.idx(3, 4);
    // [2]/{2} = -(q + q^-1)/(q - q^-1)
    assert_eq!(p.kappa(k), &qplus().neg().div(&lp(&[(1, 1), (-1, -1)])));
}

#[test]
fn commutators_small() {
    for (f, m, n) in [(Family::B, 2, 2), (Family::C, 2, 2), (Family::D, 2, 2), (Family::D, 3, 1)] {
        let p = pbw(f, m, n);
        let r = p.verify_commutators();
        assert!(r.passed(), "{f}{m}|{n}: {:?}", r.failures().next());
    }
}

#[test]
fn commutator_check_detects_a_wrong_value() {
    let p = pbw(Family::B, 2, 2);
    let (a, b) = (p.rs.idx(1, 1), p.rs.idx(2, 2));
    let honest = p.shuffle_commutator(a, b);
    assert_eq!(&honest, &*p.commutator(a, b));
    let wrong = honest.scale(&Scalar::q());
    assert_ne!(honest, wrong);
}

#[test]
fn expansion_residual_is_zero() {
    let p = pbw(Family::C, 2, 2);
    let x = p.psi(&p.straighten_idx(&[3, 1, 0, 2]));
    let back = p.expand_in_pbw(&x, true).unwrap();
    assert_eq!(back, p.straighten_idx(&[3, 1, 0, 2]));
}

#[test]
fn omega_images() {
    let c = pbw(Family::C, 2, 3);
    let d = pbw(Family::D, 3, 2);
    let om = Omega::new(&c, &d).unwrap();
    let (t, neg) = om.image_root(c.rs.idx(1, 3));
    assert_eq!((d.rs.pair(t), neg), (Root::new(3, 5), false));
    let (t, neg) = om.image_root(c.rs.idx(2, 2));
    assert_eq!((d.rs.pair(t), neg), (Root::new(4, 4), true));
    assert_eq!(qplus().omega(), qplus().neg());
    assert!(omega_check(2, 2, 30, 5, 1).unwrap().passed());
    assert!(Omega::new(&d, &c).is_err());
}

#[test]
fn pbw_independence_small() {
    let p = pbw(Family::D, 2, 2);
    let r = p.pbw_rank(5);
    assert!(r.passed());
    assert!(r.weights.iter().any(|w| w.monomials > 1));
}

fn algebra() -> impl Strategy<Value = (Family, usize, usize)> {
    prop_oneof![
        Just((Family::B, 2, 2)),
        Just((Family::C, 2, 2)),
        Just((Family::D, 2, 2)),
        Just((Family::B, 2, 1)),
        Just((Family::C, 3, 1)),
        Just((Family::D, 3, 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn straightening_matches_shuffle_product(g in algebra(), raw in prop::collection::vec(0usize..64, 1..5)) {
        let p = pbw(g.0, g.1, g.2);
        let idx: Vec<usize> = raw.iter().map(|r| r % p.rs.n_rad).collect();
        prop_assume!(idx.iter().map(|&k| p.rs.roots[k].ht).sum::<u32>() <= 10);
        let s = p.straighten_idx(&idx);
        let mut v = ShuffleVec::word(Word::empty());
        for &k in &idx {
            v = p.sh.shuffle(&v, p.psi_root(k));
        }
        prop_assert_eq!(p.psi(&s), v);
    }

    #[test]
    fn straightening_is_confluent(g in algebra(), raw in prop::collection::vec(0usize..64, 2..7), cut in 1usize..6) {
        let p = pbw(g.0, g.1, g.2);
        let idx: Vec<usize> = raw.iter().map(|r| r % p.rs.n_rad).collect();
        let cut = cut.min(idx.len() - 1);
        let whole = p.straighten_idx(&idx);
        let left = p.straighten_idx(&idx[..cut]);
        let right = p.straighten_idx(&idx[cut..]);
        prop_assert_eq!(&whole, &p.mul(&left, &right));
        let rev: Vec<usize> = idx.iter().rev().cloned().collect();
        let r = p.straighten_idx(&rev);
        let back = p.mul_factors(&AlgElement::unit(p.n_roots()), &rev);
        prop_assert_eq!(r, back);
    }

    #[test]
    fn module_property(g in algebra(), raw in prop::collection::vec(0usize..64, 1..4), i in 1usize..3) {
        let p = pbw(g.0, g.1, g.2);
        let idx: Vec<usize> = raw.iter().map(|r| r % p.rs.n_rad).collect();
        let u = p.straighten_idx(&idx);
        prop_assert_eq!(p.adjoint_e(i, &u).unwrap(), p.adjoint_e_rule(i, &u).unwrap());
        prop_assert_eq!(p.adjoint_f(i, &u).unwrap(), p.adjoint_f_rule(i, &u).unwrap());
    }
}
