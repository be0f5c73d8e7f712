use osp_core::pbwalg::Pbw;
use osp_core::radcrystal::verify::{verify_lattice, verify_lattice_against};
use osp_core::radcrystal::RadCrystal;
use osp_core::superroot::{AlgebraType, Family};

#[test]
fn lattice_all_families() {
    for f in [Family::B, Family::C, Family::D] {
        for n in 1..=2 {
            let g = AlgebraType::new(f, 2, n).unwrap();
            let pbw = Pbw::new(g);
            let x = RadCrystal::new(g);
            for i in 1..g.rank() {
                let r = verify_lattice(&pbw, &x, i, 5).unwrap();
                assert!(r.checks > 0);
                let shown: Vec<String> = r.failures.iter().take(5).map(|c| c.to_string()).collect();
                assert!(r.passed(), "{g} i={i}: {} failures\n{}", r.failures.len(), shown.join("\n"));
            }
        }
    }
}

// Using f̃_j in place of f̃_i must be caught.
#[test]
fn wrong_oracle_fails() {
    for f in [Family::B, Family::C, Family::D] {
        let g = AlgebraType::new(f, 2, 2).unwrap();
        let pbw = Pbw::new(g);
        let x = RadCrystal::new(g);
        for i in 1..g.rank() {
            let j = if i == 1 { 3 } else { 1 };
            let r = verify_lattice_against(&pbw, &x, i, 3, &|c, raise| if raise { x.e(j, c) } else { x.f(j, c) })
                .unwrap();
            assert!(!r.passed(), "{g} i={i}: wrong oracle accepted");
        }
    }
}

// An oracle that leaves 𝐜 unchanged must be caught.
#[test]
fn identity_oracle_fails() {
    let g = AlgebraType::new(Family::B, 2, 2).unwrap();
    let pbw = Pbw::new(g);
    let x = RadCrystal::new(g);
    let r = verify_lattice_against(&pbw, &x, 3, 3, &|c, _| Some(c.clone())).unwrap();
    assert!(!r.passed());
}
