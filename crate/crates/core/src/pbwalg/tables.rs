//! Closed-form commutator and adjoint tables on root vectors of the radical.

use crate::qscalar::Scalar;
use crate::superroot::{Family, Root, RootSystem};

/// A table value: scalar times an ordered product of radical roots.
pub type TableTerm = (Scalar, Vec<Root>);

fn l(t: &[(i32, i64)]) -> Scalar {
    Scalar::laurent(t)
}

fn qplus() -> Scalar {
    l(&[(1, 1), (-1, 1)])
}

fn r(i: usize, j: usize) -> Root {
    Root::new(i, j)
}

/// [𝐟_β, 𝐟_α]_𝐪 for α ≺ β, as stated for each family.
pub fn commutator(rs: &RootSystem, alpha: Root, beta: Root) -> Vec<TableTerm> {
    let (i1, j1) = (alpha.i as usize, alpha.j as usize);
    let (i2, j2) = (beta.i as usize, beta.j as usize);
    let m = rs.g.m;
    let q2m = l(&[(-2, 1), (2, -1)]);
    let q1m = l(&[(-1, 1), (1, -1)]);
    match rs.g.family {
        Family::B => {
            if i1 == j1 && j1 < i2 && i2 == j2 {
                vec![(qplus(), vec![r(i1, i2)])]
            } else if i1 == j1 && j1 < i2 && i2 < j2 {
                vec![(q2m, vec![r(i1, j2), r(i2, i2)])]
            } else if i1 < j1 && j1 < i2 && i2 == j2 {
                vec![(q2m, vec![r(i1, i2), r(j1, j1)])]
            } else if i1 < i2 && i2 < j1 && j1 < j2 {
                vec![(q2m, vec![r(i1, j2), r(i2, j1)])]
            } else if i1 < j1 && j1 == i2 && i2 < j2 {
                let qa_inv = rs.g.qa(j1).inv().scalar();
                let c = q1m.mul(&qa_inv.sub(&Scalar::one()));
                vec![(c, vec![r(i1, j2), r(j1, j1), r(j1, j1)])]
            } else if i1 < j1 && j1 < i2 && i2 < j2 {
                let a = l(&[(-4, 1), (-2, -1), (0, -2), (2, 1), (4, 1)]);
                let b = l(&[(-2, 1), (2, -1)]);
                let c = l(&[(-3, 1), (-1, -1), (1, -1), (3, 1)]);
                vec![
                    (a, vec![r(i1, j2), r(j1, i2)]),
                    (b, vec![r(i1, i2), r(j1, j2)]),
                    (c, vec![r(i1, j2), r(j1, j1), r(i2, i2)]),
                ]
            } else {
                vec![]
            }
        }
        Family::C => {
            let q2m1 = l(&[(-2, 1), (0, -1)]);
            if i1 == j1 && j1 < i2 && i2 == j2 && j2 <= m {
                vec![(q2m1.div(&qplus()), vec![r(i1, i2), r(i1, i2)])]
            } else if i1 == j1 && j1 < i2 && i2 < j2 && i1 <= m {
                vec![(q2m1, vec![r(i1, i2), r(j1, j2)])]
            } else if i1 < j1 && j1 < i2 && i2 == j2 && j2 <= m {
                vec![(q2m1, vec![r(i1, i2), r(j1, j2)])]
            } else if i1 < i2 && i2 < j1 && j1 < j2 {
                vec![(q1m, vec![r(i2, j1), r(i1, j2)])]
            } else if i1 < j1 && j1 == i2 && i2 < j2 && j1 <= m {
                vec![(q2m, vec![r(i2, j1), r(i1, j2)])]
            } else if i1 < j1 && j1 < i2 && i2 < j2 {
                vec![(q1m, vec![r(i1, i2), r(j1, j2)]), (q2m1, vec![r(j1, i2), r(i1, j2)])]
            } else {
                vec![]
            }
        }
        Family::D => {
            let omq2 = l(&[(0, 1), (2, -1)]);
            if m < i1 && i1 == j1 && j1 < i2 && i2 == j2 {
                vec![(omq2.div(&qplus()), vec![r(i1, i2), r(i1, i2)])]
            } else if m < i1 && i1 == j1 && j1 < i2 && i2 < j2 {
                vec![(omq2, vec![r(i1, i2), r(j1, j2)])]
            } else if i1 < j1 && j1 < i2 && i2 == j2 && m < i2 {
                vec![(omq2, vec![r(i1, i2), r(j1, j2)])]
            } else if i1 < i2 && i2 < j1 && j1 < j2 {
                vec![(q1m, vec![r(i2, j1), r(i1, j2)])]
            } else if i1 < j1 && j1 == i2 && i2 < j2 && m < j1 {
                vec![(q2m, vec![r(i2, j1), r(i1, j2)])]
            } else if i1 < j1 && j1 < i2 && i2 < j2 {
                vec![(q1m, vec![r(i1, i2), r(j1, j2)]), (l(&[(2, 1), (0, -1)]), vec![r(j1, i2), r(i1, j2)])]
            } else {
                vec![]
            }
        }
    }
}

/// e_i · 𝐟_β for i in 1..m+n.
pub fn e_action(rs: &RootSystem, i: usize, beta: Root) -> Vec<TableTerm> {
    let (k, lcol) = (beta.i as usize, beta.j as usize);
    let m = rs.g.m;
    let one = Scalar::one();
    match rs.g.family {
        Family::B => {
            if k == i + 1 && lcol == i + 1 {
                vec![(one, vec![r(i, i)])]
            } else if k < lcol && k == i + 1 {
                vec![(one, vec![r(i, lcol)])]
            } else if lcol == i + 1 && k < i {
                vec![(one, vec![r(k, i)])]
            } else if k == i && lcol == i + 1 {
                let c = rs.g.qa(i).inv().scalar().sub(&one).div(&qplus());
                vec![(c, vec![r(i, i), r(i, i)])]
            } else {
                vec![]
            }
        }
        Family::C | Family::D => {
            let d = rs.g.family == Family::D;
            if k == i + 1 {
                let c = if d && lcol == i + 1 { Scalar::from_i64(-1) } else { one };
                vec![(c, vec![r(i, lcol)])]
            } else if lcol == i + 1 && k < i {
                vec![(one, vec![r(k, i)])]
            } else if k == i && lcol == i + 1 && ((!d && i <= m) || (d && i > m)) {
                vec![(qplus(), vec![r(i, i)])]
            } else {
                vec![]
            }
        }
    }
}

/// f_i · 𝐟_β for i in 1..m+n.
pub fn f_action(rs: &RootSystem, i: usize, beta: Root) -> Vec<TableTerm> {
    let (k, lcol) = (beta.i as usize, beta.j as usize);
    let m = rs.g.m;
    let one = Scalar::one();
    match rs.g.family {
        Family::B => {
            if k == i && lcol == i {
                vec![(one, vec![r(i + 1, i + 1)])]
            } else if k == i && lcol > i + 1 {
                vec![(one, vec![r(i + 1, lcol)])]
            } else if k < i && lcol == i {
                vec![(one, vec![r(k, i + 1)])]
            } else if k == i && lcol == i + 1 {
                let c = rs.g.qa(i + 1).inv().scalar().sub(&one).div(&qplus());
                vec![(c, vec![r(i + 1, i + 1), r(i + 1, i + 1)])]
            } else {
                vec![]
            }
        }
        Family::C | Family::D => {
            let d = rs.g.family == Family::D;
            if k == i && lcol > i + 1 {
                vec![(one, vec![r(i + 1, lcol)])]
            } else if lcol == i {
                let c = if d && k == i { Scalar::from_i64(-1) } else { one };
                vec![(c, vec![r(k, i + 1)])]
            } else if k == i && lcol == i + 1 && ((!d && i < m) || (d && i + 1 > m)) {
                vec![(qplus(), vec![r(i + 1, i + 1)])]
            } else {
                vec![]
            }
        }
    }
}
