use super::*;
use crate::lie::{build_jacobi, build_sp};
use crate::matrix::Matrix;

fn sp2() -> Arc<PbwContext> {
    PbwContext::standard(&build_sp(1).unwrap())
}

fn g(ctx: &Arc<PbwContext>, l: &str) -> UeaElement {
    ctx.generator_by_label(l).unwrap()
}

#[test]
fn straightening_sp2() {
    let c = sp2();
    let (x, d, y) = (g(&c, "X11"), g(&c, "d1"), g(&c, "Y11"));
    assert_eq!(y.mul(&x).unwrap(), x.mul(&y).unwrap().sub(&d));
    assert_eq!(y.mul(&x).unwrap().to_string(), "X11*Y11 - d1");
    assert_eq!(x.mul(&x).unwrap().to_string(), "X11^2");
    assert_eq!(d.mul(&x).unwrap().to_string(), "X11*d1 + 2*X11");
}

#[test]
fn symmetrization() {
    let c = sp2();
    let alg = c.algebra().clone();
    let x = LieElement::by_label(&alg, "X11").unwrap();
    let y = LieElement::by_label(&alg, "Y11").unwrap();
    assert_eq!(c.symmetrize(&[x.clone()]).unwrap(), g(&c, "X11"));
    assert_eq!(c.symmetrize(&[x.clone(), y]).unwrap().to_string(), "X11*Y11 - 1/2*d1");
    assert_eq!(c.symmetrize(&[x.clone(), x]).unwrap().to_string(), "X11^2");
    assert!(c.symmetrize(&[]).is_err());
}

#[test]
fn adjoint_action() {
    let c = sp2();
    let alg = c.algebra().clone();
    let x2 = g(&c, "X11").pow(2).unwrap();
    let d = LieElement::by_label(&alg, "d1").unwrap();
    assert_eq!(x2.ad(&d).unwrap(), x2.scale(&ExactScalar::int(4)));
    assert!(c.one().ad(&d).unwrap().is_zero());

    let j = PbwContext::standard(&build_jacobi(1, 1).unwrap());
    let u2 = g(&j, "U11").pow(2).unwrap();
    let v = LieElement::by_label(j.algebra(), "V11").unwrap();
    let want = g(&j, "Z11").mul(&g(&j, "U11")).unwrap().scale(&ExactScalar::int(2));
    assert_eq!(u2.ad(&v).unwrap(), want);
}

#[test]
fn determinants() {
    let c = sp2();
    let one = |n: i64| c.scalar(ExactScalar::int(n));
    let m = OperatorMatrix::new(2, 2, vec![one(1), one(2), one(3), one(4)]).unwrap();
    assert_eq!(m.det(true).unwrap(), one(-2));
    let u = OperatorMatrix::new(1, 1, vec![g(&c, "d1")]).unwrap();
    assert_eq!(u.det(true).unwrap(), g(&c, "d1"));
    let bad = OperatorMatrix::new(1, 2, vec![one(1), one(2)]).unwrap();
    assert_eq!(bad.det(false), Err(Error::NonSquare(1, 2)));
    let nc = OperatorMatrix::new(2, 2, vec![g(&c, "X11"), one(0), one(0), g(&c, "Y11")]).unwrap();
    assert_eq!(nc.det(true), Err(Error::NotCommuting(0, 0, 1, 1)));
}

#[test]
fn raising_operator_small() {
    let c = sp2();
    let (_, m1) = build_m_plus(&c, 1).unwrap();
    assert_eq!(m1.to_string(), "2*X11");
    let c2 = PbwContext::standard(&build_sp(2).unwrap());
    let (mat, m2) = build_m_plus(&c2, 2).unwrap();
    assert_eq!(m2.to_string(), "4*X11*X22 - X12^2");
    assert_eq!(mat.det(true).unwrap(), m2);
}

#[test]
fn raising_operator_entries_commute() {
    for n in 1..=4 {
        let c = PbwContext::standard(&build_sp(n).unwrap());
        let m = m_plus_matrix(&c, n).unwrap();
        assert_eq!(m.commutation_witness().unwrap(), None, "N = {n}");
    }
}

#[test]
fn raising_operator_in_jacobi_algebra() {
    let c = PbwContext::standard(&build_jacobi(1, 1).unwrap());
    let (_, m) = build_m_plus(&c, 2).unwrap();
    assert_eq!(m.to_string(), "2*X11*Z11 - U11^2");
}

#[test]
fn cofactor_expansion() {
    for n in [2, 3] {
        let c = PbwContext::standard(&build_sp(n).unwrap());
        let (m, det) = build_m_plus(&c, n).unwrap();
        for i in 0..n {
            let mut acc = c.zero();
            for l in 0..n {
                acc = acc.add(&m.get(i, l).mul(&m.cofactor(i, l).unwrap()).unwrap());
            }
            assert_eq!(acc, det);
        }
    }
}

#[test]
fn raising_operator_levi_weight() {
    for n in 1..=3 {
        let c = PbwContext::standard(&build_sp(n).unwrap());
        let alg = c.algebra().clone();
        let (_, m) = build_m_plus(&c, n).unwrap();
        for &l in alg.subspace("levi").unwrap() {
            let x = LieElement::basis(&alg, l);
            let w = x.levi_trace().clone() * ExactScalar::int(2);
            assert_eq!(m.ad(&x).unwrap(), m.scale(&w));
        }
    }
    let c = PbwContext::standard(&build_jacobi(1, 1).unwrap());
    let (_, m) = build_m_plus(&c, 2).unwrap();
    let d = LieElement::by_label(c.algebra(), "d1").unwrap();
    assert_eq!(m.ad(&d).unwrap(), m.scale(&ExactScalar::int(2)));
}

#[test]
fn laplace_sp2() {
    let c = sp2();
    let (delta, delta1) = build_laplace(&c).unwrap();
    assert_eq!(delta.to_string(), "4*X11*Y11 + d1^2 - 2*d1");
    assert_eq!(delta1.to_string(), "d1^2 - 2*d1");
    assert!(delta.is_central().unwrap());
}

#[test]
fn laplace_central() {
    for n in 2..=3 {
        let c = PbwContext::standard(&build_sp(n).unwrap());
        let (delta, _) = build_laplace(&c).unwrap();
        assert!(delta.is_central().unwrap(), "n = {n}");
    }
}

#[test]
fn centrality_basics() {
    let c = sp2();
    assert!(c.one().is_central().unwrap());
    assert!(!g(&c, "X11").is_central().unwrap());
}

#[test]
fn gelfand_invariants() {
    let c = sp2();
    let c2 = build_gelfand(&c, 2).unwrap();
    let (delta, _) = build_laplace(&c).unwrap();
    // C2 = a Δ + b, solved from the coefficients of d1^2 and 1
    let d2 = Monomial::from_exps(vec![0, 2, 0]);
    let a = c2.coeff(&d2).try_div(&delta.coeff(&d2)).unwrap();
    let b = c2.sub(&delta.scale(&a));
    assert_eq!(b.as_scalar(), Some(ExactScalar::zero()));
    assert_eq!(a, ExactScalar::ratio(1, 2));
    let c4 = build_gelfand(&c, 4).unwrap();
    assert_eq!(c4.degree(), 4);
    assert!(build_gelfand(&c, 3).is_err());
}

#[test]
fn gelfand_sp4_quartic() {
    let c = PbwContext::standard(&build_sp(2).unwrap());
    let c4 = build_gelfand(&c, 4).unwrap();
    assert_eq!(c4.degree(), 4);
}

#[test]
fn reorder_round_trip() {
    let c = sp2();
    let alg = c.algebra().clone();
    let rev = PbwContext::new(&alg, vec![2, 1, 0]).unwrap();
    let xy = g(&c, "X11").mul(&g(&c, "Y11")).unwrap();
    let r = xy.reorder(&rev).unwrap();
    assert_eq!(r.to_string(), "Y11*X11 + d1");
    assert_eq!(r.reorder(&c).unwrap(), xy);
    let d2 = g(&c, "d1").pow(2).unwrap();
    assert_eq!(d2.reorder(&rev).unwrap().to_string(), "d1^2");
}

#[test]
fn degree_cap_and_context_checks() {
    let alg = build_sp(1).unwrap();
    let c = PbwContext::with_degree_cap(&alg, vec![0, 1, 2], 3).unwrap();
    let x = c.generator(0);
    let x3 = x.pow(3).unwrap();
    assert_eq!(x3.mul(&x), Err(Error::DegreeCap { degree: 4, cap: 3 }));
    let other = PbwContext::standard(&alg);
    assert_eq!(x.mul(&other.generator(0)), Err(Error::ContextMismatch));
    assert!(PbwContext::new(&alg, vec![0, 0, 1]).is_err());
}

#[test]
fn pbw_consistency_all_pairs() {
    let c = PbwContext::standard(&build_sp(2).unwrap());
    let alg = c.algebra().clone();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let lhs = c.generator(a).commutator(&c.generator(b)).unwrap();
            let br = LieElement::basis(&alg, a).bracket(&LieElement::basis(&alg, b)).unwrap();
            assert_eq!(lhs, c.from_lie(&br).unwrap());
        }
    }
}

#[test]
fn trace_form_degenerate_on_jacobi_algebra() {
    let alg = build_jacobi(1, 1).unwrap();
    let real = alg.realization().unwrap();
    let dim = alg.dim();
    let gram = Matrix::from_fn(dim, dim, |a, b| real.matrix(a).mul(real.matrix(b)).trace());
    assert!(gram.rank() < dim);
}
