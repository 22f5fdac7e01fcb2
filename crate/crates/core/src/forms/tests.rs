use super::*;

fn ff(vars: FormalVars, p: CommPoly) -> FormalFunction {
    FormalFunction::new(vars, p).unwrap()
}

fn pi2() -> ExactScalar {
    ExactScalar::int(2) * ExactScalar::pi_hat()
}

#[test]
fn layout() {
    let v = FormalVars::new(2, 2);
    assert_eq!(v.nvars(), 3 + 4 + 3);
    assert_eq!(v.tau(1, 0), v.tau(0, 1));
    assert_eq!(v.names()[v.z(1, 0)], "z21");
    assert_eq!(v.names()[v.tau_p(1, 1)], "tp22");
    // 1 + 7 + 28 monomials of degree ≤ 2 in 7 free variables
    assert_eq!(v.monomials(2).len(), 36);
}

#[test]
fn heat_small() {
    let v = FormalVars::new(1, 1);
    let m = Matrix::from_ints(&[&[3]]);
    let one = ff(v, v.constant(ExactScalar::one()));
    assert!(apply_heat(&one, &m).unwrap().is_zero());
    let tau = ff(v, v.var(v.tau(0, 0)));
    assert_eq!(*apply_heat(&tau, &m).unwrap().poly(), v.constant(pi2() * ExactScalar::int(6)));
    let z = v.var(v.z(0, 0));
    let z2 = ff(v, z.mul(&z));
    assert_eq!(*apply_heat(&z2, &Matrix::from_ints(&[&[1]])).unwrap().poly(), v.constant(ExactScalar::int(-2)));

    // j = 2: −ᵀ∂z adj(ℳ) ∂z on z₁z₂ gives −(adj₁₂ + adj₂₁) = 2
    let v = FormalVars::new(1, 2);
    let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
    let f = ff(v, v.var(v.z(0, 0)).mul(&v.var(v.z(1, 0))));
    assert_eq!(*apply_heat(&f, &m).unwrap().poly(), v.constant(ExactScalar::int(2)));
    assert!(matches!(heat_operator(v, &Matrix::from_ints(&[&[1, 2], &[0, 1]])), Err(Error::IndexNotSymmetric)));
}

#[test]
fn ext_and_tau_prime_scalars() {
    let v = FormalVars::new(1, 2);
    let m = Matrix::from_ints(&[&[2, 1], &[1, 3]]);
    let one = ff(v, v.constant(ExactScalar::one()));
    let e = ext(&one, &m).unwrap();
    assert!(e.is_ext_type());
    assert_eq!(e.to_string(), "1*e^M");
    let d = MatrixDifferentialOperator::d_full(v);
    for c in 0..2 {
        for dd in 0..2 {
            let got = d.apply_entry(1 + c, 1 + dd, &e);
            assert_eq!(got, e.scale(&(pi2() * m[(c, dd)].clone())), "({c},{dd})");
        }
    }
    let tp = ff(v, v.var(v.tau_p(0, 0)));
    assert!(matches!(ext(&tp, &m), Err(Error::NotExtType)));
    assert!(matches!(ext(&e, &m), Err(Error::NotExtType)));
    assert!(matches!(apply_big_d(&one), Err(Error::NotExtType)));
    // ext commutes with multiplication by τ, z polynomials
    let t = v.var(v.tau(0, 0));
    assert_eq!(ext(&one.mul_poly(&t), &m).unwrap(), e.mul_poly(&t));
}

#[test]
fn big_d_small() {
    let v = FormalVars::new(1, 1);
    let m = Matrix::from_ints(&[&[5]]);
    let e = ext(&ff(v, v.constant(ExactScalar::one())), &m).unwrap();
    assert!(apply_big_d(&e).unwrap().is_zero());
    // 𝔻 = 4∂τ∂τ′ − ∂z²
    let want = {
        let mut p = CommPoly::new(v.nvars());
        let mut e1 = vec![0; 3];
        e1[v.tau(0, 0)] = 1;
        e1[v.tau_p(0, 0)] = 1;
        p.add_term(e1, ExactScalar::int(4));
        let mut e2 = vec![0; 3];
        e2[v.z(0, 0)] = 2;
        p.add_term(e2, ExactScalar::int(-1));
        p
    };
    assert_eq!(big_d_operator(v), want);
}

#[test]
fn operators_commute() {
    let v = FormalVars::new(2, 1);
    let m = Matrix::from_ints(&[&[2]]);
    let t = v.var(v.tau(0, 1));
    let z = v.var(v.z(0, 0));
    let f = ext(&ff(v, t.mul(&t).mul(&z).add(&z.mul(&z))), &m).unwrap();
    let d = MatrixDifferentialOperator::d_full(v);
    for (a, b) in [((0, 1), (2, 0)), ((2, 2), (0, 1)), ((0, 2), (1, 2))] {
        let ab = d.apply_entry(a.0, a.1, &d.apply_entry(b.0, b.1, &f));
        let ba = d.apply_entry(b.0, b.1, &d.apply_entry(a.0, a.1, &f));
        assert_eq!(ab, ba);
    }
}

#[test]
fn bol_constant_n1_j1() {
    let m = Matrix::from_ints(&[&[3]]);
    let set = degree_two_test_set(1, 1);
    let rep = verify_bol_extension(1, 1, &m, 1, &set).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert_eq!(rep.c, Some(ExactScalar::one()));
    assert_eq!(rep.matched, MatchedForm::Both);
    let rep2 = verify_bol_extension(1, 1, &m, 2, &set).unwrap();
    assert!(rep2.holds && rep2.informative > 0, "{rep2:?}");
}

#[test]
fn bol_constant_schur_complement() {
    // det[[A, B], [C, D]] = det D·det(A − B D⁻¹ C) with D = 2π̂ℳ on ext-type
    // functions gives c = (2π̂)^{j−n}(detℳ)^{1−n}
    for (n, j, m) in [
        (2, 1, Matrix::from_ints(&[&[2]])),
        (1, 2, Matrix::from_ints(&[&[2, 1], &[1, 1]])),
        (2, 2, Matrix::from_ints(&[&[3, 1], &[1, 1]])),
    ] {
        let rep = verify_bol_extension(n, j, &m, 1, &degree_two_test_set(n, j)).unwrap();
        assert!(rep.holds, "{rep:?}");
        let det = m.det();
        let want = pi2().pow(j as u32) * det.clone() * (pi2() * det).pow(n as u32).inv().unwrap();
        assert_eq!(rep.c, Some(want), "({n},{j})");
    }
}
