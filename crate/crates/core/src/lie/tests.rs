use super::*;

fn el(alg: &Arc<LieAlgebra>, l: &str) -> LieElement {
    LieElement::by_label(alg, l).unwrap()
}

#[test]
fn sp2_relations() {
    let g = build_sp(1).unwrap();
    assert_eq!(g.dim(), 3);
    assert_eq!(g.labels(), ["X11", "d1", "Y11"]);
    let (x, d, y) = (el(&g, "X11"), el(&g, "d1"), el(&g, "Y11"));
    assert_eq!(x.bracket(&y).unwrap(), d);
    assert_eq!(d.bracket(&x).unwrap(), x.scale(&ExactScalar::int(2)));
    assert!(x.bracket(&x).unwrap().is_zero());
}

#[test]
fn sp4_positive_roots() {
    let g = build_sp(2).unwrap();
    assert_eq!(g.dim(), 10);
    let mut v: Vec<Vec<i64>> = g.roots().unwrap().positive.iter().map(|r| r.vector.clone()).collect();
    v.sort();
    assert_eq!(v, vec![vec![0, 2], vec![1, -1], vec![1, 1], vec![2, 0]]);
}

#[test]
fn sp6_jacobi_identity_exhaustive() {
    let g = build_sp(3).unwrap();
    assert_eq!(g.dim(), 21);
    assert_eq!(g.jacobi_violation(), None);
    assert!(g.is_antisymmetric());
    assert!(g.realization_consistent());
}

#[test]
fn root_datum_invariants() {
    for n in 1..=3 {
        let g = build_sp(n).unwrap();
        let rd = g.roots().unwrap();
        let short = rd.positive.iter().filter(|r| r.length == RootLength::Short).count();
        let long = rd.positive.iter().filter(|r| r.length == RootLength::Long).count();
        assert_eq!((short, long), (n * (n - 1), n));
        for r in &rd.positive {
            assert_eq!(r.c == 2, r.length == RootLength::Long);
            for (k, &d) in rd.cartan.iter().enumerate() {
                let lhs = el(&g, g.label(d)).bracket(&LieElement::basis(&g, r.x)).unwrap();
                let rhs = LieElement::basis(&g, r.x).scale(&ExactScalar::int(r.vector[k]));
                assert_eq!(lhs, rhs);
                let lhs = el(&g, g.label(d)).bracket(&LieElement::basis(&g, r.y)).unwrap();
                assert_eq!(lhs, LieElement::basis(&g, r.y).scale(&ExactScalar::int(-r.vector[k])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(rd.alpha_index(i, j), rd.alpha_index(j, i));
            }
        }
        assert_eq!(RootDatum::eval(&rd.rho_s, &rd.h_alpha), ExactScalar::ratio(n as i64 + 1, 2));
        assert_eq!(RootDatum::eval(&rd.omega_alpha, &rd.h_alpha), ExactScalar::one());
        // critical weight -r + (n-1)/2 recovers at r + 1
        for r in 0..3 {
            let k = ExactScalar::ratio(-2 * r + n as i64 - 1, 2);
            assert_eq!(rd.predicted_recovery_exponent(&k), ExactScalar::int(r + 1));
        }
    }
}

#[test]
fn jacobi_11_heisenberg() {
    let g = build_jacobi(1, 1).unwrap();
    assert_eq!(g.dim(), 6);
    assert_eq!(g.labels(), ["X11", "U11", "d1", "Y11", "V11", "Z11"]);
    assert_eq!(el(&g, "V11").bracket(&el(&g, "U11")).unwrap(), el(&g, "Z11"));
    let z = el(&g, "Z11");
    for a in 0..g.dim() {
        assert!(z.bracket(&LieElement::basis(&g, a)).unwrap().is_zero());
    }
    let mut z_mat = Matrix::zeros(4, 4);
    z_mat[(1, 3)] = ExactScalar::int(2);
    assert_eq!(z.to_matrix().unwrap(), z_mat);
}

#[test]
fn jacobi_dimensions_and_structure() {
    for (n, j) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let g = build_jacobi(n, j).unwrap();
        assert_eq!(g.dim(), n * (2 * n + 1) + 2 * j * n + j * (j + 1) / 2);
        assert!(g.realization_consistent());
        for name in ["l_heis", "r_heis"] {
            let s = g.subspace(name).unwrap();
            for &a in s {
                for &b in s {
                    assert!(g.bracket_basis(a, b).is_empty(), "{name} not abelian");
                }
            }
        }
        for &z in g.subspace("z").unwrap() {
            for a in 0..g.dim() {
                assert!(g.bracket_basis(z, a).is_empty());
            }
        }
        // the sp-part reproduces build_sp(n) under the label correspondence
        let sp = build_sp(n).unwrap();
        for a in 0..sp.dim() {
            for b in 0..sp.dim() {
                let ga = g.index_of(sp.label(a)).unwrap();
                let gb = g.index_of(sp.label(b)).unwrap();
                let want: Coords = sp
                    .bracket_basis(a, b)
                    .iter()
                    .map(|(c, v)| (g.index_of(sp.label(*c)).unwrap(), v.clone()))
                    .collect();
                let mut got = g.bracket_basis(ga, gb).clone();
                got.sort_by_key(|p| p.0);
                let mut want = want;
                want.sort_by_key(|p| p.0);
                assert_eq!(got, want);
            }
        }
    }
    assert_eq!(build_jacobi(2, 1).unwrap().dim(), 15);
}

#[test]
fn jacobi_small_identity_sweep() {
    for (n, j) in [(1, 1), (2, 1), (1, 2)] {
        assert_eq!(build_jacobi(n, j).unwrap().jacobi_violation(), None);
    }
}

#[test]
fn mismatched_algebras() {
    let a = build_sp(1).unwrap();
    let b = build_sp(1).unwrap();
    assert_eq!(
        LieElement::basis(&a, 0).bracket(&LieElement::basis(&b, 0)),
        Err(Error::AlgebraMismatch)
    );
    assert!(build_sp(0).is_err());
    assert!(build_jacobi(1, 0).is_err());
}

#[test]
fn json_round_trip() {
    let g = build_jacobi(1, 1).unwrap();
    let s = g.to_json();
    assert_eq!(s, build_jacobi(1, 1).unwrap().to_json());
    let h = LieAlgebra::from_json(&s).unwrap();
    assert_eq!(h.to_json(), s);
    assert_eq!(h.jacobi_violation(), None);
}

#[test]
fn structure_constant_validation() {
    let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let bad = [(0, 1, vec![(0, ExactScalar::one())]), (1, 2, vec![(0, ExactScalar::one())]), (0, 2, vec![(2, ExactScalar::one())])];
    // ad-nilpotency aside, this table violates Jacobi
    assert!(LieAlgebra::from_structure_constants("bad", labels.clone(), &bad).is_err());
    let heis = [(0, 1, vec![(2, ExactScalar::one())])];
    assert!(LieAlgebra::from_structure_constants("heis", labels, &heis).is_ok());
}
