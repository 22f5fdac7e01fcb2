use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use vbol_core::forms::{ext, FormalFunction, FormalVars, MatrixDifferentialOperator};
use vbol_core::hw::{jacobi_module, siegel_module, CharacterInducedModule};
use vbol_core::lie::{build_jacobi, build_sp, LieAlgebra, LieElement};
use vbol_core::matrix::Matrix;
use vbol_core::ring::{CommPoly, Ring};
use vbol_core::scalar::{ExactScalar, Param};
use vbol_core::uea::{build_m_plus, PbwContext, UeaElement};

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (prop::collection::vec(-4i64..=4, 4), prop::collection::vec(-3i64..=3, 2), 1i64..=5).prop_map(|(num, den, q)| {
        let k = ExactScalar::kappa();
        let p = ExactScalar::pi_hat();
        let top = ExactScalar::int(num[0]) + ExactScalar::int(num[1]) * k.clone() + ExactScalar::int(num[2]) * p + ExactScalar::int(num[3]) * k.pow(2);
        let mut bottom = ExactScalar::int(q) + ExactScalar::int(den[0]) * k;
        if bottom.is_zero() {
            bottom = ExactScalar::one();
        }
        top.try_div(&(bottom * ExactScalar::ratio(den[1].abs() + 1, 2))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.try_div(&a).unwrap().is_one());
            prop_assert_eq!(&(&b * &a).try_div(&a).unwrap(), &b);
        } else {
            prop_assert!(b.try_div(&a).is_err());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in scalar()) {
        let again = ExactScalar::fraction(a.numer(), a.denom()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(ExactScalar::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_ring_map(a in scalar(), b in scalar(), k in -20i64..20) {
        // denominators q + d·κ with |d| < 97 cannot vanish at κ = k + 1/97
        let at = ExactScalar::int(k) + ExactScalar::ratio(1, 97);
        let bind: BTreeMap<Param, ExactScalar> = [(Param::kappa(), at)].into_iter().collect();
        let s = |x: &ExactScalar| x.substitute(&bind).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }
}

fn sp4() -> &'static Arc<PbwContext> {
    static CTX: OnceLock<Arc<PbwContext>> = OnceLock::new();
    CTX.get_or_init(|| PbwContext::standard(&build_sp(2).unwrap()))
}

/// Up to three terms, each a coefficient times a product of ≤ 2 generators.
fn uea_elem() -> impl Strategy<Value = Vec<(i64, Vec<usize>)>> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0usize..10, 0..=2)), 1..=3)
}

fn realize(ctx: &Arc<PbwContext>, spec: &[(i64, Vec<usize>)]) -> UeaElement {
    let mut acc = ctx.zero();
    for (c, word) in spec {
        let mut t = ctx.scalar(ExactScalar::int(*c));
        for &a in word {
            t = t.mul(&ctx.generator(a % ctx.dim())).unwrap();
        }
        acc = acc.add(&t);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pbw_associativity_sp4(a in uea_elem(), b in uea_elem(), c in uea_elem()) {
        let ctx = sp4();
        let (a, b, c) = (realize(ctx, &a), realize(ctx, &b), realize(ctx, &c));
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reorder_round_trip(a in uea_elem(), seed in prop::collection::vec(any::<u32>(), 10)) {
        let ctx = sp4();
        let mut order: Vec<usize> = (0..10).collect();
        order.sort_by_key(|&i| (seed[i], i));
        let other = PbwContext::new(ctx.algebra(), order).unwrap();
        let u = realize(ctx, &a);
        let moved = u.reorder(&other).unwrap();
        prop_assert_eq!(moved.reorder(ctx).unwrap(), u.clone());
        // multiplication is order-independent
        let sq = u.mul(&u).unwrap();
        prop_assert_eq!(moved.mul(&moved).unwrap().reorder(ctx).unwrap(), sq);
    }

    #[test]
    fn commutator_is_bracket(a in 0usize..10, b in 0usize..10) {
        let ctx = sp4();
        let alg = ctx.algebra();
        let lhs = ctx.generator(a).commutator(&ctx.generator(b)).unwrap();
        let br = LieElement::basis(alg, a).bracket(&LieElement::basis(alg, b)).unwrap();
        prop_assert_eq!(lhs, ctx.from_lie(&br).unwrap());
    }

    #[test]
    fn symmetrization_fixes_powers(a in 0usize..10, m in 1usize..4) {
        let ctx = sp4();
        let x = ctx.generator(a);
        prop_assert_eq!(ctx.symmetrize_basis(&vec![a; m]).unwrap(), x.pow(m as u32).unwrap());
    }
}

fn random_lie(alg: &Arc<LieAlgebra>, cs: &[i64]) -> LieElement {
    let coords = cs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(a, c)| (a % alg.dim(), ExactScalar::int(*c))).collect();
    LieElement::from_coords(alg, coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jacobi_identity_random_elements(x in prop::collection::vec(-2i64..=2, 13), y in prop::collection::vec(-2i64..=2, 13), z in prop::collection::vec(-2i64..=2, 13)) {
        // g^(1,2) has dimension 13
        let alg = build_jacobi(1, 2).unwrap();
        let (x, y, z) = (random_lie(&alg, &x), random_lie(&alg, &y), random_lie(&alg, &z));
        let t1 = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let t2 = y.bracket(&z.bracket(&x).unwrap()).unwrap();
        let t3 = z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
        prop_assert!(x.bracket(&y).unwrap().add(&y.bracket(&x).unwrap()).unwrap().is_zero());
    }
}

fn siegel2() -> &'static Arc<CharacterInducedModule> {
    static M: OnceLock<Arc<CharacterInducedModule>> = OnceLock::new();
    M.get_or_init(|| siegel_module(2, ExactScalar::kappa()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_law(x in 0usize..10, y in 0usize..10, word in prop::collection::vec(0usize..10, 0..=2)) {
        let module = siegel2();
        let alg = module.context().algebra().clone();
        let mut v = module.generator();
        for &a in &word {
            v = v.act_basis(a);
        }
        let lhs = v.act_basis(y).act_basis(x).sub(&v.act_basis(x).act_basis(y));
        let br = LieElement::basis(&alg, x).bracket(&LieElement::basis(&alg, y)).unwrap();
        prop_assert_eq!(lhs, v.act_lie(&br).unwrap());
        // acting by a product is acting factor by factor
        let ctx = module.context();
        let u = ctx.generator(x).mul(&ctx.generator(y)).unwrap();
        prop_assert_eq!(v.act(&u).unwrap(), v.act_basis(y).act_basis(x));
    }

    #[test]
    fn weight_ladder(num in -6i64..=6, m in 0u32..3) {
        let k = ExactScalar::ratio(num, 2);
        let module = siegel_module(1, k.clone()).unwrap();
        let (_, mp) = build_m_plus(module.context(), 1).unwrap();
        let v = module.generator().act(&mp.pow(m).unwrap()).unwrap();
        prop_assert!(!v.is_zero());
        prop_assert_eq!(v.weight_check().1, Some(k + ExactScalar::int(2 * m as i64)));
    }
}

#[test]
fn index_persists_along_the_ladder() {
    let idx = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
    let module = jacobi_module(1, 2, &idx, ExactScalar::kappa()).unwrap();
    let ctx = module.context().clone();
    let alg = ctx.algebra().clone();
    let (_, mp) = build_m_plus(&ctx, 3).unwrap();
    let two_pi = ExactScalar::int(2) * ExactScalar::pi_hat();
    let mut v = module.generator();
    for m in 0..=2 {
        for a in 0..2 {
            for b in a..2 {
                let z = alg.index_of(&format!("Z{}{}", a + 1, b + 1)).unwrap();
                assert_eq!(v.act_basis(z), v.scale(&(two_pi.clone() * idx[(a, b)].clone())), "m = {m}");
            }
        }
        let (_, w) = v.weight_check();
        assert_eq!(w, Some(ExactScalar::kappa() + ExactScalar::int(2 * m)));
        v = v.act(&mp).unwrap();
    }
}

fn formal_poly(vars: FormalVars, spec: &[(i64, Vec<usize>)]) -> CommPoly {
    let free = vars.n * (vars.n + 1) / 2 + vars.j * vars.n;
    let mut p = CommPoly::new(vars.nvars());
    for (c, word) in spec {
        let mut t = vars.constant(ExactScalar::int(*c));
        for &v in word {
            t = t.mul(&vars.var(v % free));
        }
        p = Ring::add(&p, &t);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operator_entries_commute(spec in uea_elem(), r1 in 0usize..4, s1 in 0usize..4, r2 in 0usize..4, s2 in 0usize..4, m in 1i64..4) {
        let vars = FormalVars::new(2, 2);
        let idx = Matrix::from_ints(&[&[m, 1], &[1, 1]]);
        let f = ext(&FormalFunction::new(vars, formal_poly(vars, &spec)).unwrap(), &idx).unwrap();
        let d = MatrixDifferentialOperator::d_full(vars);
        let ab = d.apply_entry(r1, s1, &d.apply_entry(r2, s2, &f));
        let ba = d.apply_entry(r2, s2, &d.apply_entry(r1, s1, &f));
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn tau_prime_entries_act_as_scalars(spec in uea_elem(), c in 0usize..2, e in 0usize..2, a in 1i64..5, b in -3i64..3) {
        let vars = FormalVars::new(1, 2);
        let idx = Matrix::from_ints(&[&[a, b], &[b, a + 4]]);
        let f = ext(&FormalFunction::new(vars, formal_poly(vars, &spec)).unwrap(), &idx).unwrap();
        let d = MatrixDifferentialOperator::d_full(vars);
        let two_pi = ExactScalar::int(2) * ExactScalar::pi_hat();
        prop_assert_eq!(d.apply_entry(1 + c, 1 + e, &f), f.scale(&(two_pi * idx[(c, e)].clone())));
    }
}
