//! One line per acceptance criterion. Every check is exact; the only
//! tolerances are the runtime budgets of AC1 (120 s) and AC11 (60 s).
//!
//! Run with `cargo test -p vbol-core --test acceptance -- --nocapture`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vbol_core::forms::{degree_two_test_set, verify_bol_extension, FormalFunction, FormalVars, MatchedForm};
use vbol_core::hc::HcContext;
use vbol_core::hw::{
    cofactor_relation_check, delta_eigencheck, jacobi_module, recovery_scan, siegel_module, symbolic_obstructions, ScanRow,
};
use vbol_core::jacobi::{
    check_ad_invariance, check_bracket_relation, check_det_transfer, check_levi_trace_lemma, check_t0_equivariance, star_recovery_scan,
    StarContext, TransferMaps,
};
use vbol_core::lie::{build_jacobi, build_sp, LieElement};
use vbol_core::matrix::Matrix;
use vbol_core::scalar::ExactScalar;
use vbol_core::uea::{build_gelfand, build_laplace, PbwContext, UeaElement};

const AC1_BUDGET: Duration = Duration::from_secs(120);
const AC11_BUDGET: Duration = Duration::from_secs(60);

/// Criteria whose failure is a recorded finding rather than a defect.
const EXPECTED_FAIL: &[&str] = &["AC7"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn k() -> ExactScalar {
    ExactScalar::kappa()
}

fn half(n: i64) -> ExactScalar {
    ExactScalar::ratio(n, 2)
}

fn holo(rows: &[ScanRow]) -> Vec<u32> {
    rows.iter().filter(|r| r.holomorphic).map(|r| r.m).collect()
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let cases: Vec<(usize, u32)> = (1..=3).flat_map(|n| (0..=2).map(move |r| (n, r))).filter(|&(n, r)| n < 3 || r <= 1).collect();
    let results: Vec<_> = std::thread::scope(|s| {
        let hs: Vec<_> = cases
            .iter()
            .map(|&(n, r)| {
                s.spawn(move || {
                    let kk = half(n as i64 - 1) - ExactScalar::int(r as i64);
                    let module = siegel_module(n, kk).unwrap();
                    (n, r, recovery_scan(&module, r + 3).unwrap())
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (n, r, rows) in &results {
        let want_w = ExactScalar::int(*r as i64 + 2) + half(*n as i64 - 1);
        if holo(rows) != vec![0, r + 1] || rows[*r as usize + 1].weight.as_ref() != Some(&want_w) {
            bad.push(format!("(n={n}, r={r}): holo {:?}", holo(rows)));
        }
    }
    let el = start.elapsed();
    outcome(
        bad.is_empty() && el < AC1_BUDGET,
        format!("{} scans, holomorphic sets {{0, r+1}}, {:.1}s of {}s {:?}", results.len(), el.as_secs_f64(), AC1_BUDGET.as_secs(), bad),
    )
}

fn ac2() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=2usize {
        let module = siegel_module(n, k()).unwrap();
        let obs = symbolic_obstructions(&module, 4).unwrap();
        for o in obs.iter().filter(|o| o.m >= 1) {
            let want = half(n as i64 - 1) - ExactScalar::int(o.m as i64 - 1);
            if o.roots != vec![want] || o.irreducible_rest.is_some() {
                bad.push(format!("n={n} m={}: {:?} rest {:?}", o.m, o.roots, o.irreducible_rest));
            }
        }
    }
    outcome(bad.is_empty(), format!("roots κ = (n−1)/2 − (m−1) for n ≤ 2, m = 1..4 {bad:?}"))
}

fn ac3() -> Outcome {
    let mut bad = Vec::new();
    for (n, r_max) in [(1, 3), (2, 3), (3, 0)] {
        let rep = delta_eigencheck(&siegel_module(n, k()).unwrap(), r_max).unwrap();
        if !rep.ok() {
            bad.push(format!("n={n}"));
        }
    }
    outcome(bad.is_empty(), format!("Δ eigenvalues (κ+2r)n(κ+2r−n−1) {bad:?}"))
}

fn ac4() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=3 {
        let ctx = PbwContext::standard(&build_sp(n).unwrap());
        let (delta, _) = build_laplace(&ctx).unwrap();
        if !delta.is_central().unwrap() {
            bad.push(format!("Δ n={n}"));
        }
        if n <= 2 && !build_gelfand(&ctx, 4).unwrap().is_central().unwrap() {
            bad.push(format!("C4 n={n}"));
        }
    }
    outcome(bad.is_empty(), format!("Δ central n ≤ 3, C4 central n ≤ 2 {bad:?}"))
}

fn ac5() -> Outcome {
    let mut bad = Vec::new();
    let mut cs = Vec::new();
    for n in 2..=3usize {
        for r in 0..=1u32 {
            for w in [None, Some(k())] {
                let symbolic = w.is_some();
                let rep = cofactor_relation_check(n, r, w).unwrap();
                let rank_ok = rep.span_rank == n * (n + 1) / 2;
                if !rep.uniform || !rank_ok {
                    bad.push(format!("n={n} r={r} symbolic={symbolic}: uniform {} rank {}", rep.uniform, rep.span_rank));
                }
                if symbolic {
                    cs.push(format!("C(n={n},r={r}) = {}", rep.c.map(|c| c.to_string()).unwrap_or_default()));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("uniform C, span n(n+1)/2; {} {bad:?}", cs.join(", ")))
}

fn ac6() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=3 {
        let hc = HcContext::new(n).unwrap();
        let ctx = PbwContext::standard(hc.algebra());
        let (delta, _) = build_laplace(&ctx).unwrap();
        let rep = hc.check_center_projection(&delta).unwrap();
        let nn = ExactScalar::int(n as i64);
        let want = k() * nn.clone() * (k() - nn - ExactScalar::one());
        if !rep.ok() || rep.action_value != want {
            bad.push(format!("Δ n={n}: {rep:?}"));
        }
        if n == 2 {
            let rep = hc.check_center_projection(&build_gelfand(&ctx, 4).unwrap()).unwrap();
            if !rep.ok() {
                bad.push(format!("C4: {rep:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("D − pr1(γ′(D)) ∈ 𝒥, γ Weyl-invariant, action at H0 = nκ {bad:?}"))
}

fn ac7() -> Outcome {
    let mut bad = Vec::new();
    let mut kappas = Vec::new();
    for (n, j) in [(1, 1), (2, 1), (1, 2)] {
        let alg = build_jacobi(n, j).unwrap();
        let tm = TransferMaps::new(&PbwContext::standard(&alg)).unwrap();
        for rep in [check_t0_equivariance(&alg).unwrap(), check_ad_invariance(&tm).unwrap(), check_bracket_relation(&tm).unwrap()] {
            if !rep.ok() {
                bad.push(format!("({n},{j}) {}", rep.name));
            }
        }
        let det = check_det_transfer(&tm).unwrap();
        if det.holds_proportionally {
            kappas.push(format!("({n},{j}) κ = {}", det.kappa.map(|c| c.to_string()).unwrap_or_default()));
        } else {
            bad.push(format!(
                "({n},{j}) det transfer not proportional, excess det Z power {:?} with κ = {}",
                det.excess_power,
                det.excess_kappa.map(|c| c.to_string()).unwrap_or_default()
            ));
        }
    }
    outcome(bad.is_empty(), format!("T0, ad-invariance, bracket; det transfer {} vs stated 1 {bad:?}", kappas.join(", ")))
}

fn ac8() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let id1 = Matrix::from_ints(&[&[1]]);
    let id2 = Matrix::from_ints(&[&[1, 0], &[0, 1]]);
    let alt = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
    let cases = [(1, 1, &id1), (2, 1, &id1), (1, 2, &id2), (1, 2, &alt)];
    for (n, j, idx) in cases {
        for r in 1..=2u32 {
            let kk = half((n + j + 1) as i64) - ExactScalar::int(r as i64);
            let module = jacobi_module(n, j, idx, kk.clone()).unwrap();
            let rows = recovery_scan(&module, r + 2).unwrap();
            count += 1;
            let weights_ok = rows.iter().all(|row| row.weight == Some(kk.clone() + ExactScalar::int(2 * row.m as i64)));
            let index_ok = rows.iter().all(|row| row.index_ok == Some(true));
            if holo(&rows) != vec![0, r] || !weights_ok || !index_ok {
                bad.push(format!("({n},{j}) ℳ={idx:?} r={r}: holo {:?}", holo(&rows)));
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} scans, holomorphic sets {{0, r}}, index 2π̂ℳ at every m {bad:?}"))
}

fn ac9() -> Outcome {
    let mut bad = Vec::new();
    let mut found = Vec::new();
    let cases = [(1, 1, Matrix::from_ints(&[&[1]])), (1, 2, Matrix::from_ints(&[&[2, 1], &[1, 1]])), (2, 1, Matrix::from_ints(&[&[2]]))];
    for (n, j, idx) in &cases {
        let (n, j) = (*n, *j);
        let module = jacobi_module(n, j, idx, k()).unwrap();
        let sc = StarContext::new(&module).unwrap();
        let alg = module.context().algebra().clone();
        let e = module.generator();
        if n == 1 {
            let vs = [e.clone(), e.act_basis(alg.index_of("X11").unwrap())];
            let sp = sc.maps().sp_part().to_vec();
            for v in &vs {
                for &a in &sp {
                    for &b in &sp {
                        let lhs = sc.star_basis(a, &sc.star_basis(b, v).unwrap()).unwrap().sub(&sc.star_basis(b, &sc.star_basis(a, v).unwrap()).unwrap());
                        let br = LieElement::basis(&alg, a).bracket(&LieElement::basis(&alg, b)).unwrap();
                        if lhs != sc.star_lie(&br, v).unwrap() {
                            bad.push(format!("({n},{j}) law [{}, {}]", alg.label(a), alg.label(b)));
                        }
                    }
                }
            }
        }
        let lt = check_levi_trace_lemma(n, j, idx).unwrap();
        if lt.star_weight.as_ref() != Some(&(k() - half(j as i64))) {
            bad.push(format!("({n},{j}) star weight {:?}", lt.star_weight));
        }
        let stated = ExactScalar::int(2) * idx.det();
        found.push(format!("({n},{j}) c_star = {} vs stated {}", sc.c_star(), stated));
    }
    // dot-holomorphic ⇒ star-holomorphic along the ladder at the recovery weights
    for (n, j, idx) in &cases[..2] {
        let kk = half((*n + *j + 1) as i64) - ExactScalar::one();
        let sc = StarContext::new(&jacobi_module(*n, *j, idx, kk).unwrap()).unwrap();
        for row in star_recovery_scan(&sc, 2).unwrap() {
            if row.dot_holomorphic && !row.star_holomorphic {
                bad.push(format!("({n},{j}) m={} dot-holomorphic but not star-holomorphic", row.m));
            }
        }
    }
    outcome(bad.is_empty(), format!("Lie-action law, star weight κ − j/2; derived {} {bad:?}", found.join(", ")))
}

fn ac10() -> Outcome {
    let mut bad = Vec::new();
    let mut found = Vec::new();
    for n in 1..=2usize {
        for j in 1..=2usize {
            let idx = if j == 1 { Matrix::from_ints(&[&[3]]) } else { Matrix::from_ints(&[&[3, 1], &[1, 1]]) };
            let mut cs = Vec::new();
            for l in 1..=2u32 {
                let vars = FormalVars::new(n, j);
                let mut set = degree_two_test_set(n, j);
                let tau_count = n * (n + 1) / 2;
                let deg = (n as u16) * (l as u16);
                if deg > 2 {
                    // τ-only monomials of degree n·l keep L_ℳˡ from vanishing on the whole set
                    set.extend(
                        vars.monomials(deg)
                            .into_iter()
                            .filter(|p| p.terms().all(|(e, _)| e.iter().skip(tau_count).all(|&x| x == 0) && e.iter().map(|&x| x as u32).sum::<u32>() == deg as u32))
                            .map(|p| FormalFunction::new(vars, p).unwrap()),
                    );
                }
                let rep = verify_bol_extension(n, j, &idx, l, &set).unwrap();
                if !rep.holds || rep.informative == 0 || rep.matched == MatchedForm::Neither {
                    bad.push(format!("(n={n}, j={j}, l={l}): {:?}", rep.witnesses));
                }
                cs.push((rep.c.clone(), rep.matched));
            }
            if cs[0] != cs[1] {
                bad.push(format!("(n={n}, j={j}): c depends on l"));
            }
            if let (Some(c), m) = &cs[0] {
                found.push(format!("(n={n},j={j}) c = {c} [{m:?}]"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} {bad:?}", found.join(", ")))
}

fn random_uea(rng: &mut StdRng, ctx: &Arc<PbwContext>) -> UeaElement {
    let mut acc = ctx.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut t = ctx.scalar(ExactScalar::int(rng.gen_range(-3..=3)));
        for _ in 0..rng.gen_range(0..=2) {
            t = t.mul(&ctx.generator(rng.gen_range(0..ctx.dim()))).unwrap();
        }
        acc = acc.add(&t);
    }
    acc
}

fn random_scalar(rng: &mut StdRng) -> ExactScalar {
    let a = ExactScalar::int(rng.gen_range(-5..=5)) + ExactScalar::int(rng.gen_range(-5..=5)) * k() + ExactScalar::int(rng.gen_range(-2..=2)) * ExactScalar::pi_hat();
    let b = ExactScalar::int(rng.gen_range(1..=4)) + ExactScalar::int(rng.gen_range(-3..=3)) * k().pow(2);
    a.try_div(&b).unwrap()
}

fn ac11() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut algs = Vec::new();
    for n in 1..=4 {
        algs.push(build_sp(n).unwrap());
        for j in 1..=(4 - n) {
            algs.push(build_jacobi(n, j).unwrap());
        }
    }
    for alg in &algs {
        if let Some((a, b, c)) = alg.jacobi_violation() {
            bad.push(format!("{}: ({}, {}, {})", alg.name(), alg.label(a), alg.label(b), alg.label(c)));
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut trials = 0;
    for alg in [build_sp(2).unwrap(), build_jacobi(1, 1).unwrap()] {
        let ctx = PbwContext::standard(&alg);
        for _ in 0..100 {
            let (a, b, c) = (random_uea(&mut rng, &ctx), random_uea(&mut rng, &ctx), random_uea(&mut rng, &ctx));
            if a.mul(&b).unwrap().mul(&c).unwrap() != a.mul(&b.mul(&c).unwrap()).unwrap() {
                bad.push(format!("{} associativity", alg.name()));
            }
            let mut order: Vec<usize> = (0..alg.dim()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let other = PbwContext::new(&alg, order).unwrap();
            if a.reorder(&other).unwrap().reorder(&ctx).unwrap() != a {
                bad.push(format!("{} reorder", alg.name()));
            }
            trials += 1;
        }
    }
    for _ in 0..300 {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        let ok = &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (&a - &a).is_zero()
            && (a.is_zero() || a.try_div(&a).unwrap().is_one());
        if !ok {
            bad.push(format!("field axioms at {a}, {b}, {c}"));
        }
    }
    let el = start.elapsed();
    bad.dedup();
    outcome(
        bad.is_empty() && el < AC11_BUDGET,
        format!("{} algebras, {trials} PBW triples, 300 scalar triples, {:.1}s of {}s {bad:?}", algs.len(), el.as_secs_f64(), AC11_BUDGET.as_secs()),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
        ("AC11", ac11),
    ];
    let mut unexpected = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let expected_fail = EXPECTED_FAIL.contains(&name);
        let tag = match (o.pass, expected_fail) {
            (true, _) => "PASS",
            (false, true) => "FAIL (recorded finding)",
            (false, false) => "FAIL",
        };
        println!("{name} {tag} [{:.1}s] {}", start.elapsed().as_secs_f64(), o.detail);
        if o.pass == expected_fail {
            unexpected.push(name);
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:?}");
}
