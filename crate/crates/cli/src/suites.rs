use std::sync::Arc;

use vbol_core::forms::{degree_two_test_set, verify_bol_extension, FormalFunction, FormalVars};
use vbol_core::hc::HcContext;
use vbol_core::hw::{
    cofactor_relation_check, delta_eigencheck, jacobi_module, recovery_scan, siegel_module, symbolic_obstructions, ScanRow,
};
use vbol_core::jacobi::{
    check_ad_invariance, check_bracket_relation, check_det_transfer, check_levi_trace_lemma, check_t0_equivariance, check_that_commutes,
    star_recovery_scan, CheckReport, StarContext, TransferMaps,
};
use vbol_core::lie::{build_jacobi, build_sp, LieAlgebra, RootLength};
use vbol_core::uea::{build_gelfand, build_laplace, PbwContext};
use vbol_core::{ExactScalar, Matrix};

use crate::config::{render_index, Suite, SuiteConfig};
use crate::report::{CheckRecord, Params, Source};

type JobFn = Box<dyn Fn() -> vbol_core::Result<Vec<CheckRecord>> + Send + Sync>;

/// One independently timed unit of work.
pub struct Job {
    pub suite: Suite,
    pub params: Params,
    run: JobFn,
}

impl Job {
    fn new(suite: Suite, params: Params, run: impl Fn() -> vbol_core::Result<Vec<CheckRecord>> + Send + Sync + 'static) -> Self {
        Job {
            suite,
            params,
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> Vec<CheckRecord> {
        match (self.run)() {
            Ok(v) => v,
            Err(e) => vec![CheckRecord::with_status(
                self.suite.name(),
                "error",
                &self.params,
                crate::report::Status::Fail,
                "no error".into(),
                Source::Structural,
                e.to_string(),
            )],
        }
    }
}

fn params(kv: &[(&str, String)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn half(n: i64) -> ExactScalar {
    ExactScalar::ratio(n, 2)
}

fn set(v: impl IntoIterator<Item = u32>) -> String {
    format!("{{{}}}", v.into_iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "))
}

fn opt(s: &Option<ExactScalar>) -> String {
    s.as_ref().map_or_else(|| "none".to_string(), |x| x.to_string())
}

/// One line per m: holomorphic flag, weight, nonzero, index.
fn render_scan(rows: &[ScanRow]) -> String {
    rows.iter()
        .map(|r| {
            let mut s = format!("m={} {} w={}", r.m, if r.holomorphic { "H" } else { "-" }, opt(&r.weight));
            if !r.nonzero {
                s.push_str(" zero");
            }
            if let Some(ok) = r.index_ok {
                s.push_str(if ok { " idx" } else { " idx!" });
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn predicted_scan(k: &ExactScalar, m_max: u32, holo: &[u32], jacobi: bool) -> Vec<ScanRow> {
    (0..=m_max)
        .map(|m| ScanRow {
            m,
            weight: Some(k.clone() + ExactScalar::int(2 * m as i64)),
            holomorphic: holo.contains(&m),
            nonzero: true,
            index_ok: jacobi.then_some(true),
        })
        .collect()
}

fn report_failures(suite: Suite, name: &str, p: &Params, rep: &CheckReport) -> CheckRecord {
    let actual = if rep.ok() {
        format!("0 failures of {}", rep.checked)
    } else {
        format!("{} failures of {}: {}", rep.failures.len(), rep.checked, rep.failures.join(" / "))
    };
    CheckRecord::compare(suite.name(), name, p, format!("0 failures of {}", rep.checked), Source::Stated, actual)
}

fn jacobi_pairs(cfg: &SuiteConfig) -> Vec<(usize, usize)> {
    let j_fixed = cfg.index.as_ref().map(|m| m.rows());
    let n_max = cfg.n.unwrap_or(2);
    let j_max = j_fixed.or(cfg.j).unwrap_or(2);
    let explicit = cfg.n.is_some() || cfg.j.is_some() || j_fixed.is_some();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for j in 1..=j_max {
            if j_fixed.is_some_and(|f| f != j) {
                continue;
            }
            if !explicit && n + j > 3 {
                continue;
            }
            out.push((n, j));
        }
    }
    out
}

fn default_indices(j: usize) -> Vec<Matrix> {
    let mut id = Matrix::identity(j);
    if j == 2 {
        return vec![id, Matrix::from_ints(&[&[2, 1], &[1, 1]])];
    }
    id[(0, 0)] = ExactScalar::one();
    vec![id]
}

fn bol_index(j: usize) -> Matrix {
    match j {
        1 => Matrix::from_ints(&[&[3]]),
        2 => Matrix::from_ints(&[&[3, 1], &[1, 1]]),
        _ => {
            let mut m = Matrix::identity(j);
            m[(0, 0)] = ExactScalar::int(2);
            m
        }
    }
}

pub fn jobs(cfg: &SuiteConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for &s in &cfg.suites {
        match s {
            Suite::SiegelRecovery => siegel_recovery(cfg, &mut out),
            Suite::DeltaEigen => delta_eigen(cfg, &mut out),
            Suite::Cofactor => cofactor(cfg, &mut out),
            Suite::CenterProjection => center_projection(cfg, &mut out),
            Suite::JacobiMaps => jacobi_maps(cfg, &mut out),
            Suite::JacobiRecovery => jacobi_recovery(cfg, &mut out),
            Suite::BolExtension => bol_extension(cfg, &mut out),
            Suite::AlgebraSanity => algebra_sanity(cfg, &mut out),
        }
    }
    out
}

fn siegel_recovery(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::SiegelRecovery;
    for n in 1..=cfg.n.unwrap_or(2) {
        for r in 0..=cfg.r_max.unwrap_or(2) {
            let m_max = cfg.m_max.unwrap_or(r + 3);
            let p = params(&[("n", n.to_string()), ("r", r.to_string()), ("m_max", m_max.to_string())]);
            let pp = p.clone();
            out.push(Job::new(s, p, move || {
                let k = half(n as i64 - 1) - ExactScalar::int(r as i64);
                let rows = recovery_scan(&siegel_module(n, k.clone())?, m_max)?;
                let holo: Vec<u32> = [0, r + 1].into_iter().filter(|&m| m <= m_max).collect();
                let actual_holo = rows.iter().filter(|x| x.holomorphic).map(|x| x.m);
                let mut recs = vec![
                    CheckRecord::compare(s.name(), "holomorphic_set", &pp, set(holo.iter().copied()), Source::Stated, set(actual_holo)),
                    CheckRecord::compare(
                        s.name(),
                        "scan",
                        &pp,
                        render_scan(&predicted_scan(&k, m_max, &holo, false)),
                        Source::Derived,
                        render_scan(&rows),
                    ),
                ];
                if let Some(row) = rows.get(r as usize + 1) {
                    let want = ExactScalar::int(r as i64 + 2) + half(n as i64 - 1);
                    recs.push(CheckRecord::compare(s.name(), "weight_at_recovery", &pp, want, Source::Stated, opt(&row.weight)));
                }
                Ok(recs)
            }));
        }
    }
    if cfg.symbolic_k {
        for n in 1..=cfg.n.unwrap_or(2) {
            let m_max = cfg.m_max.unwrap_or(4);
            let p = params(&[("n", n.to_string()), ("m_max", m_max.to_string()), ("k", "symbolic".into())]);
            let pp = p.clone();
            out.push(Job::new(s, p, move || {
                let obs = symbolic_obstructions(&siegel_module(n, ExactScalar::kappa())?, m_max)?;
                Ok(obs
                    .iter()
                    .filter(|o| o.m >= 1)
                    .map(|o| {
                        let want = half(n as i64 - 1) - ExactScalar::int(o.m as i64 - 1);
                        let mut actual = o.roots.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
                        if let Some(rest) = &o.irreducible_rest {
                            actual.push_str(&format!(" (rest {rest})"));
                        }
                        CheckRecord::compare(s.name(), &format!("obstruction_roots_m{}", o.m), &pp, want, Source::Stated, actual)
                    })
                    .collect())
            }));
        }
    }
}

fn delta_eigen(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::DeltaEigen;
    for n in 1..=cfg.n.unwrap_or(2) {
        let r_max = cfg.r_max.unwrap_or(if n <= 2 { 3 } else { 0 });
        let p = params(&[("n", n.to_string()), ("r_max", r_max.to_string())]);
        let pp = p.clone();
        out.push(Job::new(s, p, move || {
            let rep = delta_eigencheck(&siegel_module(n, ExactScalar::kappa())?, r_max)?;
            Ok(rep
                .entries
                .iter()
                .map(|e| {
                    let name = e.r.map_or_else(|| "laplace_on_e".to_string(), |r| format!("laplace_on_m_plus_{r}"));
                    let mut rec = CheckRecord::compare(s.name(), &name, &pp, &e.expected, Source::Stated, &e.lhs);
                    if !e.ok {
                        rec.status = crate::report::Status::Fail;
                    }
                    rec
                })
                .collect())
        }));
    }
}

fn cofactor(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::Cofactor;
    for n in 2..=cfg.n.unwrap_or(3).max(2) {
        for r in 0..=cfg.r_max.unwrap_or(1) {
            let mut weights = vec![None];
            if cfg.symbolic_k {
                weights.push(Some(ExactScalar::kappa()));
            }
            for w in weights {
                let label = w.as_ref().map_or_else(|| "critical".to_string(), |_| "symbolic".to_string());
                let p = params(&[("n", n.to_string()), ("r", r.to_string()), ("k", label)]);
                let pp = p.clone();
                let derive = cfg.derive;
                out.push(Job::new(s, p, move || {
                    let rep = cofactor_relation_check(n, r, w.clone())?;
                    let _ = derive;
                    Ok(vec![
                        CheckRecord::compare(s.name(), "uniform_constant", &pp, true, Source::Stated, rep.uniform),
                        CheckRecord::compare(s.name(), "span_rank", &pp, n * (n + 1) / 2, Source::Stated, rep.span_rank),
                        CheckRecord::derived(s.name(), "constant_c", &pp, opt(&rep.c)),
                        CheckRecord::derived(s.name(), "uniform_without_lowering_weights", &pp, rep.bare_uniform),
                    ])
                }));
            }
        }
    }
}

fn center_projection(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::CenterProjection;
    let n_max = cfg.n.unwrap_or(3);
    for n in 1..=n_max {
        for which in ["laplace", "gelfand4"] {
            if which == "gelfand4" && n != 2 {
                continue;
            }
            let p = params(&[("n", n.to_string()), ("element", which.into())]);
            let pp = p.clone();
            out.push(Job::new(s, p, move || {
                let hc = HcContext::new(n)?;
                let ctx = PbwContext::standard(hc.algebra());
                let d = if which == "laplace" { build_laplace(&ctx)?.0 } else { build_gelfand(&ctx, 4)? };
                let rep = hc.check_center_projection(&d)?;
                let mut recs = vec![
                    CheckRecord::compare(s.name(), "in_ideal", &pp, "[]", Source::Stated, format!("{:?}", rep.offending)),
                    CheckRecord::compare(s.name(), "weyl_invariant", &pp, true, Source::Derived, rep.weyl_invariant),
                    CheckRecord::compare(s.name(), "action_matches_projection", &pp, true, Source::Structural, rep.action_ok),
                    CheckRecord::derived(s.name(), "gamma", &pp, &rep.gamma),
                    CheckRecord::derived(s.name(), "pr1", &pp, &rep.pr1),
                ];
                if which == "laplace" {
                    let k = ExactScalar::kappa();
                    let nn = ExactScalar::int(n as i64);
                    let want = k.clone() * nn.clone() * (k - nn - ExactScalar::one());
                    recs.push(CheckRecord::compare(s.name(), "action_value", &pp, want, Source::Stated, &rep.action_value));
                }
                Ok(recs)
            }));
        }
    }
}

fn index_for(cfg: &SuiteConfig, j: usize) -> Matrix {
    cfg.index.clone().filter(|m| m.rows() == j).unwrap_or_else(|| default_indices(j).remove(0))
}

fn jacobi_maps(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::JacobiMaps;
    for (n, j) in jacobi_pairs(cfg) {
        let idx = index_for(cfg, j);
        let p = params(&[("n", n.to_string()), ("j", j.to_string()), ("index", render_index(&idx))]);
        let pp = p.clone();
        let derive = cfg.derive;
        out.push(Job::new(s, p, move || {
            let alg = build_jacobi(n, j)?;
            let tm = TransferMaps::new(&PbwContext::standard(&alg))?;
            let mut recs = vec![
                report_failures(s, "t0_equivariance", &pp, &check_t0_equivariance(&alg)?),
                report_failures(s, "ad_invariance", &pp, &check_ad_invariance(&tm)?),
                report_failures(s, "that_commutes_with_heisenberg", &pp, &check_that_commutes(&tm)?),
                report_failures(s, "bracket_relation", &pp, &check_bracket_relation(&tm)?),
            ];
            let det = check_det_transfer(&tm)?;
            recs.push(CheckRecord::compare(s.name(), "det_transfer_proportional", &pp, true, Source::Stated, det.holds_proportionally));
            recs.push(CheckRecord::constant(s.name(), "det_transfer_kappa", &pp, 1, opt(&det.kappa), derive));
            recs.push(CheckRecord::derived(
                s.name(),
                "det_transfer_excess",
                &pp,
                format!("det Z power +{} with kappa {}", det.excess_power.map_or("none".into(), |e| e.to_string()), opt(&det.excess_kappa)),
            ));
            let lt = check_levi_trace_lemma(n, j, &idx)?;
            recs.push(CheckRecord::compare(s.name(), "levi_trace_uniform", &pp, true, Source::Stated, lt.uniform));
            recs.push(CheckRecord::constant(s.name(), "levi_trace_s", &pp, &lt.stated_s, opt(&lt.s), derive));
            recs.push(CheckRecord::compare(s.name(), "star_weight", &pp, &lt.expected_star_weight, Source::Stated, opt(&lt.star_weight)));
            let module = jacobi_module(n, j, &idx, ExactScalar::kappa())?;
            let sc = StarContext::new(&module)?;
            recs.push(CheckRecord::constant(s.name(), "c_star", &pp, ExactScalar::int(2) * idx.det(), sc.c_star(), derive));
            recs.push(star_law(s, &pp, &sc)?);
            Ok(recs)
        }));
    }
}

/// X*(Y*v) − Y*(X*v) = [X,Y]*v on all sp-part pairs at v₀.
fn star_law(s: Suite, p: &Params, sc: &StarContext) -> vbol_core::Result<CheckRecord> {
    let module = sc.module();
    let alg = module.context().algebra().clone();
    let v = module.generator();
    let sp = sc.maps().sp_part().to_vec();
    let mut bad = Vec::new();
    let mut checked = 0;
    for &a in &sp {
        for &b in &sp {
            let lhs = sc.star_basis(a, &sc.star_basis(b, &v)?)?.sub(&sc.star_basis(b, &sc.star_basis(a, &v)?)?);
            let br = vbol_core::LieElement::basis(&alg, a).bracket(&vbol_core::LieElement::basis(&alg, b))?;
            checked += 1;
            if lhs != sc.star_lie(&br, &v)? {
                bad.push(format!("[{}, {}]", alg.label(a), alg.label(b)));
            }
        }
    }
    let actual = if bad.is_empty() { format!("0 failures of {checked}") } else { format!("{} failures of {checked}: {}", bad.len(), bad.join(" ")) };
    Ok(CheckRecord::compare(s.name(), "star_action_law", p, format!("0 failures of {checked}"), Source::Stated, actual))
}

fn jacobi_recovery(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::JacobiRecovery;
    for (n, j) in jacobi_pairs(cfg) {
        let indices = match &cfg.index {
            Some(m) => vec![m.clone()],
            None => default_indices(j),
        };
        for idx in indices {
            for r in 1..=cfg.r_max.unwrap_or(2).max(1) {
                let m_max = cfg.m_max.unwrap_or(r + 2);
                let p = params(&[
                    ("n", n.to_string()),
                    ("j", j.to_string()),
                    ("index", render_index(&idx)),
                    ("r", r.to_string()),
                    ("m_max", m_max.to_string()),
                ]);
                let pp = p.clone();
                let idx = idx.clone();
                out.push(Job::new(s, p, move || {
                    let k = half((n + j + 1) as i64) - ExactScalar::int(r as i64);
                    let module = jacobi_module(n, j, &idx, k.clone())?;
                    let rows = recovery_scan(&module, m_max)?;
                    let holo: Vec<u32> = [0, r].into_iter().filter(|&m| m <= m_max).collect();
                    let mut recs = vec![
                        CheckRecord::compare(
                            s.name(),
                            "holomorphic_set",
                            &pp,
                            set(holo.iter().copied()),
                            Source::Stated,
                            set(rows.iter().filter(|x| x.holomorphic).map(|x| x.m)),
                        ),
                        CheckRecord::compare(
                            s.name(),
                            "scan",
                            &pp,
                            render_scan(&predicted_scan(&k, m_max, &holo, true)),
                            Source::Derived,
                            render_scan(&rows),
                        ),
                    ];
                    let sc = StarContext::new(&module)?;
                    let star = star_recovery_scan(&sc, m_max)?;
                    let agree = star.iter().all(|x| x.star_holomorphic == x.dot_holomorphic && x.proportional);
                    recs.push(CheckRecord::compare(s.name(), "star_scan_matches_dot_scan", &pp, true, Source::Derived, agree));
                    let implied = star.iter().all(|x| !x.dot_holomorphic || x.star_holomorphic);
                    recs.push(CheckRecord::compare(s.name(), "dot_holomorphic_implies_star", &pp, true, Source::Stated, implied));
                    Ok(recs)
                }));
            }
        }
    }
}

fn bol_extension(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::BolExtension;
    let j_fixed = cfg.index.as_ref().map(|m| m.rows());
    for n in 1..=cfg.n.unwrap_or(2) {
        for j in 1..=j_fixed.or(cfg.j).unwrap_or(2) {
            if j_fixed.is_some_and(|f| f != j) {
                continue;
            }
            let idx = cfg.index.clone().unwrap_or_else(|| bol_index(j));
            for l in 1..=cfg.l.unwrap_or(2) {
                let p = params(&[("n", n.to_string()), ("j", j.to_string()), ("l", l.to_string()), ("index", render_index(&idx))]);
                let pp = p.clone();
                let idx = idx.clone();
                let derive = cfg.derive;
                out.push(Job::new(s, p, move || {
                    let rep = verify_bol_extension(n, j, &idx, l, &bol_test_set(n, j, l))?;
                    let holds = if rep.holds { "true".to_string() } else { format!("false: {}", rep.witnesses.join(" / ")) };
                    Ok(vec![
                        CheckRecord::compare(s.name(), "uniform_constant", &pp, true, Source::Stated, holds),
                        CheckRecord::compare(s.name(), "informative_test_functions", &pp, true, Source::Structural, rep.informative > 0),
                        CheckRecord::constant(s.name(), "constant_c", &pp, &rep.stated, opt(&rep.c), derive),
                        CheckRecord::derived(s.name(), "matched_form", &pp, format!("{:?}", rep.matched).to_lowercase()),
                    ])
                }));
            }
        }
    }
}

/// Degree ≤ 2 monomials, plus τ-monomials of degree n·l when that is larger.
pub fn bol_test_set(n: usize, j: usize, l: u32) -> Vec<FormalFunction> {
    let mut set = degree_two_test_set(n, j);
    let deg = (n as u16) * (l as u16);
    if deg > 2 {
        let vars = FormalVars::new(n, j);
        let tau = n * (n + 1) / 2;
        set.extend(
            vars.monomials(deg)
                .into_iter()
                .filter(|p| {
                    p.terms()
                        .all(|(e, _)| e.iter().skip(tau).all(|&x| x == 0) && e.iter().map(|&x| x as u32).sum::<u32>() == deg as u32)
                })
                .filter_map(|p| FormalFunction::new(vars, p).ok()),
        );
    }
    set
}

fn sanity_records(s: Suite, p: &Params, alg: &Arc<LieAlgebra>) -> Vec<CheckRecord> {
    let violation = alg
        .jacobi_violation()
        .map_or_else(|| "none".to_string(), |(a, b, c)| format!("({}, {}, {})", alg.label(a), alg.label(b), alg.label(c)));
    vec![
        CheckRecord::compare(s.name(), "jacobi_identity_violation", p, "none", Source::Structural, violation),
        CheckRecord::compare(s.name(), "antisymmetric", p, true, Source::Structural, alg.is_antisymmetric()),
        CheckRecord::compare(s.name(), "realization_consistent", p, true, Source::Structural, alg.realization_consistent()),
    ]
}

fn algebra_sanity(cfg: &SuiteConfig, out: &mut Vec<Job>) {
    let s = Suite::AlgebraSanity;
    let n_max = cfg.n.unwrap_or(3);
    for big_n in 1..=n_max {
        let p = params(&[("algebra", format!("sp({})", 2 * big_n))]);
        let pp = p.clone();
        out.push(Job::new(s, p, move || {
            let alg = build_sp(big_n)?;
            let mut recs = sanity_records(s, &pp, &alg);
            recs.push(CheckRecord::compare(s.name(), "dimension", &pp, big_n * (2 * big_n + 1), Source::Structural, alg.dim()));
            if let Some(roots) = alg.roots() {
                let short = roots.positive.iter().filter(|r| r.length == RootLength::Short).count();
                let long = roots.positive.len() - short;
                recs.push(CheckRecord::compare(
                    s.name(),
                    "positive_roots_short_long",
                    &pp,
                    format!("{} {}", big_n * (big_n - 1), big_n),
                    Source::Structural,
                    format!("{short} {long}"),
                ));
            }
            let ctx = PbwContext::standard(&alg);
            let (delta, _) = build_laplace(&ctx)?;
            recs.push(CheckRecord::compare(s.name(), "laplace_central", &pp, true, Source::Stated, delta.is_central()?));
            if big_n <= 2 {
                let c4 = build_gelfand(&ctx, 4)?;
                recs.push(CheckRecord::compare(s.name(), "gelfand4_central", &pp, true, Source::Structural, c4.is_central()?));
            }
            Ok(recs)
        }));
    }
    let j_max = cfg.j.unwrap_or(3);
    for n in 1..=n_max {
        for j in 1..=j_max {
            if cfg.j.is_none() && n + j > 4 {
                continue;
            }
            let p = params(&[("algebra", format!("g({n},{j})"))]);
            let pp = p.clone();
            out.push(Job::new(s, p, move || {
                let alg = build_jacobi(n, j)?;
                let mut recs = sanity_records(s, &pp, &alg);
                let z = alg.subspace("z")?.to_vec();
                let central = z.iter().all(|&a| (0..alg.dim()).all(|b| alg.bracket_basis(a, b).is_empty()));
                recs.push(CheckRecord::compare(s.name(), "z_central", &pp, true, Source::Structural, central));
                Ok(recs)
            }));
        }
    }
}
