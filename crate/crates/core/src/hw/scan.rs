use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieElement;
use crate::matrix::Matrix;
use crate::scalar::{ExactScalar, Param, Poly};
use crate::uea::{build_laplace, build_m_plus, PbwContext};

use super::{siegel_module, CharacterInducedModule, ModuleKind, ModuleVector};

/// Size of the raising determinant for the module's algebra.
fn raising_size(module: &CharacterInducedModule) -> usize {
    match module.kind() {
        ModuleKind::Siegel { n } => *n,
        ModuleKind::Jacobi { n, j, .. } => n + j,
        ModuleKind::Generic => module.context().algebra().realization().map_or(0, |r| r.size() / 2),
    }
}

/// [e, M̂₊e, …, M̂₊^{m_max}e].
pub fn raising_vectors(module: &Arc<CharacterInducedModule>, m_max: u32) -> Result<Vec<ModuleVector>> {
    let (_, mp) = build_m_plus(module.context(), raising_size(module))?;
    let mut out = vec![module.generator()];
    for m in 1..=m_max as usize {
        let next = out[m - 1].act(&mp)?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub weight: Option<ExactScalar>,
    pub holomorphic: bool,
    pub nonzero: bool,
    /// Jacobi modules only: 𝐙 still acts by 2π̂ℳ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_ok: Option<bool>,
}

pub fn recovery_scan(module: &Arc<CharacterInducedModule>, m_max: u32) -> Result<Vec<ScanRow>> {
    let vs = raising_vectors(module, m_max)?;
    let alg = module.context().algebra().clone();
    let mut rows = Vec::with_capacity(vs.len());
    for (m, v) in vs.iter().enumerate() {
        let (_, weight) = v.weight_check();
        let index_ok = match module.kind() {
            ModuleKind::Jacobi { .. } => Some(alg.subspace("z")?.iter().all(|&z| {
                let chi = module.chi(z);
                v.act_basis(z) == v.scale(&chi)
            })),
            _ => None,
        };
        rows.push(ScanRow {
            m: m as u32,
            weight,
            holomorphic: v.is_holomorphic(),
            nonzero: !v.is_zero(),
            index_ok,
        });
    }
    Ok(rows)
}

/// The polynomial condition in κ for M̂₊ᵐe to be holomorphic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Obstruction {
    pub m: u32,
    /// Monic gcd of all annihilator coefficients, κ-content removed;
    /// `None` when every coefficient vanishes identically.
    pub polynomial: Option<String>,
    pub roots: Vec<ExactScalar>,
    /// Factor without rational roots, if any.
    pub irreducible_rest: Option<String>,
}

impl Obstruction {
    pub fn vanishes_identically(&self) -> bool {
        self.polynomial.is_none()
    }
}

fn annihilators(module: &CharacterInducedModule) -> Result<Vec<usize>> {
    let alg = module.context().algebra();
    let mut out = alg.subspace("L")?.to_vec();
    if matches!(module.kind(), ModuleKind::Jacobi { .. }) {
        out.extend_from_slice(alg.subspace("l_heis")?);
    }
    Ok(out)
}

/// Scans a module built with symbolic weight κ.
pub fn symbolic_obstructions(module: &Arc<CharacterInducedModule>, m_max: u32) -> Result<Vec<Obstruction>> {
    let kappa = Param::kappa();
    let vs = raising_vectors(module, m_max)?;
    let ann = annihilators(module)?;
    let mut out = Vec::new();
    for (m, v) in vs.iter().enumerate() {
        let mut g = Poly::zero();
        for &y in &ann {
            for (_, c) in v.act_basis(y).terms() {
                g = g.gcd(&c.numer());
            }
        }
        if g.is_zero() {
            out.push(Obstruction {
                m: m as u32,
                polynomial: None,
                roots: Vec::new(),
                irreducible_rest: None,
            });
            continue;
        }
        let content = g.coeffs_in(&kappa).values().fold(Poly::zero(), |acc, c| acc.gcd(c));
        let g = g.div_exact(&content).expect("content divides").monic();
        let (roots, rest) = g
            .rational_roots(&kappa)
            .ok_or_else(|| Error::Invariant(format!("obstruction {g} is not univariate in k")))?;
        out.push(Obstruction {
            m: m as u32,
            polynomial: Some(g.to_string()),
            roots: roots.into_iter().map(|(q, _)| ExactScalar::rational(q)).collect(),
            irreducible_rest: (!rest.is_constant()).then(|| rest.to_string()),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaEntry {
    /// `None` for the Δ·e line.
    pub r: Option<u32>,
    pub lhs: String,
    pub expected: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub entries: Vec<DeltaEntry>,
}

impl DeltaReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Δ·e = kn(k−n−1)e and Δ⁽¹⁾M̂₊ʳe = (k+2r)n(k+2r−n−1)M̂₊ʳe.
pub fn delta_eigencheck(module: &Arc<CharacterInducedModule>, r_max: u32) -> Result<DeltaReport> {
    let ModuleKind::Siegel { n } = *module.kind() else {
        return Err(Error::InvalidArgument("Laplace eigencheck needs a Siegel module".into()));
    };
    let k = module
        .weight()
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("module has no weight".into()))?;
    let (delta, delta1) = build_laplace(module.context())?;
    let nn = ExactScalar::int(n as i64);
    let eig = |w: &ExactScalar| w * &nn * (w - &nn - ExactScalar::one());
    let mut entries = Vec::new();
    let e = module.generator();
    let lhs = e.act(&delta)?;
    let rhs = e.scale(&eig(&k));
    entries.push(DeltaEntry {
        r: None,
        lhs: lhs.to_string(),
        expected: rhs.to_string(),
        ok: lhs == rhs,
    });
    for (r, v) in raising_vectors(module, r_max)?.iter().enumerate() {
        let w = &k + &ExactScalar::int(2 * r as i64);
        let lhs = v.act(&delta1)?;
        let rhs = v.scale(&eig(&w));
        entries.push(DeltaEntry {
            r: Some(r as u32),
            lhs: lhs.to_string(),
            expected: rhs.to_string(),
            ok: lhs == rhs,
        });
    }
    Ok(DeltaReport { entries })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CofactorReport {
    pub n: usize,
    pub r: u32,
    pub weight: ExactScalar,
    pub c: Option<ExactScalar>,
    /// One C for all (i, j) with the lowering side c_α·Y_α.
    pub uniform: bool,
    /// Same test with the bare Y_α.
    pub bare_uniform: bool,
    /// Rank of the span of the cofactor images of M̂₊ʳe.
    pub span_rank: usize,
}

/// c_α Y_{α(i,j)}·M̂₊^{r+1}e against cofactor(i,j)·M̂₊ʳe for all (i, j),
/// where c_α Y_α is the entry E_{n+i,j} + E_{n+j,i}.
/// `weight` defaults to the critical value −r + (n−1)/2.
pub fn cofactor_relation_check(n: usize, r: u32, weight: Option<ExactScalar>) -> Result<CofactorReport> {
    let k = weight.unwrap_or_else(|| ExactScalar::ratio(n as i64 - 1, 2) - ExactScalar::int(r as i64));
    let module = siegel_module(n, k.clone())?;
    let ctx: &Arc<PbwContext> = module.context();
    let alg = ctx.algebra().clone();
    let layout = alg.sp_layout().expect("symplectic layout").clone();
    let (mat, _) = build_m_plus(ctx, n)?;
    let lowering = |i: usize, j: usize| -> Result<LieElement> {
        let m = Matrix::unit(2 * n, n + i, j).add(&Matrix::unit(2 * n, n + j, i));
        LieElement::from_matrix(&alg, &m)
    };
    let vs = raising_vectors(&module, r + 1)?;
    let (u, w) = (&vs[r as usize], &vs[r as usize + 1]);

    let mut images = Vec::new();
    let mut weighted = Vec::new();
    let mut bare = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rhs = u.act(&mat.cofactor(i, j)?)?;
            weighted.push((w.act_lie(&lowering(i, j)?)?, rhs.clone()));
            bare.push((w.act_basis(layout.y[i][j]), rhs.clone()));
            if i <= j {
                images.push(rhs);
            }
        }
    }
    let (c, uniform) = common_ratio(&weighted);
    let (_, bare_uniform) = common_ratio(&bare);
    Ok(CofactorReport {
        n,
        r,
        weight: k,
        c: if w.is_zero() { Some(ExactScalar::zero()) } else { c },
        uniform,
        bare_uniform,
        span_rank: span_rank(&images),
    })
}

/// The single C with lhs = C·rhs for every pair, if there is one.
fn common_ratio(pairs: &[(ModuleVector, ModuleVector)]) -> (Option<ExactScalar>, bool) {
    let mut c: Option<ExactScalar> = None;
    for (lhs, rhs) in pairs {
        if rhs.is_zero() {
            if !lhs.is_zero() {
                return (None, false);
            }
            continue;
        }
        match (&c, lhs.ratio_to(rhs)) {
            (_, None) => return (None, false),
            (None, Some(q)) => c = Some(q),
            (Some(c0), Some(q)) if *c0 != q => return (None, false),
            _ => {}
        }
    }
    (c, true)
}

fn span_rank(vs: &[ModuleVector]) -> usize {
    let mut monos = Vec::new();
    for v in vs {
        for (m, _) in v.terms() {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
        }
    }
    if vs.is_empty() || monos.is_empty() {
        return 0;
    }
    Matrix::from_fn(vs.len(), monos.len(), |a, b| vs[a].coeff(&monos[b])).rank()
}
