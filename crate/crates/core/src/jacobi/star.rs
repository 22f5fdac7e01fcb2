use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hw::{jacobi_module, CharacterInducedModule, ModuleKind, ModuleVector};
use crate::lie::{build_sp, AlgebraKind, LieElement};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;
use crate::uea::{build_m_plus, PbwContext, UeaElement};

use super::{dims, TransferMaps};

/// X * v = 𝐓(X)·v / c_star on a Jacobi module of index ℳ.
#[derive(Debug)]
pub struct StarContext {
    module: Arc<CharacterInducedModule>,
    maps: TransferMaps,
    /// Scalar by which det𝐙 acts.
    det_z_scalar: ExactScalar,
    c_star: ExactScalar,
    that: Vec<Option<UeaElement>>,
    sp_ctx: Arc<PbwContext>,
    /// sp(2n) basis index → g^(n,j) basis index.
    sp_map: Vec<usize>,
}

impl StarContext {
    pub fn new(module: &Arc<CharacterInducedModule>) -> Result<Self> {
        if !matches!(module.kind(), ModuleKind::Jacobi { .. }) {
            return Err(Error::InvalidArgument("star action needs a Jacobi module".into()));
        }
        let ctx = module.context();
        let alg = ctx.algebra().clone();
        let (n, _) = dims(&alg)?;
        let maps = TransferMaps::new(ctx)?;
        let e = module.generator();
        let det_z_scalar = e
            .act(maps.det_z())?
            .ratio_to(&e)
            .ok_or_else(|| Error::Invariant("det Z does not act by a scalar".into()))?;
        if det_z_scalar.is_zero() {
            return Err(Error::SingularIndex);
        }
        let c_star = ExactScalar::int(2) * det_z_scalar.clone();
        let mut that = vec![None; alg.dim()];
        for &x in maps.sp_part() {
            that[x] = Some(maps.that(&LieElement::basis(&alg, x))?);
        }
        let sp_ctx = PbwContext::standard(&build_sp(n)?);
        let sp_map = sp_ctx
            .algebra()
            .labels()
            .iter()
            .map(|l| {
                alg.index_of(l)
                    .ok_or_else(|| Error::Invariant(format!("sp(2n) label {l} missing from g^(n,j)")))
            })
            .collect::<Result<_>>()?;
        Ok(StarContext {
            module: module.clone(),
            maps,
            det_z_scalar,
            c_star,
            that,
            sp_ctx,
            sp_map,
        })
    }

    pub fn module(&self) -> &Arc<CharacterInducedModule> {
        &self.module
    }

    pub fn maps(&self) -> &TransferMaps {
        &self.maps
    }

    pub fn c_star(&self) -> &ExactScalar {
        &self.c_star
    }

    pub fn det_z_scalar(&self) -> &ExactScalar {
        &self.det_z_scalar
    }

    /// The standard PBW context of sp(2n) whose elements `star_act` accepts.
    pub fn sp_context(&self) -> &Arc<PbwContext> {
        &self.sp_ctx
    }

    /// X * v for a g^(n,j) basis index in the sp(2n) part.
    pub fn star_basis(&self, a: usize, v: &ModuleVector) -> Result<ModuleVector> {
        let t = self.that[a]
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("star action is defined on the sp(2n) part only".into()))?;
        Ok(v.act(t)?.scale(&self.c_star.inv()?))
    }

    /// X * v for X in sp(2n) or in the sp(2n) part of g^(n,j).
    pub fn star_lie(&self, x: &LieElement, v: &ModuleVector) -> Result<ModuleVector> {
        let map: Box<dyn Fn(usize) -> usize> = match x.algebra().kind() {
            AlgebraKind::Symplectic { .. } if Arc::ptr_eq(x.algebra(), self.sp_ctx.algebra()) => {
                Box::new(|a| self.sp_map[a])
            }
            AlgebraKind::Jacobi { .. } if Arc::ptr_eq(x.algebra(), self.module.context().algebra()) => {
                Box::new(|a| a)
            }
            _ => return Err(Error::AlgebraMismatch),
        };
        let mut out = self.module.zero();
        for (a, c) in x.coords() {
            out = out.add(&self.star_basis(map(*a), v)?.scale(c));
        }
        Ok(out)
    }

    /// u * v for u in [`Self::sp_context`].
    pub fn star_act(&self, u: &UeaElement, v: &ModuleVector) -> Result<ModuleVector> {
        if !Arc::ptr_eq(u.context(), &self.sp_ctx) {
            return Err(Error::ContextMismatch);
        }
        let order = self.sp_ctx.order();
        let mut out = self.module.zero();
        for (m, c) in u.terms() {
            let mut w = v.clone();
            for &p in m.word().iter().rev() {
                w = self.star_basis(self.sp_map[order[p]], &w)?;
                if w.is_zero() {
                    break;
                }
            }
            out = out.add(&w.scale(c));
        }
        Ok(out)
    }

    /// Annihilated by the sp(2n) lowering part under *.
    pub fn is_star_holomorphic(&self, v: &ModuleVector) -> Result<bool> {
        let alg = self.module.context().algebra().clone();
        for &y in alg.subspace("L")? {
            if !self.star_basis(y, v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// k′ with X * v = k′·Tr(X)·v on the Levi, if any.
    pub fn star_weight(&self, v: &ModuleVector) -> Result<Option<ExactScalar>> {
        if v.is_zero() {
            return Ok(None);
        }
        let alg = self.module.context().algebra().clone();
        let mut weight: Option<ExactScalar> = None;
        for &l in alg.subspace("levi")? {
            let w = self.star_basis(l, v)?;
            let tr = alg.levi_trace(l);
            if tr.is_zero() {
                if !w.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let Some(r) = w.ratio_to(v) else {
                return Ok(None);
            };
            let kp = r.try_div(&tr)?;
            match &weight {
                None => weight = Some(kp),
                Some(k0) if *k0 == kp => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(weight)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeviTraceReport {
    pub n: usize,
    pub j: usize,
    /// λ(T(X))·v₀ = s·Tr(X)·(det𝐙 scalar)·v₀ with one s for all Levi X.
    pub s: Option<ExactScalar>,
    pub uniform: bool,
    /// Σ adj(𝐙)_{ab}·𝐙_{ab} = j·det𝐙 in U(𝔷).
    pub adjugate_identity: bool,
    pub star_weight: Option<ExactScalar>,
    pub expected_star_weight: ExactScalar,
    /// Stated constant in front of Tr(X), for comparison with s.
    pub stated_s: ExactScalar,
}

pub fn check_levi_trace_lemma(n: usize, j: usize, index: &Matrix) -> Result<LeviTraceReport> {
    let kappa = ExactScalar::kappa();
    let module = jacobi_module(n, j, index, kappa.clone())?;
    let sc = StarContext::new(&module)?;
    let alg = module.context().algebra().clone();
    let v0 = module.generator();
    let mut s: Option<ExactScalar> = None;
    let mut uniform = true;
    for &l in alg.subspace("levi")? {
        let w = v0.act(&sc.maps.t_sym(&LieElement::basis(&alg, l))?)?;
        let tr = alg.levi_trace(l);
        if tr.is_zero() {
            uniform &= w.is_zero();
            continue;
        }
        match w.ratio_to(&v0) {
            None => uniform = false,
            Some(r) => {
                let q = r.try_div(&(tr * sc.det_z_scalar.clone()))?;
                match &s {
                    None => s = Some(q),
                    Some(s0) => uniform &= *s0 == q,
                }
            }
        }
    }
    let hm = sc.maps.heisenberg();
    let ctx = module.context();
    let mut tr_adj = ctx.zero();
    for a in 0..j {
        for b in 0..j {
            tr_adj = tr_adj.add(&hm.z_adj.get(a, b).mul(hm.z.get(a, b))?);
        }
    }
    let adjugate_identity = tr_adj == hm.det_z.scale(&ExactScalar::int(j as i64));
    Ok(LeviTraceReport {
        n,
        j,
        s: if uniform { s } else { None },
        uniform,
        adjugate_identity,
        star_weight: sc.star_weight(&v0)?,
        expected_star_weight: kappa - ExactScalar::ratio(j as i64, 2),
        stated_s: ExactScalar::ratio(j as i64, 2),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarScanRow {
    pub m: u32,
    pub star_holomorphic: bool,
    pub dot_holomorphic: bool,
    pub star_weight: Option<ExactScalar>,
    pub dot_weight: Option<ExactScalar>,
    /// M̂₊,n^m * v₀ is a nonzero multiple of M̂₊,n+j^m · v₀.
    pub proportional: bool,
}

/// Runs M̂₊,n under * alongside M̂₊,n+j under the given action.
pub fn star_recovery_scan(sc: &StarContext, m_max: u32) -> Result<Vec<StarScanRow>> {
    let module = sc.module();
    let alg = module.context().algebra().clone();
    let (n, j) = dims(&alg)?;
    let (_, small) = build_m_plus(sc.sp_context(), n)?;
    let (_, big) = build_m_plus(module.context(), n + j)?;
    let mut star_v = module.generator();
    let mut dot_v = module.generator();
    let mut rows = Vec::new();
    for m in 0..=m_max {
        if m > 0 {
            star_v = sc.star_act(&small, &star_v)?;
            dot_v = dot_v.act(&big)?;
        }
        let proportional = match star_v.ratio_to(&dot_v) {
            Some(q) => !q.is_zero(),
            None => star_v.is_zero() && dot_v.is_zero(),
        };
        rows.push(StarScanRow {
            m,
            star_holomorphic: sc.is_star_holomorphic(&star_v)?,
            dot_holomorphic: dot_v.is_holomorphic_jacobi(),
            star_weight: sc.star_weight(&star_v)?,
            dot_weight: dot_v.weight_check().1,
            proportional,
        });
    }
    Ok(rows)
}
