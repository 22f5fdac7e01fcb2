//! Harish-Chandra projection on U(sp(2n)) and the reduction of central
//! elements to ℂ[H₀] modulo the right ideal generated by the Siegel
//! parabolic.

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hw::siegel_module_in;
use crate::lie::{build_sp, LieAlgebra};
use crate::ring::{CommPoly, Ring};
use crate::scalar::ExactScalar;
use crate::uea::{PbwContext, UeaElement};

#[derive(Debug)]
pub struct HcContext {
    alg: Arc<LieAlgebra>,
    n: usize,
    /// Order: opposite nilradical, Cartan, nilradical of b.
    gamma_ctx: Arc<PbwContext>,
    cartan: Vec<usize>,
    n_b: Vec<usize>,
    opposite: Vec<usize>,
    rho: Vec<ExactScalar>,
}

impl HcContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::for_algebra(&build_sp(n)?)
    }

    pub fn for_algebra(alg: &Arc<LieAlgebra>) -> Result<Self> {
        let lay = alg
            .sp_layout()
            .ok_or_else(|| Error::InvalidArgument("Harish-Chandra context needs sp(2n)".into()))?
            .clone();
        let n = lay.n;
        let cartan = lay.d.clone();
        let mut n_b = Vec::new();
        let mut opposite = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some(a) = lay.a[i][j] {
                    if i > j {
                        n_b.push(a);
                    } else {
                        opposite.push(a);
                    }
                }
            }
        }
        n_b.extend_from_slice(alg.subspace("L")?);
        opposite.extend_from_slice(alg.subspace("u_plus")?);
        opposite.sort_unstable();
        n_b.sort_unstable();
        let order: Vec<usize> = opposite.iter().chain(&cartan).chain(&n_b).copied().collect();
        let gamma_ctx = PbwContext::new(alg, order)?;
        let rho = cartan
            .iter()
            .map(|&d| {
                let sum: ExactScalar = n_b.iter().map(|&a| eigenvalue(alg, d, a)).sum();
                sum * ExactScalar::ratio(1, 2)
            })
            .collect();
        Ok(HcContext {
            alg: alg.clone(),
            n,
            gamma_ctx,
            cartan,
            n_b,
            opposite,
            rho,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// ρ(d_i) for i = 1..n.
    pub fn rho(&self) -> &[ExactScalar] {
        &self.rho
    }

    pub fn nilradical(&self) -> &[usize] {
        &self.n_b
    }

    pub fn opposite_nilradical(&self) -> &[usize] {
        &self.opposite
    }

    pub fn gamma_context(&self) -> &Arc<PbwContext> {
        &self.gamma_ctx
    }

    /// γ′(D) as a polynomial in d_1..d_n.
    pub fn gamma_prime(&self, d: &UeaElement) -> Result<CommPoly> {
        for &h in &self.cartan {
            if !d.ad_basis(h)?.is_zero() {
                return Err(Error::NotWeightZero(self.alg.label(h).into()));
            }
        }
        let r = d.reorder(&self.gamma_ctx)?;
        let tail: Vec<usize> = self.n_b.iter().map(|&a| self.gamma_ctx.position(a)).collect();
        let cart_pos: Vec<usize> = self.cartan.iter().map(|&a| self.gamma_ctx.position(a)).collect();
        let mut out = CommPoly::new(self.n);
        for (m, c) in r.terms() {
            if m.contains_any(&tail) {
                continue;
            }
            let exps = m.exps();
            if exps.iter().enumerate().any(|(p, &e)| e > 0 && !cart_pos.contains(&p)) {
                return Err(Error::NotCenterLike(r.render_monomial(m)));
            }
            out.add_term(cart_pos.iter().map(|&p| exps[p] as u16).collect(), c.clone());
        }
        Ok(out)
    }

    /// d_i ↦ d_i + ρ(d_i), or d_i ↦ d_i − ρ(d_i) when `inverse`.
    pub fn t_shift(&self, p: &CommPoly, inverse: bool) -> CommPoly {
        let images: Vec<CommPoly> = (0..self.n)
            .map(|i| {
                let r = if inverse { -&self.rho[i] } else { self.rho[i].clone() };
                CommPoly::var(self.n, i).add(&CommPoly::constant(self.n, r))
            })
            .collect();
        p.compose(&images, self.n)
    }

    /// d_i ↦ H₀/n; the result is a polynomial in one variable H₀.
    pub fn pr1(&self, p: &CommPoly) -> CommPoly {
        let h = CommPoly::var(1, 0).scale(&ExactScalar::ratio(1, self.n as i64));
        p.compose(&vec![h; self.n], 1)
    }

    pub fn render_cartan(&self, p: &CommPoly) -> String {
        let names: Vec<String> = (1..=self.n).map(|i| format!("d{i}")).collect();
        p.render(&names)
    }

    /// H₀ = Σ d_i in the given context.
    fn h0(&self, ctx: &Arc<PbwContext>) -> UeaElement {
        self.cartan.iter().fold(ctx.zero(), |acc, &d| acc.add(&ctx.generator(d)))
    }

    /// A polynomial in H₀ as an element of U.
    fn h0_poly(&self, ctx: &Arc<PbwContext>, p: &CommPoly) -> Result<UeaElement> {
        let h0 = self.h0(ctx);
        let mut acc = ctx.zero();
        for (e, c) in p.terms() {
            let k = e.first().copied().unwrap_or(0) as u32;
            acc = acc.add(&h0.pow(k)?.scale(c));
        }
        Ok(acc)
    }

    /// Checks D ≡ pr₁(γ′(D)) mod 𝒥 and the action on the Siegel generator.
    pub fn check_center_projection(&self, d: &UeaElement) -> Result<CenterReport> {
        if let Some(a) = d.central_witness()? {
            return Err(Error::NotCentral(self.alg.label(a).into()));
        }
        let gp = self.gamma_prime(d)?;
        let gamma = self.t_shift(&gp, true);
        let projected = self.pr1(&gp);
        let ctx = d.context();
        let diff = d.sub(&self.h0_poly(ctx, &projected)?);
        let parabolic: Vec<usize> = self
            .alg
            .subspace("levi")?
            .iter()
            .chain(self.alg.subspace("L")?)
            .copied()
            .collect();
        let offending = right_ideal_offenders(&diff, &parabolic)?;

        let std = PbwContext::standard(&self.alg);
        let kappa = ExactScalar::kappa();
        let module = siegel_module_in(&std, kappa.clone())?;
        let e = module.generator();
        let lhs = e.act(&d.reorder(&std)?)?;
        let at = CommPoly::constant(0, ExactScalar::int(self.n as i64) * kappa);
        let value = projected.compose(&[at], 0).constant_value().unwrap_or_default();
        let action_ok = lhs == e.scale(&value);
        Ok(CenterReport {
            n: self.n,
            gamma_prime: self.render_cartan(&gp),
            gamma: self.render_cartan(&gamma),
            weyl_invariant: weyl_invariance(&gamma, self.n),
            pr1: projected.render(&["H0".to_string()]),
            in_j: offending.is_empty(),
            offending,
            action_value: value,
            action_ok,
        })
    }
}

/// Eigenvalue of ad(h) on the root vector `a`.
fn eigenvalue(alg: &LieAlgebra, h: usize, a: usize) -> ExactScalar {
    alg.bracket_basis(h, a)
        .iter()
        .find(|(b, _)| *b == a)
        .map(|(_, c)| c.clone())
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CenterReport {
    pub n: usize,
    pub gamma_prime: String,
    pub gamma: String,
    pub weyl_invariant: bool,
    pub pr1: String,
    pub in_j: bool,
    pub offending: Vec<String>,
    /// pr₁(γ′(D)) at H₀ = nκ.
    pub action_value: ExactScalar,
    pub action_ok: bool,
}

impl CenterReport {
    pub fn ok(&self) -> bool {
        self.in_j && self.action_ok && self.weyl_invariant
    }
}

fn parabolic_first_context(alg: &Arc<LieAlgebra>, p: &[usize]) -> Result<Arc<PbwContext>> {
    for &a in p {
        for &b in p {
            if alg.bracket_basis(a, b).iter().any(|(c, _)| !p.contains(c)) {
                return Err(Error::SubalgebraNotClosed(alg.label(a).into(), alg.label(b).into()));
            }
        }
    }
    let mut order: Vec<usize> = p.to_vec();
    order.sort_unstable();
    order.dedup();
    order.extend((0..alg.dim()).filter(|a| !p.contains(a)));
    PbwContext::new(alg, order)
}

fn right_ideal_offenders(d: &UeaElement, p: &[usize]) -> Result<Vec<String>> {
    let ctx = parabolic_first_context(d.context().algebra(), p)?;
    let r = d.reorder(&ctx)?;
    let pos: Vec<usize> = p.iter().map(|&a| ctx.position(a)).collect();
    Ok(r.terms()
        .filter(|(m, _)| !m.contains_any(&pos))
        .map(|(m, _)| r.render_monomial(m))
        .collect())
}

/// Membership in the right ideal 𝔭·U(g): with 𝔭 first in the PBW order,
/// every monomial must contain a 𝔭 generator.
pub fn right_ideal_membership(d: &UeaElement, p: &[usize]) -> Result<bool> {
    Ok(right_ideal_offenders(d, p)?.is_empty())
}

/// Invariance under all signed permutations of d_1..d_n.
pub fn weyl_invariance(p: &CommPoly, n: usize) -> bool {
    for perm in (0..n).permutations(n) {
        for signs in 0..(1u32 << n) {
            let images: Vec<CommPoly> = (0..n)
                .map(|i| {
                    let v = CommPoly::var(n, perm[i]);
                    if signs >> i & 1 == 1 {
                        v.neg()
                    } else {
                        v
                    }
                })
                .collect();
            if p.compose(&images, n).sub(p).terms().next().is_some() {
                return false;
            }
        }
    }
    true
}
