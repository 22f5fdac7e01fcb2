//! Transfer from U(sp(2n)) into U(g^(n,j)): the matrices 𝐙, 𝐔, 𝐕, the
//! maps T₀, T and 𝐓, and the star action built from them.

mod star;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{AlgebraKind, LieAlgebra, LieElement};
use crate::matrix::Matrix;
use crate::ring::{CommPoly, Ring};
use crate::scalar::ExactScalar;
use crate::uea::{build_m_plus, OperatorMatrix, PbwContext, UeaElement};

pub use star::{
    check_levi_trace_lemma, star_recovery_scan, LeviTraceReport, StarContext, StarScanRow,
};

fn dims(alg: &LieAlgebra) -> Result<(usize, usize)> {
    match alg.kind() {
        AlgebraKind::Jacobi { n, j } => Ok((n, j)),
        _ => Err(Error::InvalidArgument("expected a Jacobi algebra g^(n,j)".into())),
    }
}

/// Rows/columns of the big matrix carrying the sp(2n) part.
fn sp_indices(n: usize, j: usize) -> Vec<usize> {
    (0..n).chain(n + j..2 * n + j).collect()
}

/// Embeds a 2n×2n matrix into the (2n+2j)-square realization.
pub fn embed_sp(alg: &Arc<LieAlgebra>, small: &Matrix) -> Result<LieElement> {
    let (n, j) = dims(alg)?;
    let idx = sp_indices(n, j);
    let big = 2 * (n + j);
    let mut m = Matrix::zeros(big, big);
    for ((r, c), v) in small.entries() {
        m[(idx[r], idx[c])] = v.clone();
    }
    LieElement::from_matrix(alg, &m)
}

/// The sp(2n) block of an sp-part element.
fn restrict_sp(x: &LieElement) -> Result<Matrix> {
    let (n, j) = dims(x.algebra())?;
    let idx = sp_indices(n, j);
    let m = x.to_matrix().ok_or_else(|| Error::InvalidArgument("no matrix realization".into()))?;
    Ok(m.submatrix(&idx, &idx))
}

#[derive(Debug, Clone)]
pub struct HeisenbergMatrices {
    ctx: Arc<PbwContext>,
    n: usize,
    j: usize,
    pub z: OperatorMatrix,
    pub u: OperatorMatrix,
    pub v: OperatorMatrix,
    pub z_adj: OperatorMatrix,
    pub det_z: UeaElement,
}

impl HeisenbergMatrices {
    pub fn build(ctx: &Arc<PbwContext>) -> Result<Self> {
        let alg = ctx.algebra();
        let (n, j) = dims(alg)?;
        let h = alg.heis_layout().expect("jacobi layout");
        let z = OperatorMatrix::from_fn(j, j, |a, b| ctx.generator(h.z[a][b]))?;
        let u = OperatorMatrix::from_fn(j, n, |i, l| ctx.generator(h.u[i][l]))?;
        let v = OperatorMatrix::from_fn(j, n, |i, l| ctx.generator(h.v[i][l]))?;
        let z_adj = OperatorMatrix::from_fn(j, j, |a, b| z.cofactor(b, a).expect("square"))?;
        let det_z = z.det(true)?;

        for e in z.entries() {
            if let Some(a) = e.central_witness()? {
                return Err(Error::Invariant(format!("Z entry does not commute with {}", alg.label(a))));
            }
        }
        let prod = z.mul(&z_adj)?;
        for a in 0..j {
            for b in 0..j {
                let want = if a == b { det_z.clone() } else { ctx.zero() };
                if *prod.get(a, b) != want {
                    return Err(Error::Invariant(format!("Z·adj(Z) differs from det(Z)·I at ({a},{b})")));
                }
            }
        }
        for i1 in 0..j {
            for l1 in 0..n {
                for i2 in 0..j {
                    for l2 in 0..n {
                        let br = v.get(i1, l1).commutator(u.get(i2, l2))?;
                        let want = if l1 == l2 { z.get(i1, i2).clone() } else { ctx.zero() };
                        if br != want {
                            return Err(Error::Invariant(format!(
                                "[V{}{}, U{}{}] = {br}, expected {want}",
                                i1 + 1,
                                l1 + 1,
                                i2 + 1,
                                l2 + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(HeisenbergMatrices {
            ctx: ctx.clone(),
            n,
            j,
            z,
            u,
            v,
            z_adj,
            det_z,
        })
    }

    pub fn context(&self) -> &Arc<PbwContext> {
        &self.ctx
    }

    /// (n, j).
    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.j)
    }
}

/// Polynomial functions on 𝔥^(n,j) in the algebra's basis coordinates.
struct HCoords {
    alg: Arc<LieAlgebra>,
    n: usize,
    j: usize,
}

impl HCoords {
    fn new(alg: &Arc<LieAlgebra>) -> Result<Self> {
        let (n, j) = dims(alg)?;
        Ok(HCoords { alg: alg.clone(), n, j })
    }

    fn var(&self, a: usize) -> CommPoly {
        CommPoly::var(self.alg.dim(), a)
    }

    fn constant(&self, c: &ExactScalar) -> CommPoly {
        CommPoly::constant(self.alg.dim(), c.clone())
    }

    fn z_matrix(&self) -> Matrix<CommPoly> {
        let h = self.alg.heis_layout().expect("jacobi layout");
        Matrix::from_fn(self.j, self.j, |a, b| self.var(h.z[a][b]))
    }

    /// T as a polynomial: Tr(ᵀX·[ᵀ𝐔; −ᵀ𝐕]·adj(𝐙)·[𝐕 𝐔]).
    fn t_poly(&self, x_small: &Matrix) -> CommPoly {
        let (n, j) = (self.n, self.j);
        let h = self.alg.heis_layout().expect("jacobi layout");
        let left = Matrix::from_fn(2 * n, j, |r, i| {
            if r < n {
                self.var(h.u[i][r])
            } else {
                self.var(h.v[i][r - n]).neg()
            }
        });
        let right = Matrix::from_fn(j, 2 * n, |i, c| {
            if c < n {
                self.var(h.v[i][c])
            } else {
                self.var(h.u[i][c - n])
            }
        });
        let xt = x_small.transpose().map(|c| self.constant(c));
        xt.mul(&left).mul(&self.z_matrix().adjugate()).mul(&right).trace()
    }

    /// T₀(h) for the generic element h = Σ h_a·M_a of 𝔥^(n,j), as a 2n×2n
    /// matrix of polynomials.
    fn t0_poly(&self) -> Result<Matrix<CommPoly>> {
        let (n, j) = (self.n, self.j);
        let big = 2 * (n + j);
        let real = self.alg.realization().expect("matrix realization");
        let mut hm: Matrix<CommPoly> = Matrix::zeros(big, big);
        for &a in self.h_basis()?.iter() {
            for ((r, c), v) in real.matrix(a).entries() {
                if !v.is_zero() {
                    hm[(r, c)] = hm[(r, c)].add(&self.var(a).scale(v));
                }
            }
        }
        // Z block of h sits at rows n.., columns 2n+j..; adj(Z) goes at
        // rows 2n+j.., columns n..
        let zb = hm.block(n, 2 * n + j, j, j);
        let mut zh: Matrix<CommPoly> = Matrix::zeros(big, big);
        zh.set_block(2 * n + j, n, &zb.adjugate());
        let mut h0 = hm.clone();
        h0.set_block(n, 2 * n + j, &Matrix::zeros(j, j));
        let full = h0.mul(&zh).mul(&h0);
        let idx = sp_indices(n, j);
        Ok(full.submatrix(&idx, &idx))
    }

    fn h_basis(&self) -> Result<Vec<usize>> {
        let mut out = self.alg.subspace("v_heis")?.to_vec();
        out.extend_from_slice(self.alg.subspace("z")?);
        Ok(out)
    }
}

/// T₀ on a concrete element of 𝔥^(n,j) (coordinates in the algebra basis).
pub fn t0(h: &LieElement) -> Result<Matrix> {
    let hc = HCoords::new(h.algebra())?;
    let poly = hc.t0_poly()?;
    let point: Vec<CommPoly> = (0..h.algebra().dim())
        .map(|a| {
            let c = h.coords().iter().find(|(b, _)| *b == a).map(|(_, c)| c.clone()).unwrap_or_default();
            CommPoly::constant(0, c)
        })
        .collect();
    Ok(poly.map(|p| p.compose(&point, 0).constant_value().unwrap_or_default()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 16 {
            self.failures.push(what());
        }
    }
}

/// d/dt T₀(h + t[X, h]) = [X, T₀(h)] for every sp-part basis X, as a
/// polynomial identity in the coordinates of h.
pub fn check_t0_equivariance(alg: &Arc<LieAlgebra>) -> Result<CheckReport> {
    let hc = HCoords::new(alg)?;
    let t0p = hc.t0_poly()?;
    let hb = hc.h_basis()?;
    let mut rep = CheckReport::new("T0 equivariance");
    for &x in alg.subspace("sp_part")? {
        let xs = restrict_sp(&LieElement::basis(alg, x))?;
        // [X, h] in coordinates, linear in h
        let mut images = vec![CommPoly::zero(); alg.dim()];
        for &a in &hb {
            for (b, c) in alg.bracket_basis(x, a) {
                images[*b] = images[*b].add(&hc.var(a).scale(c));
            }
        }
        let lhs = t0p.map(|p| {
            let mut acc = CommPoly::zero();
            for &b in &hb {
                if !images[b].is_zero() {
                    acc = acc.add(&p.derivative(b).mul(&images[b]));
                }
            }
            acc
        });
        let xp = xs.map(|c| hc.constant(c));
        let rhs = xp.mul(&t0p).sub(&t0p.mul(&xp));
        rep.record(lhs.sub(&rhs).is_zero(), || format!("X = {}", alg.label(x)));
    }
    Ok(rep)
}

/// Precomputed 𝐓 data for g^(n,j).
#[derive(Debug)]
pub struct TransferMaps {
    hm: HeisenbergMatrices,
    /// λ(T(x)) per sp-part basis index (others empty).
    t_sym: Vec<Option<UeaElement>>,
    sp_part: Vec<usize>,
}

impl TransferMaps {
    pub fn new(ctx: &Arc<PbwContext>) -> Result<Self> {
        let hm = HeisenbergMatrices::build(ctx)?;
        let alg = ctx.algebra().clone();
        let hc = HCoords::new(&alg)?;
        let sp_part = alg.subspace("sp_part")?.to_vec();
        let mut t_sym = vec![None; alg.dim()];
        for &x in &sp_part {
            let p = hc.t_poly(&restrict_sp(&LieElement::basis(&alg, x))?);
            t_sym[x] = Some(symmetrize_poly(ctx, &p)?);
        }
        Ok(TransferMaps { hm, t_sym, sp_part })
    }

    pub fn heisenberg(&self) -> &HeisenbergMatrices {
        &self.hm
    }

    pub fn context(&self) -> &Arc<PbwContext> {
        &self.hm.ctx
    }

    pub fn det_z(&self) -> &UeaElement {
        &self.hm.det_z
    }

    fn check_sp(&self, x: &LieElement) -> Result<()> {
        if !Arc::ptr_eq(x.algebra(), self.context().algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if x.coords().iter().any(|(a, _)| self.t_sym[*a].is_none()) {
            return Err(Error::InvalidArgument(format!("{x} is not in the sp(2n) part")));
        }
        Ok(())
    }

    /// λ(T(X)).
    pub fn t_sym(&self, x: &LieElement) -> Result<UeaElement> {
        self.check_sp(x)?;
        let mut acc = self.context().zero();
        for (a, c) in x.coords() {
            acc = acc.add(&self.t_sym[*a].as_ref().expect("sp part").scale(c));
        }
        Ok(acc)
    }

    /// 𝐓(X) = 2·det𝐙·X − λ(T(X)).
    pub fn that(&self, x: &LieElement) -> Result<UeaElement> {
        let xs = self.context().from_lie(x)?;
        let two_det = self.hm.det_z.scale(&ExactScalar::int(2));
        Ok(two_det.mul(&xs)?.sub(&self.t_sym(x)?))
    }

    pub fn sp_part(&self) -> &[usize] {
        &self.sp_part
    }
}

/// λ applied to a commutative polynomial whose variables are basis indices.
fn symmetrize_poly(ctx: &Arc<PbwContext>, p: &CommPoly) -> Result<UeaElement> {
    let mut acc = ctx.zero();
    for (e, c) in p.terms() {
        let mut factors = Vec::new();
        for (a, &k) in e.iter().enumerate() {
            factors.extend(std::iter::repeat_n(a, k as usize));
        }
        let s = if factors.is_empty() { ctx.one() } else { ctx.symmetrize_basis(&factors)? };
        acc = acc.add(&s.scale(c));
    }
    Ok(acc)
}

/// ad(V)·λ(T(X)) = 2·det𝐙·[V, X] for V ∈ 𝔳 and X in the sp(2n) part.
pub fn check_ad_invariance(tm: &TransferMaps) -> Result<CheckReport> {
    let ctx = tm.context();
    let alg = ctx.algebra().clone();
    let two_det = tm.det_z().scale(&ExactScalar::int(2));
    let mut rep = CheckReport::new("ad invariance of T");
    for &v in alg.subspace("v_heis")? {
        let ve = LieElement::basis(&alg, v);
        for &x in tm.sp_part() {
            let xe = LieElement::basis(&alg, x);
            let lhs = tm.t_sym(&xe)?.ad(&ve)?;
            let rhs = two_det.mul(&ctx.from_lie(&ve.bracket(&xe)?)?)?;
            rep.record(lhs == rhs, || format!("V = {}, X = {}: {lhs} vs {rhs}", alg.label(v), alg.label(x)));
        }
    }
    Ok(rep)
}

/// [𝐓(X), h] = 0 for X in the sp(2n) part and h ∈ 𝔥^(n,j).
pub fn check_that_commutes(tm: &TransferMaps) -> Result<CheckReport> {
    let ctx = tm.context();
    let alg = ctx.algebra().clone();
    let mut rep = CheckReport::new("T commutes with h");
    for &x in tm.sp_part() {
        let t = tm.that(&LieElement::basis(&alg, x))?;
        for &h in alg.subspace("v_heis")?.iter().chain(alg.subspace("z")?) {
            let c = t.ad_basis(h)?;
            rep.record(c.is_zero(), || format!("X = {}, h = {}", alg.label(x), alg.label(h)));
        }
    }
    Ok(rep)
}

/// [𝐓(X), 𝐓(Y)] = 2·det𝐙·𝐓([X, Y]) on all basis pairs X < Y.
pub fn check_bracket_relation(tm: &TransferMaps) -> Result<CheckReport> {
    let ctx = tm.context();
    let alg = ctx.algebra().clone();
    let two_det = tm.det_z().scale(&ExactScalar::int(2));
    let sp = tm.sp_part();
    let that: Vec<UeaElement> = sp
        .iter()
        .map(|&x| tm.that(&LieElement::basis(&alg, x)))
        .collect::<Result<_>>()?;
    let mut rep = CheckReport::new("bracket relation of T");
    for a in 0..sp.len() {
        for b in a + 1..sp.len() {
            let lhs = that[a].commutator(&that[b])?;
            let br = LieElement::basis(&alg, sp[a]).bracket(&LieElement::basis(&alg, sp[b]))?;
            let rhs = two_det.mul(&tm.that(&br)?)?;
            rep.record(lhs == rhs, || format!("X = {}, Y = {}", alg.label(sp[a]), alg.label(sp[b])));
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetTransferReport {
    pub n: usize,
    pub j: usize,
    /// Entries of 𝐓(𝐌̂₊,n) pairwise commute.
    pub entries_commute: bool,
    /// (det𝐙)ʲ·det𝐓(𝐌̂₊,n) = κ·(det𝐙)ⁿ·M̂₊,n+j for a scalar κ.
    pub holds_proportionally: bool,
    pub kappa: Option<ExactScalar>,
    /// Smallest e ≥ 0 with left side = κₑ·(det𝐙)^{n+e}·M̂₊,n+j.
    pub excess_power: Option<u32>,
    /// κₑ for that e.
    pub excess_kappa: Option<ExactScalar>,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

/// The ratio `a = c·b` between two U elements, if it exists.
pub fn uea_ratio(a: &UeaElement, b: &UeaElement) -> Option<ExactScalar> {
    let (m, c) = b.terms().next()?;
    let q = a.coeff(m).try_div(c).ok()?;
    a.sub(&b.scale(&q)).is_zero().then_some(q)
}

/// Compares (det𝐙)ʲ·det𝐓(𝐌̂₊,n) with (det𝐙)ⁿ·M̂₊,n+j. When they are not
/// proportional, also searches for e ≥ 0 with
/// (det𝐙)ʲ·det𝐓(𝐌̂₊,n) = κₑ·(det𝐙)^{n+e}·M̂₊,n+j.
pub fn check_det_transfer(tm: &TransferMaps) -> Result<DetTransferReport> {
    let ctx = tm.context();
    let alg = ctx.algebra().clone();
    let (n, j) = dims(&alg)?;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for l in 0..n {
            let m = Matrix::unit(2 * n, i, n + l).add(&Matrix::unit(2 * n, l, n + i));
            entries.push(tm.that(&embed_sp(&alg, &m)?)?);
        }
    }
    let tmat = OperatorMatrix::new(n, n, entries)?;
    let entries_commute = tmat.commutation_witness()?.is_none();
    let det_t = tmat.det(false)?;
    let dz = tm.det_z();
    let lhs = dz.pow(j as u32)?.mul(&det_t)?;
    let (_, big) = build_m_plus(ctx, n + j)?;
    let rhs = dz.pow(n as u32)?.mul(&big)?;
    let kappa = uea_ratio(&lhs, &rhs);
    let (mut excess_power, mut excess_kappa) = (None, None);
    if kappa.is_none() {
        let mut r = rhs.clone();
        for e in 1..=(j as u32 + 1) {
            r = r.mul(dz)?;
            if let Some(q) = uea_ratio(&lhs, &r) {
                excess_power = Some(e);
                excess_kappa = Some(q);
                break;
            }
        }
    } else {
        excess_power = Some(0);
        excess_kappa = kappa.clone();
    }
    Ok(DetTransferReport {
        n,
        j,
        entries_commute,
        holds_proportionally: kappa.is_some(),
        kappa,
        excess_power,
        excess_kappa,
        lhs_terms: lhs.len(),
        rhs_terms: rhs.len(),
    })
}
