use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{LieElement, RootLength};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

use super::{OperatorMatrix, PbwContext, UeaElement};

/// The N×N matrix with entry (i, l) = E_{i,N+l} + E_{l,N+i}.
pub fn m_plus_matrix(ctx: &Arc<PbwContext>, big_n: usize) -> Result<OperatorMatrix> {
    let alg = ctx.algebra();
    let real = alg
        .realization()
        .ok_or_else(|| Error::InvalidArgument("raising matrix needs a matrix realization".into()))?;
    if real.size() != 2 * big_n {
        return Err(Error::InvalidArgument(format!(
            "realization has size {}, expected {}",
            real.size(),
            2 * big_n
        )));
    }
    let mut entries = Vec::with_capacity(big_n * big_n);
    for i in 0..big_n {
        for l in 0..big_n {
            let mut m = Matrix::unit(2 * big_n, i, big_n + l);
            m = m.add(&Matrix::unit(2 * big_n, l, big_n + i));
            let x = LieElement::from_matrix(alg, &m)?;
            entries.push(ctx.from_lie(&x)?);
        }
    }
    OperatorMatrix::new(big_n, big_n, entries)
}

/// M̂₊,N together with its matrix.
pub fn build_m_plus(ctx: &Arc<PbwContext>, big_n: usize) -> Result<(OperatorMatrix, UeaElement)> {
    let m = m_plus_matrix(ctx, big_n)?;
    let d = m.det(false)?;
    Ok((m, d))
}

/// (Δ, Δ⁽¹⁾) over sp(2n).
pub fn build_laplace(ctx: &Arc<PbwContext>) -> Result<(UeaElement, UeaElement)> {
    let alg = ctx.algebra();
    let rd = alg
        .roots()
        .ok_or_else(|| Error::InvalidArgument("Laplace element needs root data".into()))?;
    let mut cartan = ctx.zero();
    for &d in &rd.cartan {
        let g = ctx.generator(d);
        cartan = cartan.add(&g.mul(&g)?);
    }
    let mut delta = cartan.clone();
    let mut delta1 = cartan;
    for r in &rd.positive {
        let (x, y) = (ctx.generator(r.x), ctx.generator(r.y));
        let w = ExactScalar::int(if r.length == RootLength::Long { 2 } else { 1 });
        delta = delta.add(&x.mul(&y)?.add(&y.mul(&x)?).scale(&w));
        let br = LieElement::basis(alg, r.x).bracket(&LieElement::basis(alg, r.y))?;
        delta1 = delta1.sub(&ctx.from_lie(&br)?.scale(&ExactScalar::int(r.c as i64)));
    }
    Ok((delta, delta1))
}

/// Tr(Fᵐ) with F_{pq} = Σ_a (x^a)_{pq} x_a over the trace-form dual basis.
pub fn build_gelfand(ctx: &Arc<PbwContext>, m: u32) -> Result<UeaElement> {
    if m != 2 && m != 4 {
        return Err(Error::InvalidArgument(format!("Gelfand invariant degree must be 2 or 4, got {m}")));
    }
    let alg = ctx.algebra();
    let real = alg
        .realization()
        .ok_or_else(|| Error::InvalidArgument("Gelfand invariant needs a matrix realization".into()))?;
    let dim = alg.dim();
    let gram = Matrix::from_fn(dim, dim, |a, b| real.matrix(a).mul(real.matrix(b)).trace());
    let ginv = gram.inverse()?;
    let s = real.size();
    let mut dual = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut acc = Matrix::zeros(s, s);
        for b in 0..dim {
            if !ginv[(a, b)].is_zero() {
                acc = acc.add(&real.matrix(b).scale(&ginv[(a, b)]));
            }
        }
        dual.push(acc);
    }
    let f = OperatorMatrix::from_fn(s, s, |p, q| {
        let mut e = ctx.zero();
        for (a, da) in dual.iter().enumerate() {
            if !da[(p, q)].is_zero() {
                e = e.add(&ctx.generator(a).scale(&da[(p, q)]));
            }
        }
        e
    })?;
    let mut pow = f.clone();
    for _ in 1..m {
        pow = pow.mul(&f)?;
    }
    let c = pow.trace()?;
    if let Some(a) = c.central_witness()? {
        return Err(Error::NotCentral(alg.label(a).to_string()));
    }
    Ok(c)
}
