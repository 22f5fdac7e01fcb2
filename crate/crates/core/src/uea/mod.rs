//! Universal enveloping algebras in PBW normal form.

mod named;
mod opmatrix;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieElement};
use crate::ring::push_term;
use crate::scalar::ExactScalar;

pub use named::{build_gelfand, build_laplace, build_m_plus, m_plus_matrix};
pub use opmatrix::OperatorMatrix;

pub const DEFAULT_DEGREE_CAP: usize = 64;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Cap used by contexts built without an explicit one.
pub fn default_degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_default_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

/// Exponent vector indexed by order position, with cached degree so the
/// derived order is graded.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; len].into_boxed_slice(),
        }
    }

    pub fn from_exps(exps: Vec<u8>) -> Self {
        let deg = exps.iter().map(|&e| e as u16).sum();
        Monomial {
            deg,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn first(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    /// Letters (positions) left to right.
    pub fn word(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(p, &e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }

    pub(crate) fn bump(&self, p: usize, by: i32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[p] = (exps[p] as i32 + by) as u8;
        Monomial {
            deg: (self.deg as i32 + by) as u16,
            exps,
        }
    }

    /// Product of two monomials in a commutative setting.
    pub fn times(&self, o: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + o.deg,
            exps: self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn contains_any(&self, positions: &[usize]) -> bool {
        positions.iter().any(|&p| self.exps[p] > 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

pub(crate) type Terms = Vec<(Monomial, ExactScalar)>;

pub(crate) fn accumulate(acc: &mut HashMap<Monomial, ExactScalar>, m: Monomial, c: ExactScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A Lie algebra with a total order on its basis.
pub struct PbwContext {
    alg: Arc<LieAlgebra>,
    order: Vec<usize>,
    pos: Vec<usize>,
    /// Bracket table in position coordinates.
    brk: Vec<Vec<(usize, ExactScalar)>>,
    cap: usize,
    memo: RwLock<HashMap<(u16, Monomial), Arc<Terms>>>,
}

impl fmt::Debug for PbwContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.order.iter().map(|&a| self.alg.label(a)).collect();
        write!(f, "PbwContext({}, [{}])", self.alg.name(), labels.join(", "))
    }
}

impl PbwContext {
    pub fn new(alg: &Arc<LieAlgebra>, order: Vec<usize>) -> Result<Arc<Self>> {
        Self::with_degree_cap(alg, order, default_degree_cap())
    }

    /// Context using the algebra's own basis order.
    pub fn standard(alg: &Arc<LieAlgebra>) -> Arc<Self> {
        Self::new(alg, (0..alg.dim()).collect()).expect("identity order is valid")
    }

    pub fn with_degree_cap(alg: &Arc<LieAlgebra>, order: Vec<usize>, cap: usize) -> Result<Arc<Self>> {
        let dim = alg.dim();
        if dim > u16::MAX as usize {
            return Err(Error::InvalidArgument("algebra too large".into()));
        }
        let mut pos = vec![usize::MAX; dim];
        for (p, &a) in order.iter().enumerate() {
            if a >= dim || pos[a] != usize::MAX {
                return Err(Error::InvalidArgument("order is not a permutation of the basis".into()));
            }
            pos[a] = p;
        }
        if order.len() != dim {
            return Err(Error::InvalidArgument("order is not a permutation of the basis".into()));
        }
        let cap = cap.min(u8::MAX as usize);
        let mut brk = vec![Vec::new(); dim * dim];
        for p in 0..dim {
            for q in 0..dim {
                brk[p * dim + q] = alg
                    .bracket_basis(order[p], order[q])
                    .iter()
                    .map(|(c, v)| (pos[*c], v.clone()))
                    .collect();
            }
        }
        Ok(Arc::new(PbwContext {
            alg: alg.clone(),
            order,
            pos,
            brk,
            cap,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// Order position of a basis index.
    pub fn position(&self, basis: usize) -> usize {
        self.pos[basis]
    }

    pub fn degree_cap(&self) -> usize {
        self.cap
    }

    pub(crate) fn bracket_pos(&self, p: usize, q: usize) -> &[(usize, ExactScalar)] {
        &self.brk[p * self.dim() + q]
    }

    pub fn label_at(&self, p: usize) -> &str {
        self.alg.label(self.order[p])
    }

    pub fn one(self: &Arc<Self>) -> UeaElement {
        self.scalar(ExactScalar::one())
    }

    pub fn zero(self: &Arc<Self>) -> UeaElement {
        UeaElement {
            ctx: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(self: &Arc<Self>, c: ExactScalar) -> UeaElement {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(Monomial::one(self.dim()), c);
        }
        e
    }

    /// The basis element with index `basis` (not position).
    pub fn generator(self: &Arc<Self>, basis: usize) -> UeaElement {
        let mut e = self.zero();
        e.terms
            .insert(Monomial::one(self.dim()).bump(self.pos[basis], 1), ExactScalar::one());
        e
    }

    pub fn generator_by_label(self: &Arc<Self>, label: &str) -> Result<UeaElement> {
        let a = self
            .alg
            .index_of(label)
            .ok_or_else(|| Error::InvalidArgument(format!("no basis element labelled {label}")))?;
        Ok(self.generator(a))
    }

    pub fn from_lie(self: &Arc<Self>, x: &LieElement) -> Result<UeaElement> {
        if !Arc::ptr_eq(x.algebra(), &self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut e = self.zero();
        for (a, c) in x.coords() {
            e.terms.insert(Monomial::one(self.dim()).bump(self.pos[*a], 1), c.clone());
        }
        Ok(e)
    }

    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> UeaElement {
        let mut acc = HashMap::new();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        UeaElement {
            ctx: self.clone(),
            terms: acc.into_iter().collect(),
        }
    }

    /// Normal form of `x_p · m` (positions), memoized.
    pub(crate) fn lmul(&self, p: usize, m: &Monomial) -> Arc<Terms> {
        let key = (p as u16, m.clone());
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let result = Arc::new(self.lmul_uncached(p, m));
        self.memo.write().expect("memo lock").insert(key, result.clone());
        result
    }

    fn lmul_uncached(&self, p: usize, m: &Monomial) -> Terms {
        let f = match m.first() {
            Some(f) if f < p => f,
            _ => return vec![(m.bump(p, 1), ExactScalar::one())],
        };
        // x_p x_f m' = x_f (x_p m') + [x_p, x_f] m'
        let rest = m.bump(f, -1);
        let mut acc = HashMap::new();
        for (n, c) in self.lmul(p, &rest).iter() {
            for (k, d) in self.lmul(f, n).iter() {
                accumulate(&mut acc, k.clone(), c * d);
            }
        }
        for (s, c) in self.bracket_pos(p, f) {
            for (k, d) in self.lmul(*s, &rest).iter() {
                accumulate(&mut acc, k.clone(), c * d);
            }
        }
        acc.into_iter().collect()
    }

    /// Normal form of the monomial product `a · b`.
    pub(crate) fn mul_mono(&self, a: &Monomial, b: &Monomial) -> Terms {
        let mut cur: HashMap<Monomial, ExactScalar> = HashMap::from([(b.clone(), ExactScalar::one())]);
        for p in a.word().into_iter().rev() {
            let mut next = HashMap::new();
            for (m, c) in cur {
                for (k, d) in self.lmul(p, &m).iter() {
                    accumulate(&mut next, k.clone(), &c * d);
                }
            }
            cur = next;
        }
        cur.into_iter().collect()
    }

    /// λ(x_1, …, x_m): the average over all orderings of the product.
    pub fn symmetrize(self: &Arc<Self>, factors: &[LieElement]) -> Result<UeaElement> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("symmetrization of an empty multiset".into()));
        }
        let gens: Vec<UeaElement> = factors.iter().map(|x| self.from_lie(x)).collect::<Result<_>>()?;
        let m = gens.len();
        let mut acc = self.zero();
        let mut count = 0i64;
        for perm in (0..m).permutations(m) {
            let mut t = self.one();
            for &i in &perm {
                t = t.mul(&gens[i])?;
            }
            acc = acc.add(&t);
            count += 1;
        }
        Ok(acc.scale(&ExactScalar::ratio(1, count)))
    }

    /// λ on a multiset of basis indices.
    pub fn symmetrize_basis(self: &Arc<Self>, factors: &[usize]) -> Result<UeaElement> {
        let xs: Vec<LieElement> = factors.iter().map(|&a| LieElement::basis(&self.alg, a)).collect();
        self.symmetrize(&xs)
    }

    /// Number of memoized straightening entries.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }
}

/// Element of U(g) in the normal form of its context.
#[derive(Clone)]
pub struct UeaElement {
    ctx: Arc<PbwContext>,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl UeaElement {
    pub fn context(&self) -> &Arc<PbwContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The scalar if this element is a constant.
    pub fn as_scalar(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Sum; panics if the contexts differ.
    pub fn add(&self, o: &Self) -> Self {
        self.same(o).expect("sum of elements from different PBW contexts");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            let e = out.terms.entry(m.clone()).or_default();
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ExactScalar::int(-1))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return self.ctx.zero();
        }
        UeaElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let degree = self.degree() + o.degree();
        if degree > self.ctx.cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.ctx.cap,
            });
        }
        let mut acc = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1 * c2;
                for (k, d) in self.ctx.mul_mono(m1, m2) {
                    accumulate(&mut acc, k, &c * &d);
                }
            }
        }
        Ok(UeaElement {
            ctx: self.ctx.clone(),
            terms: acc.into_iter().collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = self.ctx.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self·o − o·self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(o)?.sub(&o.mul(self)?))
    }

    /// ad(x)(self) = x·self − self·x.
    pub fn ad(&self, x: &LieElement) -> Result<Self> {
        let xe = self.ctx.from_lie(x)?;
        xe.commutator(self)
    }

    /// Same as [`Self::ad`] for a basis index.
    pub fn ad_basis(&self, a: usize) -> Result<Self> {
        self.ctx.generator(a).commutator(self)
    }

    /// First basis element whose adjoint action does not vanish.
    pub fn central_witness(&self) -> Result<Option<usize>> {
        for a in 0..self.ctx.dim() {
            if !self.ad_basis(a)?.is_zero() {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    pub fn is_central(&self) -> Result<bool> {
        Ok(self.central_witness()?.is_none())
    }

    /// The same element of U(g) in normal form for another order.
    pub fn reorder(&self, ctx: &Arc<PbwContext>) -> Result<Self> {
        if !Arc::ptr_eq(ctx.algebra(), self.ctx.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = ctx.zero();
        for (m, c) in &self.terms {
            let mut t = ctx.scalar(c.clone());
            for p in m.word() {
                t = t.mul(&ctx.generator(self.ctx.order[p]))?;
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ExactScalar) -> Result<ExactScalar>) -> Result<Self> {
        let mut out = self.ctx.zero();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        render_mono(&self.ctx, m)
    }
}

pub(crate) fn render_mono(ctx: &PbwContext, m: &Monomial) -> String {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(p, &e)| {
            if e == 1 {
                ctx.label_at(p).to_string()
            } else {
                format!("{}^{}", ctx.label_at(p), e)
            }
        })
        .join("*")
}

/// Highest degree first; within a degree, monomials heavier in earlier
/// order positions first.
pub(crate) fn render_terms<'a>(ctx: &PbwContext, terms: impl Iterator<Item = (&'a Monomial, &'a ExactScalar)>) -> String {
    let mut v: Vec<_> = terms.collect();
    if v.is_empty() {
        return "0".into();
    }
    v.sort_by(|a, b| b.0.cmp(a.0));
    let mut out = String::new();
    for (i, (m, c)) in v.into_iter().enumerate() {
        push_term(&mut out, i == 0, c, &render_mono(ctx, m));
    }
    out
}

impl PartialEq for UeaElement {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &o.ctx) && self.terms == o.terms
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.ctx, self.terms.iter()))
    }
}

impl fmt::Debug for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests;
