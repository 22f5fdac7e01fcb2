//! Character-induced modules U(g) ⊗_{U(q)} C_χ.

mod scan;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::lie::{build_jacobi, build_sp, LieElement};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;
use crate::uea::{accumulate, render_terms, Monomial, PbwContext, Terms, UeaElement};

pub use scan::{
    cofactor_relation_check, delta_eigencheck, raising_vectors, recovery_scan, symbolic_obstructions,
    CofactorReport, DeltaEntry, DeltaReport, Obstruction, ScanRow,
};

#[derive(Debug, Clone, PartialEq)]
pub enum ModuleKind {
    Siegel { n: usize },
    Jacobi { n: usize, j: usize, index: Matrix },
    Generic,
}

pub struct CharacterInducedModule {
    ctx: Arc<PbwContext>,
    q_basis: Vec<usize>,
    complement: Vec<usize>,
    in_q: Vec<bool>,
    chi: Vec<ExactScalar>,
    kind: ModuleKind,
    weight: Option<ExactScalar>,
    memo: RwLock<HashMap<(u16, Monomial), Arc<Terms>>>,
}

impl fmt::Debug for CharacterInducedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterInducedModule({:?}, {:?})", self.ctx.algebra().name(), self.kind)
    }
}

impl CharacterInducedModule {
    /// Validates closure of q, the character condition and the order.
    pub fn build(
        ctx: &Arc<PbwContext>,
        q_basis: &[usize],
        chi: &BTreeMap<usize, ExactScalar>,
        kind: ModuleKind,
    ) -> Result<Arc<Self>> {
        let alg = ctx.algebra();
        let dim = alg.dim();
        let mut in_q_basis = vec![false; dim];
        for &a in q_basis {
            if a >= dim {
                return Err(Error::InvalidArgument("q index out of range".into()));
            }
            in_q_basis[a] = true;
        }
        for (&a, _) in chi.iter() {
            if a >= dim || !in_q_basis[a] {
                return Err(Error::InvalidArgument(format!("chi given outside q at index {a}")));
            }
        }
        let chi_of = |a: usize| chi.get(&a).cloned().unwrap_or_default();
        for &a in q_basis {
            for &b in q_basis {
                let br = alg.bracket_basis(a, b);
                if br.iter().any(|(c, _)| !in_q_basis[*c]) {
                    return Err(Error::SubalgebraNotClosed(alg.label(a).into(), alg.label(b).into()));
                }
                let v: ExactScalar = br.iter().map(|(c, s)| s * &chi_of(*c)).sum();
                if !v.is_zero() {
                    return Err(Error::NotCharacter(alg.label(a).into(), alg.label(b).into(), v.to_string()));
                }
            }
        }
        let complement: Vec<usize> = (0..dim).filter(|&a| !in_q_basis[a]).collect();
        let max_c = complement.iter().map(|&a| ctx.position(a)).max();
        if let Some(mc) = max_c {
            if let Some(&bad) = q_basis.iter().find(|&&a| ctx.position(a) < mc) {
                return Err(Error::IncompatibleOrder(alg.label(bad).into()));
            }
        }
        let mut in_q = vec![false; dim];
        let mut chi_pos = vec![ExactScalar::zero(); dim];
        for &a in q_basis {
            in_q[ctx.position(a)] = true;
            chi_pos[ctx.position(a)] = chi_of(a);
        }
        let mut q_sorted = q_basis.to_vec();
        q_sorted.sort_unstable();
        q_sorted.dedup();
        Ok(Arc::new(CharacterInducedModule {
            ctx: ctx.clone(),
            q_basis: q_sorted,
            complement,
            in_q,
            chi: chi_pos,
            kind,
            weight: None,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    pub fn context(&self) -> &Arc<PbwContext> {
        &self.ctx
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn q_basis(&self) -> &[usize] {
        &self.q_basis
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// The χ-weight the module was built with, if any.
    pub fn weight(&self) -> Option<&ExactScalar> {
        self.weight.as_ref()
    }

    pub fn chi(&self, basis: usize) -> ExactScalar {
        self.chi[self.ctx.position(basis)].clone()
    }

    pub fn generator(self: &Arc<Self>) -> ModuleVector {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(self.ctx.dim()), ExactScalar::one());
        ModuleVector {
            module: self.clone(),
            terms,
        }
    }

    pub fn zero(self: &Arc<Self>) -> ModuleVector {
        ModuleVector {
            module: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// x_p · m for a complement monomial `m` (positions), memoized.
    fn act_gen(&self, p: usize, m: &Monomial) -> Arc<Terms> {
        let key = (p as u16, m.clone());
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let result = Arc::new(self.act_gen_uncached(p, m));
        self.memo.write().expect("memo lock").insert(key, result.clone());
        result
    }

    fn act_gen_uncached(&self, p: usize, m: &Monomial) -> Terms {
        let Some(f) = m.first() else {
            return if self.in_q[p] {
                if self.chi[p].is_zero() {
                    Vec::new()
                } else {
                    vec![(m.clone(), self.chi[p].clone())]
                }
            } else {
                vec![(m.bump(p, 1), ExactScalar::one())]
            };
        };
        if !self.in_q[p] && p <= f {
            return vec![(m.bump(p, 1), ExactScalar::one())];
        }
        // x_p x_f m' = x_f (x_p m') + [x_p, x_f] m'
        let rest = m.bump(f, -1);
        let mut acc = HashMap::new();
        for (n, c) in self.act_gen(p, &rest).iter() {
            for (k, d) in self.act_gen(f, n).iter() {
                accumulate(&mut acc, k.clone(), c * d);
            }
        }
        for (s, c) in self.ctx.bracket_pos(p, f) {
            for (k, d) in self.act_gen(*s, &rest).iter() {
                accumulate(&mut acc, k.clone(), c * d);
            }
        }
        acc.into_iter().collect()
    }

    fn act_positions(&self, word: &[usize], v: &BTreeMap<Monomial, ExactScalar>) -> HashMap<Monomial, ExactScalar> {
        let mut cur: HashMap<Monomial, ExactScalar> = v.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        for &p in word.iter().rev() {
            let mut next = HashMap::new();
            for (m, c) in cur {
                for (k, d) in self.act_gen(p, &m).iter() {
                    accumulate(&mut next, k.clone(), &c * d);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }
}

/// Siegel module over sp(2n): q = Levi ∪ L, χ = k·Tr on the Levi, 0 on L.
pub fn siegel_module(n: usize, k: ExactScalar) -> Result<Arc<CharacterInducedModule>> {
    let ctx = PbwContext::standard(&build_sp(n)?);
    siegel_module_in(&ctx, k)
}

/// Siegel module over an existing sp(2n) context.
pub fn siegel_module_in(ctx: &Arc<PbwContext>, k: ExactScalar) -> Result<Arc<CharacterInducedModule>> {
    let alg = ctx.algebra().clone();
    let n = match alg.kind() {
        crate::lie::AlgebraKind::Symplectic { n } => n,
        _ => return Err(Error::InvalidArgument("Siegel module needs sp(2n)".into())),
    };
    let levi = alg.subspace("levi")?.to_vec();
    let ell = alg.subspace("L")?.to_vec();
    let chi: BTreeMap<usize, ExactScalar> = levi.iter().map(|&a| (a, &k * &alg.levi_trace(a))).collect();
    let q: Vec<usize> = levi.iter().chain(&ell).copied().collect();
    let m = CharacterInducedModule::build(ctx, &q, &chi, ModuleKind::Siegel { n })?;
    Ok(with_weight(m, k))
}

fn with_weight(m: Arc<CharacterInducedModule>, k: ExactScalar) -> Arc<CharacterInducedModule> {
    let mut inner = Arc::try_unwrap(m).expect("fresh module");
    inner.weight = Some(k);
    Arc::new(inner)
}

/// Checks that `index` is a symmetric invertible j×j matrix.
pub fn validate_index(index: &Matrix, j: usize) -> Result<()> {
    if index.rows() != j || index.cols() != j {
        return Err(Error::InvalidArgument(format!(
            "index matrix is {}x{}, expected {j}x{j}",
            index.rows(),
            index.cols()
        )));
    }
    if !index.is_symmetric() {
        return Err(Error::IndexNotSymmetric);
    }
    if index.det().is_zero() {
        return Err(Error::SingularIndex);
    }
    Ok(())
}

/// Jacobi module over g^(n,j): q = Levi ∪ L ∪ l_heis ∪ z with
/// χ(𝐙_il) = 2π̂·ℳ_il.
pub fn jacobi_module(n: usize, j: usize, index: &Matrix, k: ExactScalar) -> Result<Arc<CharacterInducedModule>> {
    validate_index(index, j)?;
    let ctx = PbwContext::standard(&build_jacobi(n, j)?);
    jacobi_module_in(&ctx, index, k)
}

pub fn jacobi_module_in(ctx: &Arc<PbwContext>, index: &Matrix, k: ExactScalar) -> Result<Arc<CharacterInducedModule>> {
    let alg = ctx.algebra().clone();
    let (n, j) = match alg.kind() {
        crate::lie::AlgebraKind::Jacobi { n, j } => (n, j),
        _ => return Err(Error::InvalidArgument("Jacobi module needs g^(n,j)".into())),
    };
    validate_index(index, j)?;
    let heis = alg.heis_layout().expect("jacobi layout").clone();
    let mut chi: BTreeMap<usize, ExactScalar> = BTreeMap::new();
    for &a in alg.subspace("levi")? {
        chi.insert(a, &k * &alg.levi_trace(a));
    }
    let two_pi = ExactScalar::int(2) * ExactScalar::pi_hat();
    for i in 0..j {
        for l in i..j {
            chi.insert(heis.z[i][l], &two_pi * &index[(i, l)]);
        }
    }
    let mut q: Vec<usize> = Vec::new();
    for s in ["levi", "L", "l_heis", "z"] {
        q.extend_from_slice(alg.subspace(s)?);
    }
    let m = CharacterInducedModule::build(
        ctx,
        &q,
        &chi,
        ModuleKind::Jacobi {
            n,
            j,
            index: index.clone(),
        },
    )?;
    Ok(with_weight(m, k))
}

/// Element of a character-induced module, in the complement-monomial basis.
#[derive(Clone)]
pub struct ModuleVector {
    module: Arc<CharacterInducedModule>,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl ModuleVector {
    pub fn module(&self) -> &Arc<CharacterInducedModule> {
        &self.module
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.module, &o.module) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn from_map(module: &Arc<CharacterInducedModule>, acc: HashMap<Monomial, ExactScalar>) -> Self {
        ModuleVector {
            module: module.clone(),
            terms: acc.into_iter().collect(),
        }
    }

    /// Panics if the modules differ.
    pub fn add(&self, o: &Self) -> Self {
        self.same(o).expect("sum of vectors from different modules");
        let mut acc: HashMap<Monomial, ExactScalar> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        for (m, c) in &o.terms {
            accumulate(&mut acc, m.clone(), c.clone());
        }
        Self::from_map(&self.module, acc)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&ExactScalar::int(-1)))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return self.module.zero();
        }
        ModuleVector {
            module: self.module.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// u·v for u in the module's PBW context.
    pub fn act(&self, u: &UeaElement) -> Result<Self> {
        if !Arc::ptr_eq(u.context(), &self.module.ctx) {
            return Err(Error::ContextMismatch);
        }
        let degree = u.degree() + self.degree();
        if degree > self.module.ctx.degree_cap() {
            return Err(Error::DegreeCap {
                degree,
                cap: self.module.ctx.degree_cap(),
            });
        }
        let mut acc = HashMap::new();
        for (m, c) in u.terms() {
            for (k, d) in self.module.act_positions(&m.word(), &self.terms) {
                accumulate(&mut acc, k, c * &d);
            }
        }
        Ok(Self::from_map(&self.module, acc))
    }

    /// x·v for a basis index `a`.
    pub fn act_basis(&self, a: usize) -> Self {
        let p = self.module.ctx.position(a);
        Self::from_map(&self.module, self.module.act_positions(&[p], &self.terms))
    }

    pub fn act_lie(&self, x: &LieElement) -> Result<Self> {
        if !Arc::ptr_eq(x.algebra(), self.module.ctx.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.module.zero();
        for (a, c) in x.coords() {
            out = out.add(&self.act_basis(*a).scale(c));
        }
        Ok(out)
    }

    /// Ratio `self = c·o` if it exists (`o` nonzero).
    pub fn ratio_to(&self, o: &Self) -> Option<ExactScalar> {
        let (m, c) = o.terms.iter().next()?;
        let r = self.coeff(m).try_div(c).ok()?;
        (self.sub(&o.scale(&r)).is_zero()).then_some(r)
    }

    /// (semispherical, k′) with act(ℓ, v) = k′·Tr(ℓ)·v on every Levi basis
    /// element; the zero vector is not semispherical.
    pub fn weight_check(&self) -> (bool, Option<ExactScalar>) {
        if self.is_zero() {
            return (false, None);
        }
        let alg = self.module.ctx.algebra();
        let Ok(levi) = alg.subspace("levi") else {
            return (false, None);
        };
        let mut weight: Option<ExactScalar> = None;
        for &l in levi {
            let w = self.act_basis(l);
            let tr = alg.levi_trace(l);
            if tr.is_zero() {
                if !w.is_zero() {
                    return (false, None);
                }
                continue;
            }
            let Some(r) = w.ratio_to(self) else {
                return (false, None);
            };
            let kp = r.try_div(&tr).expect("nonzero trace");
            match &weight {
                None => weight = Some(kp),
                Some(k0) if *k0 == kp => {}
                Some(_) => return (false, None),
            }
        }
        (weight.is_some(), weight)
    }

    pub fn is_holomorphic_siegel(&self) -> bool {
        let alg = self.module.ctx.algebra();
        alg.subspace("L")
            .map(|ell| ell.iter().all(|&y| self.act_basis(y).is_zero()))
            .unwrap_or(false)
    }

    pub fn is_holomorphic_jacobi(&self) -> bool {
        let alg = self.module.ctx.algebra();
        self.is_holomorphic_siegel()
            && alg
                .subspace("l_heis")
                .map(|v| v.iter().all(|&a| self.act_basis(a).is_zero()))
                .unwrap_or(false)
    }

    /// Holomorphicity for the module's kind.
    pub fn is_holomorphic(&self) -> bool {
        match self.module.kind {
            ModuleKind::Jacobi { .. } => self.is_holomorphic_jacobi(),
            _ => self.is_holomorphic_siegel(),
        }
    }
}

impl PartialEq for ModuleVector {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.module, &o.module) && self.terms == o.terms
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        if let Some(c) = self.terms.get(&Monomial::one(self.module.ctx.dim())).filter(|_| self.terms.len() == 1) {
            return if c.is_one() {
                f.write_str("e")
            } else if c.is_compound() {
                write!(f, "({c})*e")
            } else {
                write!(f, "{c}*e")
            };
        }
        write!(f, "({})*e", render_terms(&self.module.ctx, self.terms.iter()))
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
