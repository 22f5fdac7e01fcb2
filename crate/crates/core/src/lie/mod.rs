//! Lie algebras given by structure constants, optionally realized by
//! matrices; constructors for sp(2N) and the Jacobi algebra g^(n,j).

mod build;
mod roots;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::push_term;
use crate::scalar::ExactScalar;

pub use build::{build_jacobi, build_sp, HeisLayout, SpLayout};
pub use roots::{PositiveRoot, RootDatum, RootLength};

/// Sparse vector of basis coefficients.
pub type Coords = Vec<(usize, ExactScalar)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AlgebraKind {
    Symplectic { n: usize },
    Jacobi { n: usize, j: usize },
    Generic,
}

/// Matrix realization plus a coordinate extractor: `pivots` are matrix
/// positions whose values determine an element, `solve` maps those
/// values back to coordinates.
#[derive(Clone)]
pub struct Realization {
    size: usize,
    matrices: Vec<Matrix>,
    pivots: Vec<(usize, usize)>,
    solve: Matrix,
}

impl Realization {
    fn new(matrices: Vec<Matrix>) -> Result<Self> {
        let dim = matrices.len();
        let size = matrices.first().map_or(0, Matrix::rows);
        let positions: Vec<(usize, usize)> =
            (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).collect();
        let a = Matrix::from_fn(dim, positions.len(), |r, c| {
            let (i, j) = positions[c];
            matrices[r][(i, j)].clone()
        });
        let (_, piv) = a.rref();
        if piv.len() != dim {
            return Err(Error::Invariant("basis matrices are linearly dependent".into()));
        }
        let pivots: Vec<(usize, usize)> = piv.iter().map(|&c| positions[c]).collect();
        // sub[p][a] = value of basis matrix a at pivot p
        let sub = Matrix::from_fn(dim, dim, |p, b| matrices[b][pivots[p]].clone());
        let solve = sub.inverse()?;
        Ok(Realization {
            size,
            matrices,
            pivots,
            solve,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrix(&self, a: usize) -> &Matrix {
        &self.matrices[a]
    }

    /// Coordinates of `m`, or `None` when `m` is outside the span.
    pub fn coords(&self, m: &Matrix) -> Option<Coords> {
        let vals: Vec<ExactScalar> = self.pivots.iter().map(|&p| m[p].clone()).collect();
        let mut out = Vec::new();
        for a in 0..self.matrices.len() {
            let c: ExactScalar = (0..vals.len())
                .filter(|&p| !vals[p].is_zero() && !self.solve[(a, p)].is_zero())
                .map(|p| &self.solve[(a, p)] * &vals[p])
                .sum();
            if !c.is_zero() {
                out.push((a, c));
            }
        }
        let mut back = Matrix::zeros(self.size, self.size);
        for (a, c) in &out {
            back = back.add(&self.matrices[*a].scale(c));
        }
        (back == *m).then_some(out)
    }
}

pub struct LieAlgebra {
    name: String,
    kind: AlgebraKind,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    table: Vec<Coords>,
    realization: Option<Realization>,
    subspaces: BTreeMap<String, Vec<usize>>,
    roots: Option<RootDatum>,
    sp_layout: Option<SpLayout>,
    heis_layout: Option<HeisLayout>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl LieAlgebra {
    fn assemble(name: String, kind: AlgebraKind, labels: Vec<String>, table: Vec<Coords>) -> Self {
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        LieAlgebra {
            name,
            kind,
            labels,
            label_index,
            table,
            realization: None,
            subspaces: BTreeMap::new(),
            roots: None,
            sp_layout: None,
            heis_layout: None,
        }
    }

    /// Structure constants from commutators of the given matrices.
    pub fn from_matrices(name: &str, kind: AlgebraKind, labels: Vec<String>, matrices: Vec<Matrix>) -> Result<Self> {
        assert_eq!(labels.len(), matrices.len());
        let real = Realization::new(matrices)?;
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in a + 1..dim {
                let c = real.matrices[a].commutator(&real.matrices[b]);
                let coords = real
                    .coords(&c)
                    .ok_or_else(|| Error::NotClosed(labels[a].clone(), labels[b].clone()))?;
                table[b * dim + a] = coords.iter().map(|(i, v)| (*i, -v)).collect();
                table[a * dim + b] = coords;
            }
        }
        let mut alg = Self::assemble(name.to_string(), kind, labels, table);
        alg.realization = Some(real);
        Ok(alg)
    }

    /// Validates antisymmetry and the Jacobi identity.
    pub fn from_structure_constants(name: &str, labels: Vec<String>, brackets: &[(usize, usize, Coords)]) -> Result<Self> {
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (a, b, coords) in brackets {
            if *a >= dim || *b >= dim || coords.iter().any(|(i, _)| *i >= dim) {
                return Err(Error::InvalidArgument("bracket index out of range".into()));
            }
            let coords: Coords = coords.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
            if a == b && !coords.is_empty() {
                return Err(Error::InvalidArgument(format!("[{0}, {0}] must vanish", labels[*a])));
            }
            table[b * dim + a] = coords.iter().map(|(i, v)| (*i, -v)).collect();
            table[a * dim + b] = coords;
        }
        let alg = Self::assemble(name.to_string(), AlgebraKind::Generic, labels, table);
        if let Some((a, b, c)) = alg.jacobi_violation() {
            return Err(Error::InvalidArgument(format!(
                "Jacobi identity fails on ({}, {}, {})",
                alg.labels[a], alg.labels[b], alg.labels[c]
            )));
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn roots(&self) -> Option<&RootDatum> {
        self.roots.as_ref()
    }

    pub fn sp_layout(&self) -> Option<&SpLayout> {
        self.sp_layout.as_ref()
    }

    pub fn heis_layout(&self) -> Option<&HeisLayout> {
        self.heis_layout.as_ref()
    }

    pub fn subspaces(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.subspaces
    }

    pub fn subspace(&self, name: &str) -> Result<&[usize]> {
        self.subspaces
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown subspace {name:?}")))
    }

    /// Bracket of two basis elements.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &Coords {
        &self.table[a * self.dim() + b]
    }

    /// Bracket of coordinate vectors.
    pub fn bracket_coords(&self, x: &Coords, y: &Coords) -> Coords {
        let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let f = ca * cb;
                for (c, s) in self.bracket_basis(*a, *b) {
                    *acc.entry(*c).or_default() += &f * s;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if !self.jacobi_holds(a, b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_holds(&self, a: usize, b: usize, c: usize) -> bool {
        let e = |i: usize| vec![(i, ExactScalar::one())];
        let t1 = self.bracket_coords(self.bracket_basis(a, b), &e(c));
        let t2 = self.bracket_coords(self.bracket_basis(b, c), &e(a));
        let t3 = self.bracket_coords(self.bracket_basis(c, a), &e(b));
        let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (i, v) in t1.into_iter().chain(t2).chain(t3) {
            *acc.entry(i).or_default() += v;
        }
        acc.values().all(ExactScalar::is_zero)
    }

    /// True when the bracket table is antisymmetric on all pairs.
    pub fn is_antisymmetric(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let neg: Coords = self.bracket_basis(b, a).iter().map(|(i, v)| (*i, -v)).collect();
                *self.bracket_basis(a, b) == neg
            })
        })
    }

    /// True when every table entry equals the matrix commutator.
    pub fn realization_consistent(&self) -> bool {
        let Some(real) = &self.realization else {
            return true;
        };
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let c = real.matrix(a).commutator(real.matrix(b));
                let mut m = Matrix::zeros(real.size, real.size);
                for (i, v) in self.bracket_basis(a, b) {
                    m = m.add(&real.matrix(*i).scale(v));
                }
                m == c
            })
        })
    }

    /// Block size whose diagonal sum defines the Levi trace.
    pub fn trace_block(&self) -> Option<usize> {
        match self.kind {
            AlgebraKind::Symplectic { n } | AlgebraKind::Jacobi { n, .. } => Some(n),
            AlgebraKind::Generic => None,
        }
    }

    /// Levi trace of a basis element: sum of the first-block diagonal.
    pub fn levi_trace(&self, a: usize) -> ExactScalar {
        match (self.trace_block(), &self.realization) {
            (Some(k), Some(r)) => (0..k).map(|i| r.matrix(a)[(i, i)].clone()).sum(),
            _ => ExactScalar::zero(),
        }
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        let dim = self.dim();
        let mut brackets = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let t = self.bracket_basis(a, b);
                if !t.is_empty() {
                    brackets.push(BracketEntry {
                        a,
                        b,
                        terms: t.clone(),
                    });
                }
            }
        }
        AlgebraDoc {
            name: self.name.clone(),
            kind: self.kind,
            dim,
            labels: self.labels.clone(),
            brackets,
            subspaces: self.subspaces.clone(),
        }
    }

    /// Deterministic JSON: labels, nonzero brackets for a < b, subspaces.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    /// Rebuilds a structure-constant algebra (no realization) from JSON.
    pub fn from_json(s: &str) -> Result<Arc<Self>> {
        let doc: AlgebraDoc =
            serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("algebra JSON: {e}")))?;
        if doc.labels.len() != doc.dim {
            return Err(Error::InvalidArgument("dim does not match labels".into()));
        }
        let br: Vec<(usize, usize, Coords)> = doc.brackets.into_iter().map(|e| (e.a, e.b, e.terms)).collect();
        let mut alg = Self::from_structure_constants(&doc.name, doc.labels, &br)?;
        alg.kind = doc.kind;
        alg.subspaces = doc.subspaces;
        Ok(Arc::new(alg))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub a: usize,
    pub b: usize,
    pub terms: Coords,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub kind: AlgebraKind,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub subspaces: BTreeMap<String, Vec<usize>>,
}

/// Element of a specific algebra.
#[derive(Clone)]
pub struct LieElement {
    alg: Arc<LieAlgebra>,
    coeffs: Coords,
}

impl LieElement {
    pub fn zero(alg: &Arc<LieAlgebra>) -> Self {
        LieElement {
            alg: alg.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn basis(alg: &Arc<LieAlgebra>, a: usize) -> Self {
        assert!(a < alg.dim(), "basis index out of range");
        LieElement {
            alg: alg.clone(),
            coeffs: vec![(a, ExactScalar::one())],
        }
    }

    pub fn from_coords(alg: &Arc<LieAlgebra>, coeffs: Coords) -> Self {
        let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (i, c) in coeffs {
            *acc.entry(i).or_default() += c;
        }
        LieElement {
            alg: alg.clone(),
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn by_label(alg: &Arc<LieAlgebra>, label: &str) -> Result<Self> {
        alg.index_of(label)
            .map(|a| Self::basis(alg, a))
            .ok_or_else(|| Error::InvalidArgument(format!("no basis element labelled {label}")))
    }

    /// Element realized by `m`, if `m` lies in the algebra.
    pub fn from_matrix(alg: &Arc<LieAlgebra>, m: &Matrix) -> Result<Self> {
        let real = alg
            .realization()
            .ok_or_else(|| Error::InvalidArgument("algebra has no matrix realization".into()))?;
        let c = real
            .coords(m)
            .ok_or_else(|| Error::InvalidArgument(format!("matrix {m:?} is not in {}", alg.name())))?;
        Ok(Self::from_coords(alg, c))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &Coords {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_matrix(&self) -> Option<Matrix> {
        let real = self.alg.realization()?;
        let mut m = Matrix::zeros(real.size, real.size);
        for (a, c) in &self.coeffs {
            m = m.add(&real.matrix(*a).scale(c));
        }
        Some(m)
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &o.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn bracket(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(LieElement {
            alg: self.alg.clone(),
            coeffs: self.alg.bracket_coords(&self.coeffs, &o.coeffs),
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_coords(&self.alg, self.coeffs.iter().chain(&o.coeffs).cloned().collect()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::from_coords(&self.alg, self.coeffs.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&ExactScalar::int(-1)))
    }

    /// Levi trace, extended linearly.
    pub fn levi_trace(&self) -> ExactScalar {
        self.coeffs.iter().map(|(a, c)| c * &self.alg.levi_trace(*a)).sum()
    }
}

impl PartialEq for LieElement {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg) && self.coeffs == o.coeffs
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (k, (a, c)) in self.coeffs.iter().enumerate() {
            push_term(&mut s, k == 0, c, self.alg.label(*a));
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests;
