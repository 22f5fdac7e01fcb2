//! Formal functions in (τ, z, τ′) and the constant-coefficient matrix
//! differential operators acting on them: the heat operator L_ℳ, the
//! (n+j)-variable determinant operator 𝔻 and the extension ext_ℳ.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hw::validate_index;
use crate::matrix::Matrix;
use crate::ring::{CommPoly, Ring};
use crate::scalar::ExactScalar;

/// Variable layout: τ_ab (a ≤ b < n), then z_rs (r < j, s < n), then
/// τ′_cd (c ≤ d < j). Operators use the same indices for ∂/∂(variable).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormalVars {
    pub n: usize,
    pub j: usize,
}

impl FormalVars {
    pub fn new(n: usize, j: usize) -> Self {
        FormalVars { n, j }
    }

    fn sym_count(k: usize) -> usize {
        k * (k + 1) / 2
    }

    fn sym_index(k: usize, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        a * k - a * (a + 1) / 2 + b
    }

    pub fn nvars(&self) -> usize {
        Self::sym_count(self.n) + self.j * self.n + Self::sym_count(self.j)
    }

    /// τ_ab; symmetric in (a, b).
    pub fn tau(&self, a: usize, b: usize) -> usize {
        Self::sym_index(self.n, a, b)
    }

    pub fn z(&self, r: usize, s: usize) -> usize {
        Self::sym_count(self.n) + r * self.n + s
    }

    /// τ′_cd; symmetric in (c, d).
    pub fn tau_p(&self, c: usize, d: usize) -> usize {
        Self::sym_count(self.n) + self.j * self.n + Self::sym_index(self.j, c, d)
    }

    /// (c, d) with c ≤ d when `v` is a τ′ variable.
    fn tau_p_coords(&self, v: usize) -> Option<(usize, usize)> {
        let base = Self::sym_count(self.n) + self.j * self.n;
        if v < base {
            return None;
        }
        (0..self.j)
            .flat_map(|c| (c..self.j).map(move |d| (c, d)))
            .find(|&(c, d)| self.tau_p(c, d) == v)
    }

    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.nvars());
        for a in 0..self.n {
            for b in a..self.n {
                out.push(format!("t{}{}", a + 1, b + 1));
            }
        }
        for r in 0..self.j {
            for s in 0..self.n {
                out.push(format!("z{}{}", r + 1, s + 1));
            }
        }
        for c in 0..self.j {
            for d in c..self.j {
                out.push(format!("tp{}{}", c + 1, d + 1));
            }
        }
        out
    }

    pub fn var(&self, v: usize) -> CommPoly {
        CommPoly::var(self.nvars(), v)
    }

    pub fn constant(&self, c: ExactScalar) -> CommPoly {
        CommPoly::constant(self.nvars(), c)
    }

    fn is_tau_p(&self, v: usize) -> bool {
        v >= Self::sym_count(self.n) + self.j * self.n
    }

    /// All monomials in τ and z of total degree ≤ `max_deg`.
    pub fn monomials(&self, max_deg: u16) -> Vec<CommPoly> {
        let free = Self::sym_count(self.n) + self.j * self.n;
        let mut exps = vec![vec![0u16; self.nvars()]];
        let mut frontier = exps.clone();
        for _ in 0..max_deg {
            let mut next = Vec::new();
            for e in &frontier {
                let last = e[..free].iter().rposition(|&x| x > 0).unwrap_or(0);
                for v in last..free {
                    let mut f = e.clone();
                    f[v] += 1;
                    next.push(f);
                }
            }
            exps.extend(next.iter().cloned());
            frontier = next;
        }
        exps.into_iter()
            .map(|e| {
                let mut p = CommPoly::new(self.nvars());
                p.add_term(e, ExactScalar::one());
                p
            })
            .collect()
    }
}

/// p(τ, z, τ′)·e^{π̂·Tr(ℳτ′)} when `exp_index` is set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormalFunction {
    vars: FormalVars,
    #[serde(serialize_with = "ser_poly")]
    poly: CommPoly,
    #[serde(skip)]
    exp_index: Option<Matrix>,
}

fn ser_poly<S: serde::Serializer>(p: &CommPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{p:?}"))
}

impl FormalFunction {
    pub fn new(vars: FormalVars, poly: CommPoly) -> Result<Self> {
        if poly.terms().any(|(e, _)| e.len() > vars.nvars()) {
            return Err(Error::InvalidArgument("polynomial has more variables than the layout".into()));
        }
        Ok(FormalFunction {
            poly: Ring::add(&CommPoly::new(vars.nvars()), &poly),
            vars,
            exp_index: None,
        })
    }

    pub fn vars(&self) -> FormalVars {
        self.vars
    }

    pub fn poly(&self) -> &CommPoly {
        &self.poly
    }

    pub fn exp_index(&self) -> Option<&Matrix> {
        self.exp_index.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn depends_on_tau_p(&self) -> bool {
        self.poly
            .terms()
            .any(|(e, _)| e.iter().enumerate().any(|(v, &k)| k > 0 && self.vars.is_tau_p(v)))
    }

    /// Image of ext_ℳ: exponential factor present and no τ′ in the polynomial.
    pub fn is_ext_type(&self) -> bool {
        self.exp_index.is_some() && !self.depends_on_tau_p()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        FormalFunction {
            poly: self.poly.scale(c),
            ..self.clone()
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.vars != o.vars || self.exp_index != o.exp_index {
            return Err(Error::InvalidArgument("formal functions live in different spaces".into()));
        }
        Ok(FormalFunction {
            poly: Ring::add(&self.poly, &o.poly),
            ..self.clone()
        })
    }

    /// Multiplication by a polynomial in the same variables.
    pub fn mul_poly(&self, p: &CommPoly) -> Self {
        FormalFunction {
            poly: Ring::mul(&self.poly, p),
            ..self.clone()
        }
    }

    /// Plain partial derivative in canonical coordinates.
    pub fn partial(&self, v: usize) -> Self {
        let mut poly = self.poly.derivative(v);
        if let (Some(m), Some((c, d))) = (&self.exp_index, self.vars.tau_p_coords(v)) {
            // Tr(ℳτ′) has coefficient (2 − δ)ℳ_cd on τ′_cd
            let k = if c == d { 1 } else { 2 };
            let w = ExactScalar::pi_hat() * m[(c, d)].clone() * ExactScalar::int(k);
            poly = Ring::add(&poly, &self.poly.scale(&w));
        }
        FormalFunction { poly, ..self.clone() }
    }

    /// Applies a constant-coefficient operator written as a polynomial in
    /// the ∂ symbols.
    pub fn apply(&self, op: &CommPoly) -> Self {
        let mut poly = CommPoly::new(self.vars.nvars());
        for (e, c) in op.terms() {
            let mut g = self.clone();
            'outer: for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    g = g.partial(v);
                    if g.is_zero() {
                        break 'outer;
                    }
                }
            }
            poly = Ring::add(&poly, &g.poly.scale(c));
        }
        FormalFunction { poly, ..self.clone() }
    }
}

impl fmt::Display for FormalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.poly.render(&self.vars.names());
        match &self.exp_index {
            None => f.write_str(&body),
            Some(_) if self.poly.len() > 1 => write!(f, "({body})*e^M"),
            Some(_) => write!(f, "{body}*e^M"),
        }
    }
}

/// Square matrix of commuting constant-coefficient operators, entries
/// stored as polynomials in the ∂ symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDifferentialOperator {
    pub vars: FormalVars,
    pub entries: Matrix<CommPoly>,
}

impl MatrixDifferentialOperator {
    /// The n×n matrix with entries (1+δ_rs)∂/∂τ_rs.
    pub fn d_tau(vars: FormalVars) -> Self {
        let entries = Matrix::from_fn(vars.n, vars.n, |r, s| {
            let w = if r == s { 2 } else { 1 };
            vars.var(vars.tau(r, s)).scale(&ExactScalar::int(w))
        });
        MatrixDifferentialOperator { vars, entries }
    }

    /// The j×n matrix with entries ∂/∂z_rs.
    pub fn d_z(vars: FormalVars) -> Matrix<CommPoly> {
        Matrix::from_fn(vars.j, vars.n, |r, s| vars.var(vars.z(r, s)))
    }

    /// (1+δ)∂ over the full symmetric (n+j)×(n+j) variable (τ, ᵀz; z, τ′).
    pub fn d_full(vars: FormalVars) -> Self {
        let (n, j) = (vars.n, vars.j);
        let entries = Matrix::from_fn(n + j, n + j, |r, s| {
            let v = match (r < n, s < n) {
                (true, true) => vars.tau(r, s),
                (true, false) => vars.z(s - n, r),
                (false, true) => vars.z(r - n, s),
                (false, false) => vars.tau_p(r - n, s - n),
            };
            let w = if r == s { 2 } else { 1 };
            vars.var(v).scale(&ExactScalar::int(w))
        });
        MatrixDifferentialOperator { vars, entries }
    }

    pub fn det(&self) -> CommPoly {
        Ring::add(&CommPoly::new(self.vars.nvars()), &self.entries.det())
    }

    pub fn apply_entry(&self, r: usize, s: usize, f: &FormalFunction) -> FormalFunction {
        f.apply(&self.entries[(r, s)])
    }
}

/// L_ℳ = det(2π̂|ℳ|·∂/∂τ − ᵀ(∂/∂z)·adj(ℳ)·∂/∂z) as a ∂-polynomial.
pub fn heat_operator(vars: FormalVars, index: &Matrix) -> Result<CommPoly> {
    if index.rows() != vars.j || index.cols() != vars.j {
        return Err(Error::InvalidArgument(format!("index matrix must be {0}x{0}", vars.j)));
    }
    if !index.is_symmetric() {
        return Err(Error::IndexNotSymmetric);
    }
    let det_m = index.det();
    let adj = index.adjugate().map(|c| vars.constant(c.clone()));
    let dz = MatrixDifferentialOperator::d_z(vars);
    let quad = dz.transpose().mul(&adj).mul(&dz);
    let lead = ExactScalar::int(2) * ExactScalar::pi_hat() * det_m;
    let dt = MatrixDifferentialOperator::d_tau(vars).entries.map(|p| p.scale(&lead));
    let op = MatrixDifferentialOperator {
        vars,
        entries: dt.sub(&quad),
    };
    Ok(op.det())
}

pub fn apply_heat(f: &FormalFunction, index: &Matrix) -> Result<FormalFunction> {
    Ok(f.apply(&heat_operator(f.vars, index)?))
}

/// 𝔻 = det of [`MatrixDifferentialOperator::d_full`].
pub fn big_d_operator(vars: FormalVars) -> CommPoly {
    MatrixDifferentialOperator::d_full(vars).det()
}

/// ext_ℳ f = f(τ, z)·e^ℳ(τ′).
pub fn ext(f: &FormalFunction, index: &Matrix) -> Result<FormalFunction> {
    if f.exp_index.is_some() || f.depends_on_tau_p() {
        return Err(Error::NotExtType);
    }
    if index.rows() != f.vars.j || index.cols() != f.vars.j {
        return Err(Error::InvalidArgument(format!("index matrix must be {0}x{0}", f.vars.j)));
    }
    if !index.is_symmetric() {
        return Err(Error::IndexNotSymmetric);
    }
    Ok(FormalFunction {
        exp_index: Some(index.clone()),
        ..f.clone()
    })
}

pub fn apply_big_d(f: &FormalFunction) -> Result<FormalFunction> {
    if !f.is_ext_type() {
        return Err(Error::NotExtType);
    }
    Ok(f.apply(&big_d_operator(f.vars)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchedForm {
    /// (2π̂)^{j−n}(detℳ)^{1−n}
    Reciprocal,
    /// (2π̂)^{n−j}(detℳ)^{n−1}
    Stated,
    /// The two forms coincide here.
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BolReport {
    pub n: usize,
    pub j: usize,
    pub l: u32,
    pub holds: bool,
    pub c: Option<ExactScalar>,
    pub stated: ExactScalar,
    pub reciprocal: ExactScalar,
    pub matched: MatchedForm,
    /// Test function whose l = 1 ratio fixed c.
    pub determined_by: Option<String>,
    /// Functions with a nonzero right side at the requested l.
    pub informative: usize,
    pub checked: usize,
    pub witnesses: Vec<String>,
}

/// q with a = q·b, `None` when no such scalar exists; b = 0 forces a = 0.
fn poly_ratio(a: &CommPoly, b: &CommPoly) -> Option<Option<ExactScalar>> {
    let Some((e, cb)) = b.terms().next() else {
        return a.is_zero().then_some(None);
    };
    let ca = a.terms().find(|(f, _)| *f == e).map(|(_, c)| c.clone()).unwrap_or_default();
    let q = ca.try_div(cb).ok()?;
    (*a == b.scale(&q)).then_some(Some(q))
}

/// Both sides of 𝔻ˡ ext_ℳ f = cˡ ext_ℳ L_ℳˡ f.
fn bol_sides(f: &FormalFunction, index: &Matrix, big_d: &CommPoly, heat: &CommPoly, l: u32) -> Result<(CommPoly, CommPoly)> {
    let mut lhs = ext(f, index)?;
    let mut rhs = f.clone();
    for _ in 0..l {
        lhs = lhs.apply(big_d);
        rhs = rhs.apply(heat);
    }
    if lhs.depends_on_tau_p() {
        return Err(Error::Invariant("𝔻 left the ext-type functions".into()));
    }
    Ok((lhs.poly, rhs.poly))
}

/// Monomials of degree ≤ 2 in τ and z.
pub fn degree_two_test_set(n: usize, j: usize) -> Vec<FormalFunction> {
    let vars = FormalVars::new(n, j);
    vars.monomials(2)
        .into_iter()
        .map(|p| FormalFunction::new(vars, p).expect("layout-sized"))
        .collect()
}

pub fn verify_bol_extension(n: usize, j: usize, index: &Matrix, l: u32, test_set: &[FormalFunction]) -> Result<BolReport> {
    validate_index(index, j)?;
    if l == 0 {
        return Err(Error::InvalidArgument("l must be positive".into()));
    }
    let vars = FormalVars::new(n, j);
    if let Some(f) = test_set.iter().find(|f| f.vars != vars) {
        return Err(Error::InvalidArgument(format!("test function {f} has the wrong layout")));
    }
    let big_d = big_d_operator(vars);
    let heat = heat_operator(vars, index)?;
    let det_m = index.det();
    let two_pi = ExactScalar::int(2) * ExactScalar::pi_hat();
    let stated = pow_signed(&two_pi, n as i64 - j as i64)? * pow_signed(&det_m, n as i64 - 1)?;
    let reciprocal = stated.inv()?;

    let ratios = |l: u32| -> Result<Vec<(String, Option<Option<ExactScalar>>)>> {
        test_set
            .par_iter()
            .filter(|f| !f.is_zero())
            .map(|f| {
                let (lhs, rhs) = bol_sides(f, index, &big_d, &heat, l)?;
                Ok((f.to_string(), poly_ratio(&lhs, &rhs)))
            })
            .collect()
    };

    let mut witnesses = Vec::new();
    let mut c: Option<ExactScalar> = None;
    let mut determined_by = None;
    for (name, r) in ratios(1)? {
        match r {
            None => witnesses.push(format!("{name}: l=1 sides not proportional")),
            Some(None) => {}
            Some(Some(q)) => match &c {
                None => {
                    c = Some(q);
                    determined_by = Some(name);
                }
                Some(c0) if *c0 == q => {}
                Some(c0) => witnesses.push(format!("{name}: l=1 ratio {q} != {c0}")),
            },
        }
    }
    let rows = if l == 1 { Vec::new() } else { ratios(l)? };
    let mut informative = 0;
    for (name, r) in &rows {
        match r {
            None => witnesses.push(format!("{name}: l={l} sides not proportional")),
            Some(None) => {}
            Some(Some(q)) => {
                informative += 1;
                match &c {
                    Some(c0) if c0.pow(l) == *q => {}
                    Some(c0) => witnesses.push(format!("{name}: l={l} ratio {q} != ({c0})^{l}")),
                    None => witnesses.push(format!("{name}: l={l} ratio {q} with no l=1 constant")),
                }
            }
        }
    }
    if l == 1 {
        informative = usize::from(determined_by.is_some());
    }
    let matched = match &c {
        Some(c) if *c == stated && *c == reciprocal => MatchedForm::Both,
        Some(c) if *c == stated => MatchedForm::Stated,
        Some(c) if *c == reciprocal => MatchedForm::Reciprocal,
        _ => MatchedForm::Neither,
    };
    Ok(BolReport {
        n,
        j,
        l,
        holds: c.is_some() && witnesses.is_empty(),
        c,
        stated,
        reciprocal,
        matched,
        determined_by,
        informative,
        checked: test_set.len(),
        witnesses,
    })
}

fn pow_signed(x: &ExactScalar, e: i64) -> Result<ExactScalar> {
    let p = x.pow(e.unsigned_abs() as u32);
    Ok(if e < 0 { p.inv()? } else { p })
}

#[cfg(test)]
mod tests;
