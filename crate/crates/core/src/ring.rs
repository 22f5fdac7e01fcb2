//! Commutative rings used as matrix entries, and commutative polynomials
//! over [`ExactScalar`] in indexed variables.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::ExactScalar;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

/// Dense exponent vector over a fixed number of variables.
pub type Exps = Vec<u16>;

/// Commutative polynomial with [`ExactScalar`] coefficients in
/// variables `0..nvars`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CommPoly {
    nvars: usize,
    terms: BTreeMap<Exps, ExactScalar>,
}

impl CommPoly {
    pub fn new(nvars: usize) -> Self {
        CommPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: ExactScalar) -> Self {
        let mut p = CommPoly::new(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = CommPoly::new(nvars);
        p.add_term(e, ExactScalar::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exps, c: ExactScalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = CommPoly::new(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a * c);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn constant_value(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = CommPoly::new(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * &ExactScalar::int(e[i] as i64));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = CommPoly::constant(self.nvars, ExactScalar::one());
        for _ in 0..k {
            acc = Ring::mul(&acc, self);
        }
        acc
    }

    /// Substitutes each variable by a polynomial in `target_nvars` variables.
    pub fn compose(&self, images: &[CommPoly], target_nvars: usize) -> Self {
        let mut out = CommPoly::new(target_nvars);
        for (e, c) in &self.terms {
            let mut t = CommPoly::constant(target_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = Ring::mul(&t, &images[i].pow(k as u32));
                }
            }
            out = Ring::add(&out, &t);
        }
        out
    }

    /// Renders with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&x| x as u32).sum();
            let db: u32 = b.0.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in keys.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], k)
                    }
                })
                .collect();
            push_term(&mut out, i == 0, c, &mono.join("*"));
        }
        out
    }
}

/// Appends `c*mono` to a sum rendering, folding the sign into the joiner.
pub(crate) fn push_term(out: &mut String, first: bool, c: &ExactScalar, mono: &str) {
    let (neg, abs) = match c.as_rational() {
        Some(q) if q < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
        _ => (false, c.clone()),
    };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(mono);
    } else if abs.is_compound() {
        out.push_str(&format!("({abs})*{mono}"));
    } else {
        out.push_str(&format!("{abs}*{mono}"));
    }
}

impl Ring for CommPoly {
    fn zero() -> Self {
        CommPoly::new(0)
    }
    fn one() -> Self {
        CommPoly::constant(0, ExactScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let (mut out, rest) = widen(self, other);
        for (e, c) in &rest.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let n = self.nvars.max(other.nvars);
        let mut out = CommPoly::new(n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = vec![0u16; n];
                for (i, x) in e1.iter().enumerate() {
                    e[i] += x;
                }
                for (i, x) in e2.iter().enumerate() {
                    e[i] += x;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        self.scale(&ExactScalar::int(-1))
    }
}

/// Pads the narrower operand so `zero()`/`one()` (nvars 0) mix with
/// sized polynomials.
fn widen(a: &CommPoly, b: &CommPoly) -> (CommPoly, CommPoly) {
    let n = a.nvars.max(b.nvars);
    let pad = |p: &CommPoly| {
        if p.nvars == n {
            p.clone()
        } else {
            let mut q = CommPoly::new(n);
            for (e, c) in &p.terms {
                let mut f = e.clone();
                f.resize(n, 0);
                q.terms.insert(f, c.clone());
            }
            q
        }
    };
    (pad(a), pad(b))
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}
