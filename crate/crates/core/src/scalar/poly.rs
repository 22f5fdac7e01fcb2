use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A formal parameter. Ordered by name; "2pi_i" sorts before "k".
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(Arc<str>);

impl Param {
    pub fn new(name: &str) -> Self {
        Param(Arc::from(name))
    }

    /// The parameter standing for 2πi.
    pub fn pi_hat() -> Self {
        Param::new("2pi_i")
    }

    /// The generic weight parameter.
    pub fn kappa() -> Self {
        Param::new("k")
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Power product of parameters, sorted by parameter, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<(Param, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(p: Param, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(vec![(p, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp(&self, p: &Param) -> u32 {
        self.0
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Param, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    /// Removes `p` entirely, returning its exponent and the rest.
    fn split(&self, p: &Param) -> (u32, Mono) {
        let mut rest = self.0.clone();
        match rest.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => {
                let e = rest.remove(i).1;
                (e, Mono(rest))
            }
            Err(_) => (0, Mono(rest)),
        }
    }
}

impl Ord for Mono {
    /// Graded lex: total degree first, then larger exponent of the
    /// earlier parameter wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((p, a)), Some((q, b))) => match p.cmp(q) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if a != b {
                                return a.cmp(b);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over Q.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn param(p: Param) -> Self {
        Poly::monomial(Mono::var(p, 1), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(p, _)| p.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, p: &Param) -> u32 {
        self.terms.keys().map(|m| m.exp(p)).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Coefficients as a polynomial in `p` over the remaining parameters.
    pub fn coeffs_in(&self, p: &Param) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(p);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, q| !q.is_zero());
        out
    }

    fn lc_in(&self, p: &Param) -> (u32, Poly) {
        self.coeffs_in(p)
            .into_iter()
            .next_back()
            .unwrap_or((0, Poly::zero()))
    }

    fn shift(&self, p: &Param, e: u32) -> Poly {
        let m = Mono::var(p.clone(), e);
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let x = d.params().into_iter().next()?;
        let (db, lb) = d.lc_in(&x);
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let (dr, lr) = rem.lc_in(&x);
            if dr < db {
                return None;
            }
            let qc = lr.div_exact(&lb)?;
            let term = qc.shift(&x, dr - db);
            rem = rem.sub(&term.mul(d));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let mut vars = self.params();
        vars.extend(other.params());
        let x = vars.into_iter().next().expect("non-constant");
        let a_has = self.degree_in(&x) > 0;
        let b_has = other.degree_in(&x) > 0;
        if !a_has {
            return self.gcd(&other.content_in(&x));
        }
        if !b_has {
            return self.content_in(&x).gcd(other);
        }
        let ca = self.content_in(&x);
        let cb = other.content_in(&x);
        let g = ca.gcd(&cb);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let (mut f, mut h) = if pa.degree_in(&x) >= pb.degree_in(&x) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        while !h.is_zero() {
            let r = f.prem(&h, &x);
            f = h;
            h = if r.is_zero() { r } else { r.primitive_in(&x) };
        }
        g.mul(&f.primitive_in(&x)).monic()
    }

    fn content_in(&self, x: &Param) -> Poly {
        self.coeffs_in(x)
            .values()
            .fold(Poly::zero(), |acc, c| acc.gcd(c))
    }

    fn primitive_in(&self, x: &Param) -> Poly {
        let c = self.content_in(x);
        self.div_exact(&c).expect("content divides")
    }

    fn prem(&self, h: &Poly, x: &Param) -> Poly {
        let (dh, lh) = h.lc_in(x);
        let mut r = self.clone();
        while !r.is_zero() {
            let (dr, lr) = r.lc_in(x);
            if dr < dh {
                break;
            }
            r = r.mul(&lh).sub(&h.mul(&lr).shift(x, dr - dh));
        }
        r
    }

    /// Substitutes `p ↦ value` (a polynomial).
    pub fn compose(&self, p: &Param, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in self.coeffs_in(p) {
            out = out.add(&c.mul(&value.pow(e)));
        }
        out
    }

    /// Distinct rational roots in the single parameter `p`, with
    /// multiplicities, plus the cofactor left after removing them.
    /// `None` if other parameters occur.
    pub fn rational_roots(&self, p: &Param) -> Option<(Vec<(BigRational, u32)>, Poly)> {
        if self.params().iter().any(|q| q != p) || self.is_zero() {
            return None;
        }
        let coeffs: Vec<BigRational> = {
            let cs = self.coeffs_in(p);
            let deg = self.degree_in(p);
            (0..=deg)
                .map(|e| {
                    cs.get(&e)
                        .and_then(Poly::constant_value)
                        .unwrap_or_else(BigRational::zero)
                })
                .collect()
        };
        let mut ints = to_integer_coeffs(&coeffs);
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while ints.len() > 1 && ints[0].is_zero() {
            ints.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints[ints.len() - 1].abs();
            let mut cands: Vec<BigRational> = Vec::new();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    let q = BigRational::new(num.clone(), den.clone());
                    if !cands.contains(&q) {
                        cands.push(q.clone());
                        cands.push(-q);
                    }
                }
            }
            cands.sort();
            for q in cands {
                let mut mult = 0;
                while ints.len() > 1 {
                    match synthetic_div(&ints, &q) {
                        Some(next) => {
                            ints = to_integer_coeffs(&next);
                            mult += 1;
                        }
                        None => break,
                    }
                }
                if mult > 0 {
                    roots.push((q, mult));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        let mut rest = Poly::zero();
        for (e, c) in ints.iter().enumerate() {
            rest = rest.add(&Poly::monomial(
                Mono::var(p.clone(), e as u32),
                BigRational::from_integer(c.clone()),
            ));
        }
        Some((roots, rest.monic()))
    }
}

fn to_integer_coeffs(cs: &[BigRational]) -> Vec<BigInt> {
    let l = cs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// Divides by (x − q) if exact; coefficients ascending.
fn synthetic_div(cs: &[BigInt], q: &BigRational) -> Option<Vec<BigRational>> {
    let n = cs.len() - 1;
    let mut out = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for i in (1..=n).rev() {
        carry = BigRational::from_integer(cs[i].clone()) + carry * q;
        out[i - 1] = carry.clone();
    }
    let rem = BigRational::from_integer(cs[0].clone()) + carry * q;
    rem.is_zero().then_some(out)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                fmt_rational(&a, f)?;
            } else {
                if !a.is_one() {
                    fmt_rational(&a, f)?;
                    f.write_str("*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Poly {
        Poly::param(Param::kappa())
    }
    fn c(n: i64) -> Poly {
        Poly::constant(BigRational::from_integer(n.into()))
    }

    #[test]
    fn gcd_univariate() {
        let a = k().mul(&k()).sub(&c(1));
        let b = k().sub(&c(1));
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.div_exact(&b).unwrap(), k().add(&c(1)));
    }

    #[test]
    fn gcd_bivariate() {
        let p = Poly::param(Param::pi_hat());
        let common = p.mul(&k()).add(&c(3));
        let a = common.mul(&p.sub(&k()));
        let b = common.mul(&p.add(&c(2)));
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn roots_with_multiplicity() {
        // (k-1)^2 (2k+3) (k^2+1)
        let f = k()
            .sub(&c(1))
            .pow(2)
            .mul(&k().scale(&BigRational::from_integer(2.into())).add(&c(3)))
            .mul(&k().pow(2).add(&c(1)));
        let (roots, rest) = f.rational_roots(&Param::kappa()).unwrap();
        assert_eq!(
            roots,
            vec![
                (BigRational::new((-3).into(), 2.into()), 1),
                (BigRational::from_integer(1.into()), 2)
            ]
        );
        assert_eq!(rest, k().pow(2).add(&c(1)));
    }

    #[test]
    fn display_graded() {
        let f = k().pow(2).sub(&k().scale(&BigRational::from_integer(2.into()))).add(&c(1));
        assert_eq!(f.to_string(), "k^2 - 2*k + 1");
    }
}
