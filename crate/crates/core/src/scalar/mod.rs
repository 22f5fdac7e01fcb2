//! Exact scalars: rational functions in formal parameters over Q.

mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::ParseError;
pub use poly::{Mono, Param, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {0} vanishes under substitution")]
    Pole(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Rational function in [`Param`]s, always in canonical form.
///
/// Constants take the `Rat` fast path; everything else is a reduced
/// fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rat(BigRational),
    Frac { num: Poly, den: Poly },
}

impl Default for ExactScalar {
    fn default() -> Self {
        ExactScalar::zero()
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        ExactScalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "ratio with zero denominator");
        ExactScalar::Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        ExactScalar::Rat(q)
    }

    pub fn param(p: Param) -> Self {
        ExactScalar::Frac {
            num: Poly::param(p),
            den: Poly::one(),
        }
    }

    pub fn pi_hat() -> Self {
        Self::param(Param::pi_hat())
    }

    pub fn kappa() -> Self {
        Self::param(Param::kappa())
    }

    pub fn from_poly(p: Poly) -> Self {
        match p.constant_value() {
            Some(c) => ExactScalar::Rat(c),
            None => ExactScalar::Frac {
                num: p,
                den: Poly::one(),
            },
        }
    }

    /// Builds `num/den` in canonical form.
    pub fn fraction(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ExactScalar::zero());
        }
        if let Some(c) = den.constant_value() {
            return Ok(Self::from_poly(num.scale(&c.recip())));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff().recip();
        let (num, den) = (num.scale(&lc), den.scale(&lc));
        if den.is_one() {
            Ok(Self::from_poly(num))
        } else {
            Ok(ExactScalar::Frac { num, den })
        }
    }

    pub fn numer(&self) -> Poly {
        match self {
            ExactScalar::Rat(q) => Poly::constant(q.clone()),
            ExactScalar::Frac { num, .. } => num.clone(),
        }
    }

    pub fn denom(&self) -> Poly {
        match self {
            ExactScalar::Rat(_) => Poly::one(),
            ExactScalar::Frac { den, .. } => den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExactScalar::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rat(q) => Some(q),
            ExactScalar::Frac { .. } => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        match self {
            ExactScalar::Rat(_) => true,
            ExactScalar::Frac { den, .. } => den.is_one(),
        }
    }

    /// True when the rendering needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            ExactScalar::Rat(_) => false,
            ExactScalar::Frac { num, den } => !den.is_one() || num.terms().count() > 1,
        }
    }

    pub fn params(&self) -> std::collections::BTreeSet<Param> {
        let mut s = self.numer().params();
        s.extend(self.denom().params());
        s
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self {
            ExactScalar::Rat(q) if q.is_zero() => Err(ScalarError::DivisionByZero),
            ExactScalar::Rat(q) => Ok(ExactScalar::Rat(q.recip())),
            ExactScalar::Frac { num, den } => Self::fraction(den.clone(), num.clone()),
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        match (self, other) {
            (_, ExactScalar::Rat(b)) if b.is_zero() => Err(ScalarError::DivisionByZero),
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => Ok(ExactScalar::Rat(a / b)),
            _ => Ok(self * &other.inv()?),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes parameters; unbound ones pass through.
    pub fn substitute(&self, bindings: &BTreeMap<Param, ExactScalar>) -> Result<Self, ScalarError> {
        match self {
            ExactScalar::Rat(_) => Ok(self.clone()),
            ExactScalar::Frac { num, den } => {
                let n = eval_poly(num, bindings);
                let d = eval_poly(den, bindings);
                if d.is_zero() {
                    return Err(ScalarError::Pole(den.to_string()));
                }
                n.try_div(&d)
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        parse::parse(s)
    }
}

fn eval_poly(p: &Poly, bindings: &BTreeMap<Param, ExactScalar>) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (m, c) in p.terms() {
        let mut t = ExactScalar::Rat(c.clone());
        for (param, e) in m.factors() {
            let base = bindings
                .get(param)
                .cloned()
                .unwrap_or_else(|| ExactScalar::param(param.clone()));
            t = &t * &base.pow(*e);
        }
        acc += t;
    }
    acc
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        use ExactScalar::*;
        match (self, rhs) {
            (Rat(a), Rat(b)) => Rat(a + b),
            (Rat(a), Frac { num, den }) | (Frac { num, den }, Rat(a)) => {
                let n = num.add(&den.scale(a));
                if den.is_one() {
                    ExactScalar::from_poly(n)
                } else {
                    Frac {
                        num: n,
                        den: den.clone(),
                    }
                }
            }
            (Frac { num: n1, den: d1 }, Frac { num: n2, den: d2 }) => {
                if d1.is_one() && d2.is_one() {
                    ExactScalar::from_poly(n1.add(n2))
                } else if d1 == d2 {
                    ExactScalar::fraction(n1.add(n2), d1.clone()).expect("nonzero den")
                } else {
                    ExactScalar::fraction(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
                        .expect("nonzero den")
                }
            }
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rat(a) => ExactScalar::Rat(-a),
            ExactScalar::Frac { num, den } => ExactScalar::Frac {
                num: num.neg(),
                den: den.clone(),
            },
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        use ExactScalar::*;
        match (self, rhs) {
            (Rat(a), Rat(b)) => Rat(a * b),
            (Rat(a), Frac { num, den }) | (Frac { num, den }, Rat(a)) => {
                if a.is_zero() {
                    ExactScalar::zero()
                } else {
                    Frac {
                        num: num.scale(a),
                        den: den.clone(),
                    }
                }
            }
            (Frac { num: n1, den: d1 }, Frac { num: n2, den: d2 }) => {
                if d1.is_one() && d2.is_one() {
                    ExactScalar::from_poly(n1.mul(n2))
                } else {
                    ExactScalar::fraction(n1.mul(n2), d1.mul(d2)).expect("nonzero den")
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self - rhs;
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        ExactScalar::Rat(q)
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            ExactScalar::Frac { num, den } => {
                if den.is_one() {
                    write!(f, "{num}")
                } else {
                    let wrap_num = num.terms().count() > 1
                        || num.terms().any(|(_, c)| !c.is_integer());
                    let wrap_den = den.terms().count() > 1
                        || den.terms().any(|(m, _)| m.factors().len() > 1);
                    if wrap_num {
                        write!(f, "({num})")?;
                    } else {
                        write!(f, "{num}")?;
                    }
                    if wrap_den {
                        write!(f, "/({den})")
                    } else {
                        write!(f, "/{den}")
                    }
                }
            }
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExactScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sign of the leading coefficient, for callers that need one.
pub fn leading_sign(s: &ExactScalar) -> i8 {
    let c = s.numer().leading_coeff();
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}
