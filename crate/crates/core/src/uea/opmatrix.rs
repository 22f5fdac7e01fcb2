use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::perm_sign;

use super::{PbwContext, UeaElement};

/// Rectangular matrix of U(g) elements sharing one context.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<UeaElement>,
}

impl OperatorMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<UeaElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| !Arc::ptr_eq(e.context(), first.context())) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(OperatorMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> UeaElement) -> Result<Self> {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UeaElement {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[UeaElement] {
        &self.entries
    }

    fn ctx(&self) -> Option<&Arc<PbwContext>> {
        self.entries.first().map(UeaElement::context)
    }

    /// First pair of non-commuting entries, as (i₁, j₁, i₂, j₂).
    pub fn commutation_witness(&self) -> Result<Option<(usize, usize, usize, usize)>> {
        let n = self.entries.len();
        for a in 0..n {
            for b in a + 1..n {
                if !self.entries[a].commutator(&self.entries[b])?.is_zero() {
                    return Ok(Some((a / self.cols, a % self.cols, b / self.cols, b % self.cols)));
                }
            }
        }
        Ok(None)
    }

    /// Leibniz expansion; each product is taken in ascending row order.
    pub fn det(&self, verify_commuting: bool) -> Result<UeaElement> {
        if self.rows != self.cols {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        if verify_commuting {
            if let Some((a, b, c, d)) = self.commutation_witness()? {
                return Err(Error::NotCommuting(a, b, c, d));
            }
        }
        let Some(ctx) = self.ctx() else {
            return Err(Error::InvalidArgument("determinant of an empty matrix needs a context".into()));
        };
        let n = self.rows;
        let mut acc = ctx.zero();
        for p in (0..n).permutations(n) {
            let mut t = ctx.one();
            for (i, &pi) in p.iter().enumerate() {
                let e = self.get(i, pi);
                if e.is_zero() {
                    t = ctx.zero();
                    break;
                }
                t = t.mul(e)?;
            }
            acc = if perm_sign(&p) > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    pub fn minor(&self, i: usize, j: usize) -> Result<Self> {
        let mut entries = Vec::new();
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                entries.push(self.get(r, c).clone());
            }
        }
        Self::new(self.rows - 1, self.cols - 1, entries)
    }

    /// Signed determinant of the (i, j)-deleted minor.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<UeaElement> {
        if self.rows != self.cols {
            return Err(Error::NonSquare(self.rows, self.cols));
        }
        let ctx = self.ctx().ok_or(Error::ContextMismatch)?.clone();
        if self.rows == 1 {
            return Ok(ctx.one());
        }
        let m = self.minor(i, j)?.det(false)?;
        Ok(if (i + j) % 2 == 0 { m } else { m.neg() })
    }

    /// Matrix product with entries multiplied left factor first.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::InvalidArgument("shape mismatch in operator product".into()));
        }
        let ctx = self.ctx().ok_or(Error::ContextMismatch)?.clone();
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = ctx.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j))?);
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, o.cols, entries)
    }

    pub fn trace(&self) -> Result<UeaElement> {
        let ctx = self.ctx().ok_or(Error::ContextMismatch)?;
        Ok((0..self.rows.min(self.cols)).fold(ctx.zero(), |acc, i| acc.add(self.get(i, i))))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        OperatorMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}
