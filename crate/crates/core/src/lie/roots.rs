use serde::Serialize;

use crate::scalar::ExactScalar;

use super::build::SpLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootLength {
    Short,
    Long,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositiveRoot {
    /// Coefficients in the dual basis d_1*, …, d_N*.
    pub vector: Vec<i64>,
    pub x: usize,
    pub y: usize,
    pub length: RootLength,
    pub c: u32,
    /// `(i, j)` with `i ≤ j` when the root is `α(i,j) = d_i* + d_j*`.
    pub pair: Option<(usize, usize)>,
}

/// Root data of sp(2N) relative to the diagonal Cartan `{d_i}`.
///
/// Cartan elements are coordinate vectors in the `d` basis, functionals
/// are coordinate vectors in the dual basis.
#[derive(Debug, Clone, Serialize)]
pub struct RootDatum {
    pub rank: usize,
    pub cartan: Vec<usize>,
    pub positive: Vec<PositiveRoot>,
    /// Coroot-like element with a −1 in the last slot.
    pub h_alpha: Vec<ExactScalar>,
    pub omega_alpha: Vec<ExactScalar>,
    pub rho: Vec<ExactScalar>,
    /// Half the sum of the roots on the lower-left block.
    pub rho_s: Vec<ExactScalar>,
}

impl RootDatum {
    pub(super) fn for_sp(lay: &SpLayout) -> Self {
        let n = lay.n;
        let mut positive = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut v = vec![0i64; n];
                v[i] += 1;
                v[j] += 1;
                let long = i == j;
                positive.push(PositiveRoot {
                    vector: v,
                    x: lay.x[i][j],
                    y: lay.y[i][j],
                    length: if long { RootLength::Long } else { RootLength::Short },
                    c: if long { 2 } else { 1 },
                    pair: Some((i, j)),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[j] = -1;
                positive.push(PositiveRoot {
                    vector: v,
                    x: lay.a[i][j].expect("off-diagonal"),
                    y: lay.a[j][i].expect("off-diagonal"),
                    length: RootLength::Short,
                    c: 1,
                    pair: None,
                });
            }
        }
        let half_sum = |pred: &dyn Fn(&PositiveRoot) -> bool, sign: i64| -> Vec<ExactScalar> {
            (0..n)
                .map(|k| {
                    let s: i64 = positive.iter().filter(|r| pred(r)).map(|r| r.vector[k]).sum();
                    ExactScalar::ratio(sign * s, 2)
                })
                .collect()
        };
        let rho = half_sum(&|_| true, 1);
        let rho_s = half_sum(&|r| r.pair.is_some(), -1);
        let mut h_alpha = vec![ExactScalar::zero(); n];
        h_alpha[n - 1] = ExactScalar::int(-1);
        RootDatum {
            rank: n,
            cartan: lay.d.clone(),
            positive,
            h_alpha,
            omega_alpha: vec![ExactScalar::int(-1); n],
            rho,
            rho_s,
        }
    }

    pub fn eval(functional: &[ExactScalar], h: &[ExactScalar]) -> ExactScalar {
        functional.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    /// Root index of `α(i,j)`; symmetric in `i`, `j`.
    pub fn alpha_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.positive.iter().position(|r| r.pair == Some(key))
    }

    /// Exponent of the raising operator at which a vector of trace
    /// weight `k` acquires a second highest-weight vector, read off as
    /// ρ^S(h_α) + λ(h_α) with λ = k·Tr.
    pub fn predicted_recovery_exponent(&self, k: &ExactScalar) -> ExactScalar {
        let trace: Vec<ExactScalar> = vec![ExactScalar::one(); self.rank];
        Self::eval(&self.rho_s, &self.h_alpha) + k * &Self::eval(&trace, &self.h_alpha)
    }
}
