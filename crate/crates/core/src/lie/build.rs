use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::roots::RootDatum;
use super::{AlgebraKind, LieAlgebra};

/// Basis positions of the symplectic generators (0-based `i`, `j`).
#[derive(Debug, Clone)]
pub struct SpLayout {
    pub n: usize,
    /// `x[i][j] = x[j][i]` is the index of `X_{α(i,j)}`.
    pub x: Vec<Vec<usize>>,
    pub y: Vec<Vec<usize>>,
    pub d: Vec<usize>,
    /// `a[i][j]` for `i ≠ j`: `e_ij − e_{N+j,N+i}`.
    pub a: Vec<Vec<Option<usize>>>,
}

/// Basis positions of the Heisenberg generators: `u[i][l]`, `v[i][l]`
/// with `i < j`, `l < n`; `z` symmetric `j × j`.
#[derive(Debug, Clone)]
pub struct HeisLayout {
    pub n: usize,
    pub j: usize,
    pub u: Vec<Vec<usize>>,
    pub v: Vec<Vec<usize>>,
    pub z: Vec<Vec<usize>>,
}

fn idx_label(prefix: &str, i: usize, j: usize, wide: bool) -> String {
    if wide {
        format!("{prefix}{}_{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}{}", i + 1, j + 1)
    }
}

#[derive(Default)]
struct Collector {
    labels: Vec<String>,
    mats: Vec<Matrix>,
}

impl Collector {
    fn push(&mut self, l: String, m: Matrix) -> usize {
        self.labels.push(l);
        self.mats.push(m);
        self.labels.len() - 1
    }
}

/// Pushes sp(2n) generators realized in size-`s` matrices through the
/// row/column map `phi`; `between` runs after the X block and before
/// the Levi block.
fn push_sp(
    c: &mut Collector,
    n: usize,
    s: usize,
    phi: &dyn Fn(usize) -> usize,
    between: &mut dyn FnMut(&mut Collector),
) -> SpLayout {
    let wide = n >= 10;
    let e = |p: usize, q: usize| Matrix::unit(s, phi(p), phi(q));
    let mut lay = SpLayout {
        n,
        x: vec![vec![0; n]; n],
        y: vec![vec![0; n]; n],
        d: vec![0; n],
        a: vec![vec![None; n]; n],
    };
    for i in 0..n {
        for j in i..n {
            let m = if i == j {
                e(i, n + i)
            } else {
                e(i, n + j).add(&e(j, n + i))
            };
            let k = c.push(idx_label("X", i, j, wide), m);
            lay.x[i][j] = k;
            lay.x[j][i] = k;
        }
    }
    between(c);
    for i in 0..n {
        lay.d[i] = c.push(format!("d{}", i + 1), e(i, i).sub(&e(n + i, n + i)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let m = e(i, j).sub(&e(n + j, n + i));
                lay.a[i][j] = Some(c.push(idx_label("A", i, j, wide), m));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let m = if i == j {
                e(n + i, i)
            } else {
                e(n + j, i).add(&e(n + i, j))
            };
            let k = c.push(idx_label("Y", i, j, wide), m);
            lay.y[i][j] = k;
            lay.y[j][i] = k;
        }
    }
    lay
}

fn sym_indices(m: &[Vec<usize>]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..m.len()).flat_map(|i| (i..m.len()).map(move |j| (i, j))).map(|(i, j)| m[i][j]).collect();
    v.sort_unstable();
    v
}

fn levi_indices(l: &SpLayout) -> Vec<usize> {
    let mut v = l.d.clone();
    v.extend(l.a.iter().flatten().flatten());
    v.sort_unstable();
    v
}

/// sp(2N) in the basis X_{α(i,j)} (i ≤ j), d_i, off-diagonal Levi, Y_{α(i,j)}.
pub fn build_sp(n: usize) -> Result<Arc<LieAlgebra>> {
    if n == 0 {
        return Err(Error::InvalidArgument("sp(2N) needs N >= 1".into()));
    }
    let mut c = Collector::default();
    let lay = push_sp(&mut c, n, 2 * n, &|p| p, &mut |_| {});
    let mut alg = LieAlgebra::from_matrices(&format!("sp({})", 2 * n), AlgebraKind::Symplectic { n }, c.labels, c.mats)?;
    let s = &mut alg.subspaces;
    s.insert("u_plus".into(), sym_indices(&lay.x));
    s.insert("L".into(), sym_indices(&lay.y));
    s.insert("levi".into(), levi_indices(&lay));
    s.insert("cartan".into(), lay.d.clone());
    alg.roots = Some(RootDatum::for_sp(&lay));
    alg.sp_layout = Some(lay);
    Ok(Arc::new(alg))
}

/// g^(n,j) inside sp(2(n+j)), block layout (n, j, n, j).
pub fn build_jacobi(n: usize, j: usize) -> Result<Arc<LieAlgebra>> {
    if n == 0 || j == 0 {
        return Err(Error::InvalidArgument("g^(n,j) needs n, j >= 1".into()));
    }
    let s = 2 * (n + j);
    // 1-based absolute matrix unit, as in the block formulas
    let e1 = |a: usize, b: usize| Matrix::unit(s, a - 1, b - 1);
    let phi = move |p: usize| if p < n { p } else { p + j };
    let wide = n.max(j) >= 10;
    let mut c = Collector::default();
    let mut u = vec![vec![0; n]; j];
    let lay = push_sp(&mut c, n, s, &phi, &mut |c| {
        for i in 1..=j {
            for l in 1..=n {
                let m = e1(n + i, n + j + l).add(&e1(l, 2 * n + j + i));
                u[i - 1][l - 1] = c.push(idx_label("U", i - 1, l - 1, wide), m);
            }
        }
    });
    let mut v = vec![vec![0; n]; j];
    for i in 1..=j {
        for l in 1..=n {
            let m = e1(n + i, l).sub(&e1(n + j + l, 2 * n + j + i));
            v[i - 1][l - 1] = c.push(idx_label("V", i - 1, l - 1, wide), m);
        }
    }
    let mut z = vec![vec![0; j]; j];
    for i in 1..=j {
        for l in i..=j {
            let m = e1(n + i, 2 * n + j + l).add(&e1(n + l, 2 * n + j + i));
            let k = c.push(idx_label("Z", i - 1, l - 1, wide), m);
            z[i - 1][l - 1] = k;
            z[l - 1][i - 1] = k;
        }
    }
    let mut alg = LieAlgebra::from_matrices(
        &format!("g^({n},{j})"),
        AlgebraKind::Jacobi { n, j },
        c.labels,
        c.mats,
    )?;
    let flat = |m: &Vec<Vec<usize>>| {
        let mut x: Vec<usize> = m.iter().flatten().copied().collect();
        x.sort_unstable();
        x
    };
    let u_plus = sym_indices(&lay.x);
    let ell = sym_indices(&lay.y);
    let levi = levi_indices(&lay);
    let mut sp_part: Vec<usize> = u_plus.iter().chain(&ell).chain(&levi).copied().collect();
    sp_part.sort_unstable();
    let mut v_heis: Vec<usize> = flat(&u).into_iter().chain(flat(&v)).collect();
    v_heis.sort_unstable();
    let sub = &mut alg.subspaces;
    sub.insert("sp_part".into(), sp_part);
    sub.insert("u_plus".into(), u_plus);
    sub.insert("L".into(), ell);
    sub.insert("levi".into(), levi);
    sub.insert("cartan".into(), lay.d.clone());
    sub.insert("r_heis".into(), flat(&u));
    sub.insert("l_heis".into(), flat(&v));
    sub.insert("v_heis".into(), v_heis);
    sub.insert("z".into(), sym_indices(&z));
    alg.roots = Some(RootDatum::for_sp(&lay));
    alg.sp_layout = Some(lay);
    alg.heis_layout = Some(HeisLayout { n, j, u, v, z });
    Ok(Arc::new(alg))
}
