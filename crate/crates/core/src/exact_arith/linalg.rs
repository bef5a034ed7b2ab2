use num_traits::{One, Zero};

use super::mpoly::{monomials_of_degree, MPoly, Monomial, Symbol, Q};
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    rref(&mut m.to_vec()).len()
}

/// Exact determinant by elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A solution of `A x = b`, where `a` is given column by column.
pub fn solve_columns(columns: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = b.len();
    let k = columns.len();
    let mut aug: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Q> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.last() == Some(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][k].clone();
    }
    Some(x)
}

/// `f = Σ multipliers[i] · gens[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub multipliers: Vec<MPoly>,
}

impl Certificate {
    pub fn expand(&self, gens: &[MPoly]) -> MPoly {
        self.multipliers.iter().zip(gens).fold(MPoly::zero(), |acc, (m, g)| acc + m * g)
    }
}

/// Decide `f ∈ (gens)` in the graded piece of degree `deg f`.
pub fn graded_membership(f: &MPoly, gens: &[MPoly]) -> Result<Option<Certificate>> {
    for p in std::iter::once(f).chain(gens) {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous(p.to_string()));
        }
    }
    let Some(d) = f.homogeneous_degree() else {
        return Ok(Some(Certificate { multipliers: vec![MPoly::zero(); gens.len()] }));
    };
    let mut vars: std::collections::BTreeSet<Symbol> = f.variables();
    for g in gens {
        vars.extend(g.variables());
    }
    let vars: Vec<Symbol> = vars.into_iter().collect();

    let mut products: Vec<(usize, Monomial, MPoly)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let Some(e) = g.homogeneous_degree() else { continue };
        if e > d {
            continue;
        }
        for m in monomials_of_degree(&vars, d - e) {
            let p = g.mul_monomial(&m);
            products.push((i, m, p));
        }
    }
    let basis = monomials_of_degree(&vars, d);
    let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let column = |p: &MPoly| {
        let mut c = vec![Q::zero(); basis.len()];
        for (m, a) in p.terms() {
            c[index[m]] = a.clone();
        }
        c
    };
    let columns: Vec<Vec<Q>> = products.iter().map(|(_, _, p)| column(p)).collect();
    let Some(x) = solve_columns(&columns, &column(f)) else {
        return Ok(None);
    };
    let mut multipliers = vec![MPoly::zero(); gens.len()];
    for ((i, m, _), c) in products.iter().zip(x) {
        if !c.is_zero() {
            multipliers[*i] = &multipliers[*i] + &MPoly::monomial(m.clone(), c);
        }
    }
    let cert = Certificate { multipliers };
    debug_assert_eq!(&cert.expand(gens), f);
    Ok(Some(cert))
}
