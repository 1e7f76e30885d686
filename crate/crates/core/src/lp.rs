//! Dense exact-rational simplex for packing LPs `max c·y, A y <= b, y >= 0`
//! with `b >= 0`, so the all-slack basis is feasible and no phase one is
//! needed. Bland's rule guarantees termination.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: Rational,
    /// Optimal `y`.
    pub primal: Vec<Rational>,
    /// Optimal multipliers of the rows, i.e. a solution of
    /// `min b·x, Aᵀ x >= c, x >= 0` with the same value.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

pub fn maximize_packing(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<LpSolution> {
    let rows = a.len();
    let cols = c.len();
    if b.len() != rows || a.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParameter("LP dimensions do not match".into()));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::InvalidParameter("packing LP needs b >= 0".into()));
    }
    let width = cols + rows;
    // Row i: [A_i | e_i | b_i]; objective row: [-c | 0 | 0].
    let mut tab: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..rows).map(|j| {
                if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut obj: Vec<Rational> = c.iter().map(|x| -x).collect();
    obj.extend((0..=rows).map(|_| Rational::zero()));
    let mut basis: Vec<usize> = (cols..width).collect();
    let mut pivots = 0;

    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][width] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Internal("packing LP unbounded".into()));
        };
        let piv = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = tab[pr].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[pr] = enter;
        pivots += 1;
    }

    let mut primal = vec![Rational::zero(); cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            primal[bv] = tab[i][width].clone();
        }
    }
    let dual = obj[cols..width].to_vec();
    Ok(LpSolution {
        value: obj[width].clone(),
        primal,
        dual,
        pivots,
    })
}
