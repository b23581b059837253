//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Infeasible,
    Underdetermined,
}

/// Solves `a·x = b` for `x`, where `a` has `cols` columns.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, cols: usize) -> Solution {
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                let delta = &factor * &a[r][j];
                a[i][j] -= delta;
            }
            let delta = &factor * &b[r];
            b[i] -= delta;
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return Solution::Infeasible;
    }
    if pivot_cols.len() < cols {
        return Solution::Underdetermined;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Solution::Unique(x)
}
