//! Dense exact linear algebra over Q and Hermite normal forms over Z.

// row operations read one row while writing another
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::Coeff;

/// Row-reduces in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(rows: &mut Vec<Vec<Coeff>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    if !rows[r][k].is_zero() {
                        let d = &f * &rows[r][k];
                        rows[i][k] = &rows[i][k] - &d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Coeff>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Coeff::zero(); ncols];
        v[free] = Coeff::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&m[i][free];
        }
        out.push(v);
    }
    out
}

/// Some solution of `A x = b`, if one exists.
pub fn solve(rows: &[Vec<Coeff>], b: &[Coeff]) -> Option<Vec<Coeff>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Coeff>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Coeff::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// returns a basis in echelon form with positive pivots and reduced entries
/// above each pivot. Zero rows are dropped.
pub fn hermite_basis(vectors: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let ncols = vectors.first().map_or(0, |v| v.len());
    let mut rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        // gcd-combine column c into row r
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| rows[i][c].abs())
                .expect("nonempty");
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if !rows[i][c].is_zero() {
                    let q = rows[i][c].div_floor(&rows[r][c]);
                    for k in c..ncols {
                        let d = &q * &rows[r][k];
                        rows[i][k] -= d;
                    }
                    if !rows[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r == rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                for k in c..ncols {
                    let d = &q * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}
