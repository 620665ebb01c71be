//! Hermite normal form and lattice equality.
//!
//! The canonical form here is column-style and lower triangular: column j has
//! zeros above its pivot row, pivots are positive, and entries to the left
//! of a pivot lie in [0, pivot). Two bases span the same lattice exactly when
//! their forms coincide.

use rug::ops::DivRounding;
use rug::Integer;

use super::{Basis, LllError};

/// |det| of a square basis by fraction-free (Bareiss) elimination.
pub fn determinant(basis: &Basis) -> Result<Integer, LllError> {
    let n = basis.dim();
    if basis.len() != n {
        return Err(LllError::DimensionMismatch(basis.len(), n));
    }
    // a[row][col]
    let mut a: Vec<Vec<Integer>> = (0..n)
        .map(|i| (0..n).map(|j| basis.column(j)[i].clone()).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(Integer::new()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut v = Integer::from(&a[i][j] * &a[k][k]);
                v -= &a[i][k] * &a[k][j];
                v.div_exact_mut(&prev);
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone() * sign;
    Ok(det.abs())
}

/// g = u·a + v·b with g = gcd(a, b) ≥ 0.
fn xgcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (g, u, v) = a.clone().extended_gcd(b.clone(), Integer::new());
    (g, u, v)
}

/// Replaces columns p and c by a unimodular combination that leaves the
/// gcd of their `row` entries in p and zero in c.
fn combine(cols: &mut [Vec<Integer>], p: usize, c: usize, row: usize) {
    let (ap, ac) = (cols[p][row].clone(), cols[c][row].clone());
    let (g, u, v) = xgcd(&ap, &ac);
    let ap_g = Integer::from(ap.div_exact_ref(&g));
    let ac_g = Integer::from(ac.div_exact_ref(&g));
    let len = cols[p].len();
    for i in 0..len {
        let x = cols[p][i].clone();
        let y = cols[c][i].clone();
        cols[p][i] = Integer::from(&u * &x) + Integer::from(&v * &y);
        cols[c][i] = Integer::from(&ap_g * &y) - Integer::from(&ac_g * &x);
    }
}

fn finish(mut pivots: Vec<Vec<Integer>>, pivot_rows: &[usize]) -> Vec<Vec<Integer>> {
    for (a, &row) in pivot_rows.iter().enumerate() {
        if pivots[a][row] < 0 {
            for v in pivots[a].iter_mut() {
                *v = Integer::from(-&*v);
            }
        }
        let h = pivots[a][row].clone();
        for b in 0..a {
            let q = pivots[b][row].clone().div_floor(&h);
            if q != 0 {
                let (lo, hi) = pivots.split_at_mut(a);
                for (t, s) in lo[b].iter_mut().zip(hi[0].iter()) {
                    *t -= &q * s;
                }
            }
        }
    }
    pivots
}

/// Hermite normal form by plain extended-gcd column operations (any rank).
pub fn hermite_normal_form_naive(basis: &Basis) -> Vec<Vec<Integer>> {
    let m = basis.dim();
    let mut cols: Vec<Vec<Integer>> = basis.columns().to_vec();
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();
    for row in 0..m {
        let Some(p) = cols.iter().position(|c| c[row] != 0) else {
            continue;
        };
        for c in 0..cols.len() {
            if c != p && cols[c][row] != 0 {
                combine(&mut cols, p, c, row);
            }
        }
        pivots.push(cols.remove(p));
        pivot_rows.push(row);
        cols.retain(|c| c.iter().any(|v| *v != 0));
    }
    finish(pivots, &pivot_rows)
}

/// Hermite normal form of a square nonsingular basis, working modulo |det|.
///
/// Since |det|·ℤⁿ lies in the lattice, entries below the current row can be
/// reduced modulo |det| without changing the lattice, which keeps every
/// intermediate value bounded.
pub fn hermite_normal_form(basis: &Basis) -> Result<Vec<Vec<Integer>>, LllError> {
    let n = basis.dim();
    let det = determinant(basis)?;
    if det == 0 {
        return Err(LllError::Dependent { index: n - 1 });
    }
    let mut cols: Vec<Vec<Integer>> = basis.columns().to_vec();
    reduce_mod(&mut cols, &det, 0);
    let mut pivots = Vec::with_capacity(n);
    let mut pivot_rows = Vec::with_capacity(n);
    for row in 0..n {
        // det·e_row is a lattice vector with zeros above `row`.
        let mut extra = vec![Integer::new(); n];
        extra[row] = det.clone();
        cols.push(extra);
        let p = cols.len() - 1;
        for c in 0..p {
            if cols[c][row] != 0 {
                combine(&mut cols, p, c, row);
            }
        }
        let pivot = cols.swap_remove(p);
        reduce_mod(&mut cols, &det, row + 1);
        let mut pivot = pivot;
        for v in pivot.iter_mut().skip(row + 1) {
            *v = Integer::from(v.modulo_ref(&det));
        }
        pivots.push(pivot);
        pivot_rows.push(row);
    }
    Ok(finish(pivots, &pivot_rows))
}

fn reduce_mod(cols: &mut [Vec<Integer>], modulus: &Integer, from_row: usize) {
    for c in cols.iter_mut() {
        for v in c.iter_mut().skip(from_row) {
            *v = Integer::from(v.modulo_ref(modulus));
        }
    }
}

/// True iff the two bases generate the same lattice.
pub fn same_lattice(a: &Basis, b: &Basis) -> Result<bool, LllError> {
    if a.dim() != b.dim() {
        return Err(LllError::DimensionMismatch(a.dim(), b.dim()));
    }
    let square = a.len() == a.dim() && b.len() == b.dim();
    if square {
        let (da, db) = (determinant(a)?, determinant(b)?);
        if da != db {
            return Ok(false);
        }
        if da != 0 {
            return Ok(hermite_normal_form(a)? == hermite_normal_form(b)?);
        }
    }
    Ok(hermite_normal_form_naive(a) == hermite_normal_form_naive(b))
}
