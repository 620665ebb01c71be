//! Exact integer Gram–Schmidt, reducedness verification, and the integral
//! LLL algorithm used as the last-resort fallback.
//!
//! Everything here works with the fraction-free quantities
//! d_i = Π_{j≤i} ‖b*_j‖² and λ_ij = d_j μ_ij, which are integers for an
//! integer basis.

use std::fmt;

use rug::Integer;

use super::{dot, Basis, LllError, ReductionParams};

/// Fraction-free Gram–Schmidt data of a basis (0-based indices).
#[derive(Clone, Debug)]
pub struct ExactGramSchmidt {
    /// d[0] = 1, d[i+1] = Π_{j≤i} ‖b*_j‖².
    pub d: Vec<Integer>,
    /// lambda[i][j] = d[j+1]·μ_ij for j < i.
    pub lambda: Vec<Vec<Integer>>,
}

impl ExactGramSchmidt {
    /// ‖b*_i‖² as the exact fraction d[i+1]/d[i].
    pub fn norm_sq(&self, i: usize) -> (Integer, Integer) {
        (self.d[i + 1].clone(), self.d[i].clone())
    }
}

pub fn gram_schmidt_exact(basis: &Basis) -> Result<ExactGramSchmidt, LllError> {
    let n = basis.len();
    let cols = basis.columns();
    let mut d = vec![Integer::from(1)];
    let mut lambda: Vec<Vec<Integer>> = vec![Vec::new(); n];
    for i in 0..n {
        let mut row = Vec::with_capacity(i);
        for j in 0..=i {
            let mut u = dot(&cols[i], &cols[j]);
            for k in 0..j {
                let ljk = if j == i { &row[k] } else { &lambda[j][k] };
                u = (&d[k + 1] * &u).into();
                u -= &row[k] * ljk;
                u.div_exact_mut(&d[k]);
            }
            if j < i {
                row.push(u);
            } else {
                if u <= 0 {
                    return Err(LllError::Dependent { index: i });
                }
                d.push(u);
            }
        }
        lambda[i] = row;
    }
    Ok(ExactGramSchmidt { d, lambda })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dependent { index: usize },
    SizeReduction { i: usize, j: usize },
    Lovasz { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dependent { index } => write!(f, "vector {index} is dependent"),
            Violation::SizeReduction { i, j } => write!(f, "|mu[{i}][{j}]| exceeds eta"),
            Violation::Lovasz { i } => write!(f, "Lovasz condition fails at index {i}"),
        }
    }
}

/// Checks the (δ, η) conditions exactly:
/// |μ_ij| ≤ η for j < i, and δ‖b*_{i−1}‖² ≤ ‖b*_i‖² + μ²_{i,i−1}‖b*_{i−1}‖².
pub fn verify_reduced(basis: &Basis, params: &ReductionParams) -> Result<(), Violation> {
    let gs = gram_schmidt_exact(basis).map_err(|e| match e {
        LllError::Dependent { index } => Violation::Dependent { index },
        _ => Violation::Dependent { index: 0 },
    })?;
    check_conditions(&gs, params)
}

pub(crate) fn check_conditions(gs: &ExactGramSchmidt, params: &ReductionParams) -> Result<(), Violation> {
    let (eta_n, eta_d) = (params.eta().numer(), params.eta().denom());
    let (delta_n, delta_d) = (params.delta().numer(), params.delta().denom());
    let d = &gs.d;
    for (i, row) in gs.lambda.iter().enumerate() {
        // μ_ij = λ_ij / d_{j+1}; need q|λ| ≤ p d_{j+1}
        for (j, l) in row.iter().enumerate() {
            let lhs = Integer::from(l.abs_ref()) * eta_d;
            let rhs = Integer::from(&d[j + 1] * eta_n);
            if lhs > rhs {
                return Err(Violation::SizeReduction { i, j });
            }
        }
        if i >= 1 {
            // p·d_i² ≤ q·(d_{i+1}·d_{i−1} + λ²_{i,i−1}), with d shifted by one.
            let lam = &row[i - 1];
            let lhs = Integer::from(d[i].square_ref()) * delta_n;
            let mut rhs = Integer::from(&d[i + 1] * &d[i - 1]);
            rhs += Integer::from(lam.square_ref());
            rhs *= delta_d;
            if lhs > rhs {
                return Err(Violation::Lovasz { i });
            }
        }
    }
    Ok(())
}

/// Integral LLL on exact d_i and λ_ij; slow, but needs no floating point.
pub fn exact_lll(basis: &Basis, params: &ReductionParams) -> Result<Basis, LllError> {
    let n = basis.len();
    let mut b: Vec<Vec<Integer>> = basis.columns().to_vec();
    if n == 0 {
        return Ok(basis.clone());
    }
    let (delta_n, delta_d) = (params.delta().numer().clone(), params.delta().denom().clone());
    // d[i] here follows the 1-based convention: d[0] = 1, d[i] = Π_{j≤i} ‖b*_j‖².
    let mut d = vec![Integer::from(1); n + 1];
    let mut lam = vec![vec![Integer::new(); n + 1]; n + 1];

    d[1] = dot(&b[0], &b[0]);
    if d[1] == 0 {
        return Err(LllError::Dependent { index: 0 });
    }
    let mut k = 2usize;
    let mut k_max = 1usize;

    while k <= n {
        if k > k_max {
            k_max = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = Integer::from(&d[i] * &u) - Integer::from(&lam[k][i] * &lam[j][i]);
                    u.div_exact_mut(&d[i - 1]);
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u == 0 {
                        return Err(LllError::Dependent { index: k - 1 });
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            reduce_pair(&mut b, &d, &mut lam, k, k - 1);
            // δ d_{k−1}² > d_k d_{k−2} + λ²  ⇒ swap
            let lhs = Integer::from(d[k - 1].square_ref()) * &delta_n;
            let mut rhs = Integer::from(&d[k] * &d[k - 2]);
            rhs += Integer::from(lam[k][k - 1].square_ref());
            rhs *= &delta_d;
            if lhs > rhs {
                swap(&mut b, &mut d, &mut lam, k, k_max);
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    reduce_pair(&mut b, &d, &mut lam, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Basis::from_columns(b)
}

fn reduce_pair(b: &mut [Vec<Integer>], d: &[Integer], lam: &mut [Vec<Integer>], k: usize, l: usize) {
    let twice = Integer::from(lam[k][l].abs_ref()) * 2u32;
    if twice <= d[l] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l]);
    if q == 0 {
        return;
    }
    let (lo, hi) = b.split_at_mut(k - 1);
    for (t, s) in hi[0].iter_mut().zip(lo[l - 1].iter()) {
        *t -= &q * s;
    }
    let ql = Integer::from(&q * &d[l]);
    lam[k][l] -= ql;
    for i in 1..l {
        let t = Integer::from(&q * &lam[l][i]);
        lam[k][i] -= t;
    }
}

/// Nearest integer to num/den (den > 0), ties away from zero.
pub(crate) fn round_div(num: &Integer, den: &Integer) -> Integer {
    let twice_den = Integer::from(den * 2u32);
    let mag = Integer::from(num.abs_ref()) * 2u32 + den;
    let q = mag / twice_den;
    if *num < 0 {
        -q
    } else {
        q
    }
}

fn swap(b: &mut [Vec<Integer>], d: &mut [Integer], lam: &mut [Vec<Integer>], k: usize, k_max: usize) {
    b.swap(k - 1, k - 2);
    for j in 1..k - 1 {
        let t = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let mut big_b = Integer::from(&d[k - 2] * &d[k]) + Integer::from(l.square_ref());
    big_b.div_exact_mut(&d[k - 1]);
    for i in k + 1..=k_max {
        let t = lam[i][k].clone();
        let mut new_ik = Integer::from(&d[k] * &lam[i][k - 1]) - Integer::from(&l * &t);
        new_ik.div_exact_mut(&d[k - 1]);
        let mut new_ik1 = Integer::from(&big_b * &t) + Integer::from(&l * &new_ik);
        new_ik1.div_exact_mut(&d[k]);
        lam[i][k] = new_ik;
        lam[i][k - 1] = new_ik1;
    }
    d[k - 1] = big_b;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_gram_schmidt_small() {
        // b0 = (1,1,0), b1 = (1,0,1): ‖b0‖² = 2, μ10 = 1/2, ‖b1*‖² = 3/2
        let basis = Basis::from_columns_i64(&[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        let gs = gram_schmidt_exact(&basis).unwrap();
        assert_eq!(gs.d, vec![Integer::from(1), Integer::from(2), Integer::from(3)]);
        assert_eq!(gs.lambda[1][0], 1);
    }

    #[test]
    fn verifier_flags_violations() {
        let params = ReductionParams::default();
        let unreduced = Basis::from_columns_i64(&[vec![1, 0], vec![5, 1]]).unwrap();
        assert_eq!(
            verify_reduced(&unreduced, &params),
            Err(Violation::SizeReduction { i: 1, j: 0 })
        );
        let swapped = Basis::from_columns_i64(&[vec![10, 0], vec![0, 1]]).unwrap();
        assert_eq!(verify_reduced(&swapped, &params), Err(Violation::Lovasz { i: 1 }));
        assert!(verify_reduced(&Basis::identity(4), &params).is_ok());
        let dep = Basis::from_columns_i64(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(verify_reduced(&dep, &params), Err(Violation::Dependent { index: 1 }));
    }

    #[test]
    fn exact_lll_reduces() {
        let params = ReductionParams::default();
        let basis = Basis::from_columns_i64(&[
            vec![1, 0, 0, 31415],
            vec![0, 1, 0, 27182],
            vec![0, 0, 1, 14142],
        ])
        .unwrap();
        let out = exact_lll(&basis, &params).unwrap();
        assert!(verify_reduced(&out, &params).is_ok());
        assert!(super::super::same_lattice(&basis, &out).unwrap());
    }
}
