// SPDX-License-Identifier: Apache-2.0

//! Hermite normal form of full-rank integer lattices.
//!
//! Convention: lower-triangular column form. Column `j` of `H` is a basis
//! vector supported on rows `≥ j`; `H[i][i] > 0` and `0 ≤ H[i][j] < H[i][i]`
//! for `j < i`. Matrices are row-major.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ext_gcd;
use crate::linalg::Matrix;

fn combine(
    piv: &mut [BigInt],
    w: &mut [BigInt],
    i: usize,
    modulus: Option<&BigInt>,
) {
    if w[i].is_zero() {
        return;
    }
    let (g, x, y) = ext_gcd(&piv[i], &w[i]);
    let a = &piv[i] / &g;
    let b = &w[i] / &g;
    for k in i..piv.len() {
        let p = &piv[k];
        let q = &w[k];
        let np = &x * p + &y * q;
        let nw = &a * q - &b * p;
        match modulus {
            Some(m) if k > i => {
                piv[k] = np.mod_floor(m);
                w[k] = nw.mod_floor(m);
            }
            _ => {
                piv[k] = np;
                w[k] = nw;
            }
        }
    }
    debug_assert!(w[i].is_zero());
}

fn finish(mut cols: Vec<Vec<BigInt>>) -> Matrix {
    let d = cols.len();
    for i in 0..d {
        if cols[i][i].is_negative() {
            for v in cols[i].iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        for j in 0..i {
            let q = cols[j][i].div_floor(&cols[i][i]);
            if !q.is_zero() {
                let (left, right) = cols.split_at_mut(i);
                let ci = &right[0];
                for k in i..d {
                    let t = &q * &ci[k];
                    left[j][k] -= t;
                }
            }
        }
    }
    columns_to_rows(&cols)
}

/// HNF of the lattice spanned by `cols` (each of length `d`), which must
/// contain `modulus · Z^d`. All intermediate entries stay below `modulus`.
pub fn hnf_mod(cols: &[Vec<BigInt>], d: usize, modulus: &BigInt) -> Matrix {
    assert!(modulus.is_positive(), "HNF modulus must be positive");
    let mut work: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|c| c.iter().map(|v| v.mod_floor(modulus)).collect::<Vec<_>>())
        .filter(|c: &Vec<BigInt>| c.iter().any(|v| !v.is_zero()))
        .collect();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut piv = vec![BigInt::zero(); d];
        piv[i] = modulus.clone();
        for w in work.iter_mut() {
            combine(&mut piv, w, i, Some(modulus));
        }
        work.retain(|c| c.iter().any(|v| !v.is_zero()));
        out.push(piv);
    }
    finish(out)
}

/// HNF without a modulus; `cols` must span a full-rank lattice. Coefficients
/// may grow, so this is intended for small inputs and cross-checks.
pub fn hnf_plain(cols: &[Vec<BigInt>], d: usize) -> Option<Matrix> {
    let mut work: Vec<Vec<BigInt>> = cols.to_vec();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let pos = work.iter().position(|c| !c[i].is_zero())?;
        let mut piv = work.swap_remove(pos);
        for w in work.iter_mut() {
            combine(&mut piv, w, i, None);
        }
        work.retain(|c| c.iter().any(|v| !v.is_zero()));
        out.push(piv);
    }
    Some(finish(out))
}

pub fn columns_to_rows(cols: &[Vec<BigInt>]) -> Matrix {
    let d = cols.len();
    (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect()
}

pub fn rows_to_columns(h: &Matrix) -> Vec<Vec<BigInt>> {
    columns_to_rows(h)
}

/// Column `j` of a row-major matrix.
pub fn column(h: &Matrix, j: usize) -> Vec<BigInt> {
    h.iter().map(|row| row[j].clone()).collect()
}

/// Product of the diagonal.
pub fn hnf_det(h: &Matrix) -> BigInt {
    (0..h.len()).fold(BigInt::one(), |acc, i| acc * &h[i][i])
}

/// Checks the canonical-form conditions.
pub fn is_hnf(h: &Matrix) -> bool {
    let d = h.len();
    for i in 0..d {
        if h[i].len() != d || !h[i][i].is_positive() {
            return false;
        }
        for j in 0..d {
            let v = &h[i][j];
            if j > i && !v.is_zero() {
                return false;
            }
            if j < i && (v.is_negative() || v >= &h[i][i]) {
                return false;
            }
        }
    }
    true
}

/// Coordinates of `v` in the basis `h`, if `v` lies in the lattice.
pub fn solve_in_basis(h: &Matrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = h.len();
    let mut r = v.to_vec();
    let mut coeffs = vec![BigInt::zero(); d];
    for i in 0..d {
        let (q, rem) = r[i].div_rem(&h[i][i]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for k in i..d {
                let t = &q * &h[k][i];
                r[k] -= t;
            }
        }
        coeffs[i] = q;
    }
    Some(coeffs)
}

pub fn contains(h: &Matrix, v: &[BigInt]) -> bool {
    solve_in_basis(h, v).is_some()
}

/// Canonical representative of `v` modulo the lattice: coordinate `i` lands
/// in `[0, H[i][i])`.
pub fn reduce_mod_lattice(h: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    let d = h.len();
    let mut r = v.to_vec();
    for i in 0..d {
        let q = r[i].div_floor(&h[i][i]);
        if !q.is_zero() {
            for k in i..d {
                let t = &q * &h[k][i];
                r[k] -= t;
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn modular_matches_plain() {
        let cols = vec![v(&[4, 6, 2]), v(&[2, 0, 8]), v(&[6, 3, 3]), v(&[1, 1, 1])];
        let plain = hnf_plain(&cols, 3).unwrap();
        let d = crate::linalg::det(&columns_to_rows(&cols[1..])).abs();
        let modular = hnf_mod(&cols, 3, &d);
        assert!(is_hnf(&plain));
        assert_eq!(plain, modular);
    }

    #[test]
    fn two_dimensional_ideal() {
        // (2, 1+θ) in Z[√-5]: generators 2, 2θ, 1+θ, θ-5
        let cols = vec![v(&[2, 0]), v(&[0, 2]), v(&[1, 1]), v(&[-5, 1])];
        let h = hnf_mod(&cols, 2, &BigInt::from(2));
        assert_eq!(h, vec![v(&[1, 0]), v(&[1, 2])]);
        assert_eq!(hnf_det(&h), BigInt::from(2));
        assert!(contains(&h, &v(&[3, 1])));
        assert!(!contains(&h, &v(&[1, 0])));
        assert_eq!(reduce_mod_lattice(&h, &v(&[5, 4])), v(&[0, 1]));
    }
}
