// SPDX-License-Identifier: Apache-2.0

//! Exact integer matrix routines.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Square matrix stored row-major.
pub type Matrix = Vec<Vec<BigInt>>;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Matrix = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
            match swap {
                None => return BigInt::zero(),
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Division-free determinant (Berkowitz) over any commutative ring, given the
/// ring operations. Used for resultants over orders where exact division is
/// unavailable.
pub fn berkowitz_det<T: Clone>(
    m: &[Vec<T>],
    zero: &T,
    one: &T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
) -> T {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    // characteristic polynomial coefficients of the leading r×r block,
    // highest degree first
    let mut poly: Vec<T> = vec![one.clone(), neg(&m[0][0])];
    for r in 1..n {
        // column of the Toeplitz matrix for block r
        let a_rr = &m[r][r];
        let row: Vec<T> = m[r][..r].to_vec();
        let col: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        let sub: Vec<Vec<T>> = (0..r).map(|i| m[i][..r].to_vec()).collect();
        // t[k] = -R A^{k-2} C terms
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(one.clone());
        toeplitz.push(neg(a_rr));
        let mut v = col.clone();
        for _ in 0..r {
            let rc = row
                .iter()
                .zip(&v)
                .fold(zero.clone(), |acc, (a, b)| add(&acc, &mul(a, b)));
            toeplitz.push(neg(&rc));
            v = (0..r)
                .map(|i| {
                    sub[i]
                        .iter()
                        .zip(&v)
                        .fold(zero.clone(), |acc, (a, b)| add(&acc, &mul(a, b)))
                })
                .collect();
        }
        // new poly = Toeplitz(t) · poly
        let mut next = vec![zero.clone(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, c) in poly.iter().enumerate() {
                if i >= j {
                    *slot = add(slot, &mul(&toeplitz[i - j], c));
                }
            }
        }
        poly = next;
    }
    let c = poly[n].clone();
    if n.is_multiple_of(2) {
        c
    } else {
        neg(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn bareiss_matches_hand_values() {
        assert_eq!(det(&mat(&[&[2, 0], &[1, 2]])), BigInt::from(4));
        assert_eq!(
            det(&mat(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]])),
            BigInt::from(-3)
        );
        assert_eq!(det(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn berkowitz_agrees_with_bareiss() {
        let m = mat(&[
            &[3, -1, 4, 1],
            &[5, 9, -2, 6],
            &[5, 3, 5, -8],
            &[9, 7, 9, 3],
        ]);
        let b = berkowitz_det(
            &m,
            &BigInt::zero(),
            &BigInt::one(),
            |a, b| a + b,
            |a, b| a * b,
            |a| -a,
        );
        assert_eq!(b, det(&m));
    }
}
