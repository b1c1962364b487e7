// SPDX-License-Identifier: Apache-2.0

//! LLL reduction of ideal bases under the Minkowski (T2) inner product.
//!
//! The basis and its Gram matrix are kept exactly as integers; the
//! Gram–Schmidt data is recomputed in double-double precision from the exact
//! Gram entries whenever a row is (re)entered.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dd::DD;
use super::field::{FieldElement, NumberField};
use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub const DELTA: f64 = 0.99;
pub const ETA: f64 = 0.501;

/// Complex roots of a monic integer polynomial (Aberth–Ehrlich iteration).
pub fn complex_roots(poly: &[BigInt]) -> Vec<Complex64> {
    let coeffs: Vec<f64> = poly.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let radius = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius, ang)
        })
        .collect();
    for _ in 0..2000 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z
}

/// T2 Gram matrix of the power basis, `Σ_σ Re(σ(θ)^j · conj σ(θ)^k)`.
pub fn power_basis_t2(poly: &[BigInt]) -> Vec<Vec<f64>> {
    let d = poly.len() - 1;
    let roots = complex_roots(poly);
    let mut powers = vec![vec![Complex64::new(1.0, 0.0); d]; d];
    for (r, row) in roots.iter().zip(powers.iter_mut()) {
        for j in 1..d {
            row[j] = row[j - 1] * r;
        }
    }
    let mut g = vec![vec![0.0; d]; d];
    for j in 0..d {
        for k in 0..d {
            g[j][k] = powers.iter().map(|p| (p[j] * p[k].conj()).re).sum();
        }
    }
    g
}

/// Integer Gram matrix used for reduction: the exact T2 form when it has
/// integer entries (CM and totally real power bases), otherwise T2 scaled by
/// `2^32` and rounded.
pub fn integer_power_gram(field: &NumberField) -> Matrix {
    let g = field.t2_gram();
    let integral = g
        .iter()
        .flatten()
        .all(|v| (v - v.round()).abs() < 1e-6 * v.abs().max(1.0));
    let scale = if integral { 1.0 } else { 4294967296.0 };
    g.iter()
        .map(|row| {
            row.iter()
                .map(|v| BigInt::from((v * scale).round() as i128))
                .collect()
        })
        .collect()
}

fn gram_of(basis: &[Vec<BigInt>], gp: &Matrix) -> Matrix {
    let d = gp.len();
    let gb: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| {
            (0..d)
                .map(|i| {
                    (0..d).fold(BigInt::zero(), |acc, j| {
                        if b[j].is_zero() || gp[i][j].is_zero() {
                            acc
                        } else {
                            acc + &gp[i][j] * &b[j]
                        }
                    })
                })
                .collect()
        })
        .collect();
    let n = basis.len();
    let mut g = vec![vec![BigInt::zero(); n]; n];
    for a in 0..n {
        for b in a..n {
            let v: BigInt = basis[a].iter().zip(&gb[b]).map(|(x, y)| x * y).sum();
            g[a][b] = v.clone();
            g[b][a] = v;
        }
    }
    g
}

struct Gso {
    r: Vec<Vec<DD>>,
    mu: Vec<Vec<DD>>,
}

impl Gso {
    fn new(n: usize) -> Self {
        Gso {
            r: vec![vec![DD::ZERO; n]; n],
            mu: vec![vec![DD::ZERO; n]; n],
        }
    }

    fn row(&mut self, k: usize, gram: &Matrix) {
        for j in 0..k {
            let mut acc = DD::from_bigint(&gram[k][j]);
            for i in 0..j {
                acc = acc - self.mu[j][i] * self.r[k][i];
            }
            self.r[k][j] = acc;
            self.mu[k][j] = acc / self.r[j][j];
        }
        let mut acc = DD::from_bigint(&gram[k][k]);
        for j in 0..k {
            acc = acc - self.mu[k][j] * self.r[k][j];
        }
        self.r[k][k] = acc;
    }
}

fn sub_multiple(basis: &mut [Vec<BigInt>], gram: &mut Matrix, k: usize, j: usize, x: &BigInt) {
    let (bj, bk) = if j < k {
        let (lo, hi) = basis.split_at_mut(k);
        (&lo[j], &mut hi[0])
    } else {
        unreachable!("size reduction only against earlier vectors")
    };
    for (a, b) in bk.iter_mut().zip(bj) {
        if !b.is_zero() {
            *a -= x * b;
        }
    }
    let n = gram.len();
    let new_kk = &gram[k][k] - BigInt::from(2) * x * &gram[k][j] + x * x * &gram[j][j];
    for i in 0..n {
        if i != k {
            let v = &gram[k][i] - x * &gram[j][i];
            gram[k][i] = v.clone();
            gram[i][k] = v;
        }
    }
    gram[k][k] = new_kk;
}

/// LLL-reduces integer vectors under the positive-definite Gram form `gp`.
pub fn lll_with_gram(mut basis: Vec<Vec<BigInt>>, gp: &Matrix, delta: f64) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let mut gram = gram_of(&basis, gp);
    let mut gso = Gso::new(n);
    let delta = DD::from_f64(delta);
    let half = DD::from_f64(ETA);
    gso.row(0, &gram);
    let mut k = 1;
    while k < n {
        for _ in 0..64 {
            gso.row(k, &gram);
            if (0..k).all(|j| gso.mu[k][j].abs() <= half) {
                break;
            }
            for j in (0..k).rev() {
                let x = gso.mu[k][j].round();
                if x.is_zero() {
                    continue;
                }
                let xd = DD::from_bigint(&x);
                for i in 0..j {
                    gso.mu[k][i] = gso.mu[k][i] - xd * gso.mu[j][i];
                }
                gso.mu[k][j] = gso.mu[k][j] - xd;
                sub_multiple(&mut basis, &mut gram, k, j, &x);
            }
        }
        let m = gso.mu[k][k - 1];
        let lhs = delta * gso.r[k - 1][k - 1];
        let rhs = gso.r[k][k] + m * m * gso.r[k - 1][k - 1];
        if lhs > rhs {
            basis.swap(k, k - 1);
            gram.swap(k, k - 1);
            for row in gram.iter_mut() {
                row.swap(k, k - 1);
            }
            if k == 1 {
                gso.row(0, &gram);
            } else {
                k -= 1;
            }
        } else {
            k += 1;
        }
    }
    basis
}

/// LLL-reduced Z-basis of a nonzero integral ideal (δ = 0.99).
pub fn lll_reduce(ideal: &Ideal) -> Result<Vec<FieldElement>> {
    if !ideal.is_integral() {
        return Err(Error::NonIntegral);
    }
    let gp = integer_power_gram(ideal.field());
    let reduced = lll_with_gram(ideal.numerator_columns(), &gp, DELTA);
    Ok(reduced.into_iter().map(FieldElement::integral).collect())
}

/// Exact check of size reduction (`|μ| ≤ eta`) and the Lovász condition at
/// `delta`, with rational Gram–Schmidt over the reduction Gram form.
pub fn is_lll_reduced(field: &NumberField, basis: &[FieldElement], delta: f64, eta: f64) -> bool {
    let gp = integer_power_gram(field);
    let cols: Vec<Vec<BigInt>> = basis.iter().map(|b| b.numerators().to_vec()).collect();
    let g = gram_of(&cols, &gp);
    let n = g.len();
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut acc = q(&g[i][j]);
            for k in 0..j {
                acc -= &mu[j][k] * &mu[i][k] * &bstar[k];
            }
            mu[i][j] = acc / &bstar[j];
        }
        let mut acc = q(&g[i][i]);
        for k in 0..i {
            acc -= &mu[i][k] * &mu[i][k] * &bstar[k];
        }
        bstar[i] = acc;
    }
    let to_q = |x: f64| BigRational::from_float(x).expect("finite");
    let eta = to_q(eta);
    let delta = to_q(delta);
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > eta {
                return false;
            }
        }
        if i > 0 {
            let lhs = &delta * &bstar[i - 1];
            let rhs = &bstar[i] + &mu[i][i - 1] * &mu[i][i - 1] * &bstar[i - 1];
            if lhs > rhs {
                return false;
            }
        }
    }
    bstar.iter().all(|b| b > &BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn roots_of_cyclotomic() {
        let k = NumberField::cyclotomic_pow2(64).unwrap();
        let roots = complex_roots(k.defining_poly());
        assert_eq!(roots.len(), 32);
        for r in &roots {
            assert!((r.norm() - 1.0).abs() < 1e-12);
            assert!((r.powu(32) + 1.0).norm() < 1e-10);
        }
        // T2 on Z[ζ] is d times the identity
        let g = integer_power_gram(&k);
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { 32 } else { 0 };
                assert_eq!(v, &BigInt::from(expect));
            }
        }
    }

    #[test]
    fn quadratic_gram_is_exact() {
        let k = NumberField::from_i64(&[5, 0, 1]).unwrap();
        let g = integer_power_gram(&k);
        assert_eq!(g, vec![vec![2.into(), 0.into()], vec![0.into(), 10.into()]]);
        let k = NumberField::from_i64(&[2, -1, 1]).unwrap();
        let g = integer_power_gram(&k);
        assert_eq!(g, vec![vec![2.into(), 1.into()], vec![1.into(), 4.into()]]);
    }

    #[test]
    fn unit_ideal_is_already_reduced() {
        let k = Arc::new(NumberField::from_i64(&[5, 0, 1]).unwrap());
        let b = lll_reduce(&Ideal::unit(&k)).unwrap();
        assert_eq!(b, vec![k.one(), k.theta()]);
        assert!(is_lll_reduced(&k, &b, DELTA, ETA));
    }
}
