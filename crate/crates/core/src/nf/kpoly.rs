// SPDX-License-Identifier: Apache-2.0

//! Polynomials with coefficients in `Z[θ]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{sylvester, FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::linalg::berkowitz_det;

/// Discriminant of a monic polynomial over `Z[θ]` (coefficients low to
/// high), `(-1)^{n(n-1)/2} Res(g, g')`, with the resultant evaluated by a
/// division-free determinant.
pub fn poly_disc_over_ok(field: &NumberField, g: &[FieldElement]) -> Result<FieldElement> {
    let d = field.degree();
    for c in g {
        field.check(c.len())?;
        if !c.is_integral() {
            return Err(Error::NonIntegral);
        }
    }
    let n = match g.len().checked_sub(1) {
        None | Some(0) => {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()))
        }
        Some(n) => n,
    };
    if *g.last().unwrap() != field.one() {
        return Err(Error::NonMonic);
    }
    if n == 1 {
        return Ok(field.one());
    }
    let coeffs: Vec<Vec<BigInt>> = g.iter().map(|c| c.numerators().to_vec()).collect();
    let deriv: Vec<Vec<BigInt>> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.iter().map(|v| v * BigInt::from(i)).collect())
        .collect();
    let zero = vec![BigInt::zero(); d];
    let mut one = zero.clone();
    one[0] = BigInt::one();
    let s = sylvester(&coeffs, &deriv, &zero);
    let is_zero = |a: &Vec<BigInt>| a.iter().all(Zero::is_zero);
    let res = berkowitz_det(
        &s,
        &zero,
        &one,
        |a, b| a.iter().zip(b).map(|(x, y)| x + y).collect(),
        |a, b| {
            if is_zero(a) || is_zero(b) {
                zero.clone()
            } else {
                field.mul_coords(a, b)
            }
        },
        |a| a.iter().map(|x| -x).collect(),
    );
    let out = FieldElement::integral(res);
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        field.neg(&out)
    } else {
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminants() {
        let k = NumberField::from_i64(&[5, 0, 1]).unwrap();
        let c = |v: i64| k.from_int(v.into());
        assert_eq!(
            poly_disc_over_ok(&k, &[c(1), c(0), c(1)]).unwrap(),
            c(-4)
        );
        assert_eq!(
            poly_disc_over_ok(&k, &[c(-1), c(-1), c(1)]).unwrap(),
            c(5)
        );
        // x - θ is linear
        assert_eq!(
            poly_disc_over_ok(&k, &[k.neg(&k.theta()), c(1)]).unwrap(),
            c(1)
        );
        // x^2 - θ: disc = 4θ
        let four_theta = k.mul(&c(4), &k.theta()).unwrap();
        assert_eq!(
            poly_disc_over_ok(&k, &[k.neg(&k.theta()), c(0), c(1)]).unwrap(),
            four_theta
        );
        assert_eq!(
            poly_disc_over_ok(&k, &[c(1), c(0), c(2)]).err(),
            Some(Error::NonMonic)
        );
    }

    #[test]
    fn pure_quintic_closed_form() {
        // disc(x^5 + c) = 5^5 c^4
        let k = NumberField::cyclotomic_pow2(8).unwrap();
        let cst = FieldElement::from_i64(&[1, -2, 0, 3]);
        let mut g = vec![cst.clone()];
        g.extend(std::iter::repeat_n(k.zero(), 4));
        g.push(k.one());
        let disc = poly_disc_over_ok(&k, &g).unwrap();
        let expect = k
            .mul(&k.from_int(3125.into()), &k.pow(&cst, 4).unwrap())
            .unwrap();
        assert_eq!(disc, expect);
    }
}
