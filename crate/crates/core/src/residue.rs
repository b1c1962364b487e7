// SPDX-License-Identifier: Apache-2.0

//! Residue fields `O_K/𝔭 ≅ F_p[y]/(g)` and the complete-splitting test.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finite::{is_irreducible, reduce_int_poly, ExtField, FiniteField, PolyRing, PrimeField};
use crate::nf::{FieldElement, PrimeIdeal};

/// `F_p[y]/(modulus)` with `modulus` monic irreducible of degree `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    ext: ExtField,
    q: BigInt,
}

/// Polynomial over a residue field, low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePoly {
    coeffs: Vec<Vec<BigInt>>,
}

impl ResidueField {
    pub fn new(p: BigInt, modulus: &[BigInt]) -> Result<Self> {
        if !crate::arith::is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let base = PrimeField::new(p);
        let m = reduce_int_poly(&base, modulus);
        if m.len() < 2 || !m.last().is_some_and(|c| c == &BigInt::from(1)) {
            return Err(Error::InvalidPolynomial("residue modulus must be monic".into()));
        }
        if !is_irreducible(&base, &m) {
            return Err(Error::InvalidPolynomial("residue modulus is reducible".into()));
        }
        Ok(Self::from_parts(base, m))
    }

    fn from_parts(base: PrimeField, modulus: Vec<BigInt>) -> Self {
        let ext = ExtField::new(base, modulus);
        let q = ext.order();
        ResidueField { ext, q }
    }

    /// The residue field of a prime ideal.
    pub fn of_prime(prime: &PrimeIdeal) -> Self {
        Self::from_parts(prime.residue_field(), prime.gen_poly().to_vec())
    }

    pub fn p(&self) -> &BigInt {
        self.ext.characteristic()
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn modulus(&self) -> &[BigInt] {
        self.ext.modulus()
    }

    /// Cardinality `p^f`.
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    /// Image of `a` under `θ ↦ y`. Denominators must be prime to `p`.
    pub fn reduce_element(&self, a: &FieldElement) -> Result<Vec<BigInt>> {
        let den = self.ext.base().from_int(a.denominator());
        let inv = self.ext.base().inv(&den).ok_or(Error::NonIntegral)?;
        let v = self.ext.from_base_poly(a.numerators());
        Ok(v.iter().map(|c| self.ext.base().mul(c, &inv)).collect())
    }

    pub fn poly(&self, coeffs: Vec<Vec<BigInt>>) -> ResiduePoly {
        ResiduePoly {
            coeffs: PolyRing::new(&self.ext).normalize(coeffs),
        }
    }

    pub fn mul(&self, a: &ResiduePoly, b: &ResiduePoly) -> ResiduePoly {
        ResiduePoly {
            coeffs: PolyRing::new(&self.ext).mul(&a.coeffs, &b.coeffs),
        }
    }

    /// Number of roots in the field, by exhaustive evaluation.
    pub fn count_roots_naive(&self, g: &ResiduePoly) -> usize {
        let ring = PolyRing::new(&self.ext);
        let p = self.p().clone();
        let f = self.degree();
        let mut digits = vec![BigInt::zero(); f];
        let mut count = 0;
        loop {
            if self.ext.is_zero(&ring.eval(&g.coeffs, &digits)) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == f {
                    return count;
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = BigInt::zero();
                i += 1;
            }
        }
    }
}

impl ResiduePoly {
    pub fn coeffs(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Reduces a polynomial over `Z[θ]` modulo `𝔭`.
pub fn reduce_mod(g: &[FieldElement], prime: &PrimeIdeal) -> Result<ResiduePoly> {
    let rf = ResidueField::of_prime(prime);
    let d = prime.field().degree();
    let mut coeffs = Vec::with_capacity(g.len());
    for c in g {
        prime.field().check(c.len())?;
        debug_assert_eq!(c.len(), d);
        coeffs.push(rf.reduce_element(c)?);
    }
    Ok(rf.poly(coeffs))
}

/// Whether the integral element `a` lies in `𝔭`.
pub fn elem_in_prime(a: &FieldElement, prime: &PrimeIdeal) -> Result<bool> {
    if !a.is_integral() {
        return Err(Error::NonIntegral);
    }
    let rf = ResidueField::of_prime(prime);
    Ok(rf.reduce_element(a)?.iter().all(Zero::is_zero))
}

/// Whether `g` has `deg g` distinct roots in `F`: `x^q ≡ x (mod g)` for
/// squarefree `g`.
pub fn splits_completely(g: &ResiduePoly, field: &ResidueField) -> Result<bool> {
    let ring = PolyRing::new(field.ext());
    let n = match g.degree() {
        None | Some(0) => {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()))
        }
        Some(n) => n,
    };
    let g = ring.monic(&g.coeffs);
    let dg = ring.derivative(&g);
    if dg.is_empty() || !ring.is_one(&ring.gcd(&g, &dg)) {
        return Err(Error::SquarefreeViolation);
    }
    if n == 1 {
        return Ok(true);
    }
    let h = ring.frobenius_x(1, &g);
    Ok(h == ring.rem(&ring.x(), &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;
    use std::sync::Arc;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn qsqrtm5() -> Arc<NumberField> {
        Arc::new(NumberField::from_i64(&[5, 0, 1]).unwrap())
    }

    fn rational_poly(k: &NumberField, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&c| k.from_int(c.into())).collect()
    }

    #[test]
    fn reduce_theta_poly() {
        let k = qsqrtm5();
        let p3 = PrimeIdeal::new(&k, 3.into(), ints(&[2, 1])).unwrap(); // (3, θ - 1)
        let g = vec![k.neg(&k.theta()), k.zero(), k.one()];
        let r = reduce_mod(&g, &p3).unwrap();
        assert_eq!(r.coeffs(), &[ints(&[2]), ints(&[0]), ints(&[1])]);
    }

    #[test]
    fn membership() {
        let k = qsqrtm5();
        let p2 = PrimeIdeal::new(&k, 2.into(), ints(&[1, 1])).unwrap();
        let p3 = PrimeIdeal::new(&k, 3.into(), ints(&[2, 1])).unwrap();
        let p5 = PrimeIdeal::new(&k, 5.into(), ints(&[0, 1])).unwrap();
        let m4 = k.from_int((-4).into());
        assert!(elem_in_prime(&m4, &p2).unwrap());
        assert!(!elem_in_prime(&m4, &p3).unwrap());
        assert!(elem_in_prime(&k.theta(), &p5).unwrap());
    }

    #[test]
    fn splitting_x2_plus_1() {
        let k = qsqrtm5();
        let f = rational_poly(&k, &[1, 0, 1]);
        let p29 = PrimeIdeal::new(&k, 29.into(), ints(&[16, 1])).unwrap();
        let rf = ResidueField::of_prime(&p29);
        let g = reduce_mod(&f, &p29).unwrap();
        assert!(splits_completely(&g, &rf).unwrap());
        assert_eq!(rf.count_roots_naive(&g), 2);

        let p3 = PrimeIdeal::new(&k, 3.into(), ints(&[2, 1])).unwrap();
        let rf = ResidueField::of_prime(&p3);
        let g = reduce_mod(&f, &p3).unwrap();
        assert!(!splits_completely(&g, &rf).unwrap());
        assert_eq!(rf.count_roots_naive(&g), 0);

        let lin = rf.poly(vec![ints(&[2]), ints(&[1])]);
        assert!(splits_completely(&lin, &rf).unwrap());
    }

    #[test]
    fn inert_residue_field() {
        let k = qsqrtm5();
        let p11 = PrimeIdeal::new(&k, 11.into(), ints(&[5, 0, 1])).unwrap();
        let rf = ResidueField::of_prime(&p11);
        assert_eq!(rf.q(), &BigInt::from(121));
        // F_121 contains the fourth roots of unity
        let g = reduce_mod(&rational_poly(&k, &[1, 0, 1]), &p11).unwrap();
        assert!(splits_completely(&g, &rf).unwrap());
        assert_eq!(rf.count_roots_naive(&g), 2);
    }

    #[test]
    fn squarefree_violation() {
        let k = qsqrtm5();
        let p2 = PrimeIdeal::new(&k, 2.into(), ints(&[1, 1])).unwrap();
        let rf = ResidueField::of_prime(&p2);
        let g = reduce_mod(&rational_poly(&k, &[1, 0, 1]), &p2).unwrap();
        assert_eq!(splits_completely(&g, &rf), Err(Error::SquarefreeViolation));
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(ResidueField::new(3.into(), &ints(&[2, 0, 1])).is_err());
        assert!(ResidueField::new(3.into(), &ints(&[1, 0, 1])).is_ok());
    }
}
