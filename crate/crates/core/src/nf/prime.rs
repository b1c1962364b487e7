// SPDX-License-Identifier: Apache-2.0

//! Prime ideals of `Z[θ]` via Kummer–Dedekind.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{FieldElement, NumberField};
use super::hnf::column;
use super::ideal::Ideal;
use crate::arith::{is_prime, prime_power, sym_mod};
use crate::error::{Error, Result};
use crate::finite::{factor_mod_p, is_irreducible, reduce_int_poly, FiniteField, PolyRing, PrimeField};

/// A prime `(p, g(θ))` with `g` a monic irreducible factor of `f mod p`
/// (coefficients in `[0, p)`).
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    field: Arc<NumberField>,
    p: BigInt,
    gen_poly: Vec<BigInt>,
    ram_index: u32,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.gen_poly == other.gen_poly && *self.field == *other.field
    }
}

impl Eq for PrimeIdeal {}

impl PrimeIdeal {
    /// Validates `gen_poly` as a factor of the defining polynomial modulo
    /// `p` and derives the ramification index from its multiplicity.
    pub fn new(field: &Arc<NumberField>, p: BigInt, gen_poly: Vec<BigInt>) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let fp = PrimeField::new(p.clone());
        let ring = PolyRing::new(&fp);
        let g = reduce_int_poly(&fp, &gen_poly);
        if g.len() < 2 || !g.last().unwrap().is_one() {
            return Err(Error::InvalidIdeal(
                "prime generator must be monic of positive degree mod p".into(),
            ));
        }
        if !is_irreducible(&fp, &g) {
            return Err(Error::InvalidIdeal("generator polynomial is reducible mod p".into()));
        }
        let mut rest = reduce_int_poly(&fp, field.defining_poly());
        let mut e = 0;
        loop {
            let (q, r) = ring.divrem(&rest, &g);
            if !r.is_empty() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e == 0 {
            return Err(Error::InvalidIdeal(
                "generator polynomial does not divide the defining polynomial mod p".into(),
            ));
        }
        Ok(PrimeIdeal {
            field: field.clone(),
            p,
            gen_poly: g,
            ram_index: e,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn gen_poly(&self) -> &[BigInt] {
        &self.gen_poly
    }

    pub fn res_degree(&self) -> usize {
        self.gen_poly.len() - 1
    }

    pub fn ram_index(&self) -> u32 {
        self.ram_index
    }

    pub fn norm(&self) -> BigInt {
        num_traits::pow(self.p.clone(), self.res_degree())
    }

    pub fn residue_field(&self) -> PrimeField {
        PrimeField::new(self.p.clone())
    }

    /// `g(θ)` as a field element.
    pub fn generator_element(&self) -> FieldElement {
        self.field.element_from_poly(&self.gen_poly)
    }

    pub fn to_ideal(&self) -> Ideal {
        let gens = [self.field.from_int(self.p.clone()), self.generator_element()];
        Ideal::from_generators(&self.field, &gens).expect("p is a nonzero generator")
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym: Vec<BigInt> = self.gen_poly.iter().map(|c| sym_mod(c, &self.p)).collect();
        write!(f, "({}, {})", self.p, super::field::format_poly(&sym, "θ"))
    }
}

/// Factorization of `(p)` into primes of `Z[θ]` with exponents.
pub fn kummer_dedekind(field: &Arc<NumberField>, p: &BigInt) -> Result<Vec<(PrimeIdeal, u32)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let fp = PrimeField::new(p.clone());
    Ok(factor_mod_p(&fp, field.defining_poly())
        .into_iter()
        .map(|(g, e)| {
            (
                PrimeIdeal {
                    field: field.clone(),
                    p: p.clone(),
                    gen_poly: g,
                    ram_index: e,
                },
                e,
            )
        })
        .collect())
}

/// The prime ideal equal to `ideal`, if `ideal` is prime.
pub fn is_prime_ideal(ideal: &Ideal) -> Option<PrimeIdeal> {
    let norm = ideal.integral_norm()?;
    let (p, k) = prime_power(&norm)?;
    let field = ideal.field();
    if !ideal.contains(&field.from_int(p.clone())) {
        return None;
    }
    let fp = PrimeField::new(p.clone());
    let ring = PolyRing::new(&fp);
    let mut g = reduce_int_poly(&fp, field.defining_poly());
    let target = k as usize;
    for j in 0..ideal.degree() {
        if g.len() - 1 == target {
            break;
        }
        let b = reduce_int_poly(&fp, &column(ideal.hnf(), j));
        g = ring.gcd(&g, &b);
    }
    if g.len() - 1 != target || !is_irreducible(&fp, &g) {
        return None;
    }
    let prime = PrimeIdeal::new(field, p, g).ok()?;
    debug_assert!(prime.to_ideal() == *ideal);
    Some(prime)
}

/// Dedekind's criterion: whether `Z[θ]` is maximal at `p`.
pub fn dedekind_maximal_at_p(field: &NumberField, p: &BigInt) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let f = field.defining_poly();
    if !(field.disc() % (p * p)).is_zero() {
        return Ok(true);
    }
    let fp = PrimeField::new(p.clone());
    let ring = PolyRing::new(&fp);
    let factors = factor_mod_p(&fp, f);
    let mut g = vec![BigInt::one()];
    let mut h = vec![BigInt::one()];
    for (gi, e) in &factors {
        g = int_mul(&g, gi);
        for _ in 1..*e {
            h = int_mul(&h, gi);
        }
    }
    let gh = int_mul(&g, &h);
    let n = gh.len().max(f.len());
    let diff: Vec<BigInt> = (0..n)
        .map(|i| {
            let a = gh.get(i).cloned().unwrap_or_default();
            let b = f.get(i).cloned().unwrap_or_default();
            let (q, r) = (a - b).div_rem(p);
            debug_assert!(r.is_zero());
            q
        })
        .collect();
    let big_f = reduce_int_poly(&fp, &diff);
    let gbar = reduce_int_poly(&fp, &g);
    let hbar = reduce_int_poly(&fp, &h);
    let common = ring.gcd(&ring.gcd(&big_f, &gbar), &hbar);
    Ok(common.len() == 1 && fp.one() == common[0])
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
