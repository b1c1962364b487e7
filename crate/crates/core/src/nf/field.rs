// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime_u64, primes_up_to, trial_factor};
use crate::error::{Error, Result};
use crate::finite::{factor_mod_p, PrimeField};
use crate::linalg::{det, Matrix};

/// Element of `K = Q[x]/(f)` in the power basis, stored as integer
/// numerators over a common positive denominator in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub fn integral(coords: Vec<BigInt>) -> Self {
        FieldElement {
            num: coords,
            den: BigInt::one(),
        }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self::integral(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut e = FieldElement { num, den };
        e.normalize();
        e
    }

    pub fn from_rationals(coords: &[BigRational]) -> Self {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::new(num, den)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Rational integer value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = format_poly(&self.num, "θ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// Renders integer coefficients (low to high) as a polynomial in `var`.
pub fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let body = if i == 0 {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else {
            format!("{mag}{mono}")
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (sign, body)) in terms.into_iter().enumerate() {
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Some reduction modulo a prime was irreducible.
    Certified,
    /// Passed the screen without a certificate.
    Unproven,
}

/// A monogenic number field `Q[x]/(f)`, computing in the order `Z[θ]`.
#[derive(Debug)]
pub struct NumberField {
    poly: Vec<BigInt>,
    disc: BigInt,
    irreducibility: Irreducibility,
    t2_gram: OnceLock<Vec<Vec<f64>>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for NumberField {}

impl Clone for NumberField {
    fn clone(&self) -> Self {
        NumberField {
            poly: self.poly.clone(),
            disc: self.disc.clone(),
            irreducibility: self.irreducibility,
            t2_gram: OnceLock::new(),
        }
    }
}

impl NumberField {
    /// Builds the field from a monic defining polynomial (low-to-high).
    pub fn new(poly: Vec<BigInt>) -> Result<Self> {
        if poly.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if !poly.last().unwrap().is_one() {
            return Err(Error::NonMonic);
        }
        let disc = poly_discriminant(&poly);
        if disc.is_zero() {
            return Err(Error::InvalidPolynomial(
                "zero discriminant: repeated factor".into(),
            ));
        }
        let d = poly.len() - 1;
        if d > 1 {
            if let Some(r) = integer_root(&poly) {
                return Err(Error::InvalidPolynomial(format!(
                    "reducible: has the rational root {r}"
                )));
            }
        }
        let irreducibility = screen_irreducibility(&poly, &disc);
        Ok(NumberField {
            poly,
            disc,
            irreducibility,
            t2_gram: OnceLock::new(),
        })
    }

    pub fn from_i64(poly: &[i64]) -> Result<Self> {
        Self::new(poly.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `Q(ζ_m)` for `m` a power of two, `f = x^(m/2) + 1`.
    pub fn cyclotomic_pow2(m: usize) -> Result<Self> {
        assert!(m.is_power_of_two() && m >= 4);
        let mut p = vec![BigInt::zero(); m / 2 + 1];
        p[0] = BigInt::one();
        p[m / 2] = BigInt::one();
        Self::new(p)
    }

    pub fn defining_poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::integral(vec![BigInt::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, n: BigInt) -> FieldElement {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = n;
        FieldElement::integral(v)
    }

    /// The generator `θ` (equals the rational root when `d = 1`).
    pub fn theta(&self) -> FieldElement {
        let mut v = vec![BigInt::zero(); self.degree() + 1];
        v[1] = BigInt::one();
        FieldElement::integral(self.reduce_int_poly(&v))
    }

    /// Element from an arbitrary-length integer polynomial in `θ`.
    pub fn element_from_poly(&self, coeffs: &[BigInt]) -> FieldElement {
        FieldElement::integral(self.reduce_int_poly(coeffs))
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<FieldElement> {
        self.check(coords.len())?;
        Ok(FieldElement::integral(coords))
    }

    pub(crate) fn check(&self, len: usize) -> Result<()> {
        if len != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                got: len,
            });
        }
        Ok(())
    }

    /// Reduces an integer polynomial of any length modulo `f`.
    pub fn reduce_int_poly(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut v = coeffs.to_vec();
        if v.len() < d {
            v.resize(d, BigInt::zero());
            return v;
        }
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !self.poly[j].is_zero() {
                    let t = &c * &self.poly[j];
                    v[k - d + j] -= t;
                }
            }
        }
        v.truncate(d);
        v
    }

    /// Product of two integer coordinate vectors modulo `f`.
    pub(crate) fn mul_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce_int_poly(&prod)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a.len())?;
        self.check(b.len())?;
        Ok(FieldElement::new(
            self.mul_coords(&a.num, &b.num),
            &a.den * &b.den,
        ))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a.len())?;
        self.check(b.len())?;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Ok(FieldElement::new(num, &a.den * &b.den))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            num: a.num.iter().map(|c| -c).collect(),
            den: a.den.clone(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u32) -> Result<FieldElement> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Matrix of multiplication by an integral coordinate vector: column `k`
    /// holds `a·θ^k`. Row-major.
    pub fn mul_matrix(&self, a: &[BigInt]) -> Matrix {
        let d = self.degree();
        let mut m = vec![vec![BigInt::zero(); d]; d];
        let mut col = a.to_vec();
        for k in 0..d {
            for i in 0..d {
                m[i][k] = col[i].clone();
            }
            if k + 1 < d {
                col = self.mul_by_theta(&col);
            }
        }
        m
    }

    pub(crate) fn mul_by_theta(&self, a: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let top = a[d - 1].clone();
        let mut out = Vec::with_capacity(d);
        out.push(BigInt::zero());
        out.extend_from_slice(&a[..d - 1]);
        if !top.is_zero() {
            for j in 0..d {
                if !self.poly[j].is_zero() {
                    out[j] -= &top * &self.poly[j];
                }
            }
        }
        out
    }

    /// Norm of an integral coordinate vector.
    pub(crate) fn norm_coords(&self, a: &[BigInt]) -> BigInt {
        det(&self.mul_matrix(a))
    }

    pub fn norm(&self, a: &FieldElement) -> Result<BigRational> {
        self.check(a.len())?;
        let n = self.norm_coords(&a.num);
        let dd = num_traits::pow(a.den.clone(), self.degree());
        Ok(BigRational::new(n, dd))
    }

    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a.len())?;
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        // a^{-1} = (1/N) M_a^{-1} e_0 scaled; solve M_a x = den·e_0 exactly
        let m = self.mul_matrix(&a.num);
        let mut rhs = vec![BigRational::zero(); self.degree()];
        rhs[0] = BigRational::from_integer(a.den.clone());
        let sol = solve_rational(&m, rhs);
        Ok(FieldElement::from_rationals(&sol))
    }

    /// Trace-form Gram matrix of the power basis under the Minkowski
    /// embedding, `G[j][k] = Σ_σ Re(σ(θ)^j · conj σ(θ)^k)`.
    pub fn t2_gram(&self) -> &Vec<Vec<f64>> {
        self.t2_gram.get_or_init(|| crate::nf::lll::power_basis_t2(&self.poly))
    }

    /// Rational primes `p < bound` with `p² | Δ(f)`.
    pub fn square_disc_primes(&self, bound: u64) -> Vec<BigInt> {
        let (fac, _) = trial_factor(&self.disc, bound);
        fac.into_iter()
            .filter(|(_, k)| *k >= 2)
            .map(|(p, _)| p)
            .collect()
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", format_poly(&self.poly, "x"))
    }
}

/// Solves `m x = rhs` over the rationals; `m` must be nonsingular.
pub(crate) fn solve_rational(m: &[Vec<BigInt>], rhs: Vec<BigRational>) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut v: Vec<BigRational> = row
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            v.push(r);
            v
        })
        .collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !a[i][k].is_zero()).expect("singular matrix");
        a.swap(k, piv);
        let inv = a[k][k].recip();
        for j in k..=n {
            a[k][j] = &a[k][j] * &inv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

/// Discriminant of a monic integer polynomial, `(-1)^{n(n-1)/2} Res(f, f')`.
pub fn poly_discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    if n == 1 {
        return BigInt::one();
    }
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let res = det(&sylvester(f, &df, &BigInt::zero()));
    let lc = f[n].clone();
    let r = res / lc;
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), low-to-high inputs.
pub(crate) fn sylvester<T: Clone>(a: &[T], b: &[T], zero: &T) -> Vec<Vec<T>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut s = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s[n + i][i + j] = c.clone();
        }
    }
    s
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// An integer root of `f`, searched among divisors of the constant term when
/// it factors over small primes.
fn integer_root(f: &[BigInt]) -> Option<BigInt> {
    let c0 = &f[0];
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let (fac, rest) = trial_factor(c0, 100_000);
    if !rest.is_one() {
        return None;
    }
    let mut divisors = vec![BigInt::one()];
    for (p, k) in fac {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divisors = next;
        if divisors.len() > 100_000 {
            return None;
        }
    }
    divisors
        .into_iter()
        .flat_map(|d| [d.clone(), -d])
        .find(|r| eval_int(f, r).is_zero())
}

/// Factor-degree screen modulo five primes not dividing the discriminant.
fn screen_irreducibility(f: &[BigInt], disc: &BigInt) -> Irreducibility {
    let d = f.len() - 1;
    if d == 1 {
        return Irreducibility::Certified;
    }
    let mut tried = 0;
    for p in primes_up_to(10_000) {
        if tried == 5 {
            break;
        }
        if !is_prime_u64(p) || (disc % BigInt::from(p)).is_zero() {
            continue;
        }
        tried += 1;
        let fac = factor_mod_p(&PrimeField::new(BigInt::from(p)), f);
        if fac.len() == 1 && fac[0].1 == 1 {
            return Irreducibility::Certified;
        }
    }
    Irreducibility::Unproven
}
