// SPDX-License-Identifier: Apache-2.0

//! Finite fields `F_p`, `F_p[y]/(m)` and dense polynomials over them.
//!
//! Polynomials are coefficient vectors, low degree first, with no trailing
//! zeros; the zero polynomial is the empty vector.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::mod_inverse;

pub trait FiniteField {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn characteristic(&self) -> &BigInt;
    /// Degree over the prime field.
    fn degree(&self) -> usize;

    fn order(&self) -> BigInt {
        num_traits::pow(self.characteristic().clone(), self.degree())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: BigInt,
}

impl PrimeField {
    /// `p` is assumed prime; callers validate.
    pub fn new(p: BigInt) -> Self {
        assert!(p > BigInt::one(), "modulus must exceed 1");
        PrimeField { p }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
}

impl FiniteField for PrimeField {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s.is_negative() {
            s + &self.p
        } else {
            s
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &self.p
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &self.p - a
        }
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        mod_inverse(a, &self.p)
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.p)
    }
    fn characteristic(&self) -> &BigInt {
        &self.p
    }
    fn degree(&self) -> usize {
        1
    }
}

/// `F_p[y]/(m(y))` for a monic irreducible `m`. Elements are vectors of
/// length `deg m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Vec<BigInt>,
}

impl ExtField {
    pub fn new(base: PrimeField, modulus: Vec<BigInt>) -> Self {
        assert!(modulus.len() >= 2, "modulus must have degree at least 1");
        assert!(modulus.last().unwrap().is_one(), "modulus must be monic");
        ExtField { base, modulus }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn pad(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        v.resize(self.degree(), BigInt::zero());
        v
    }

    /// Reduces an arbitrary `F_p[y]` polynomial (coefficients already in `[0, p)`).
    pub fn reduce(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        let ring = PolyRing::new(&self.base);
        self.pad(ring.rem(&ring.normalize(v), &self.modulus))
    }

    pub fn from_base_poly(&self, v: &[BigInt]) -> Vec<BigInt> {
        let v = v.iter().map(|c| self.base.from_int(c)).collect();
        self.reduce(v)
    }

    /// The class of `y`.
    pub fn generator(&self) -> Vec<BigInt> {
        self.from_base_poly(&[BigInt::zero(), BigInt::one()])
    }
}

impl FiniteField for ExtField {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.degree()]
    }
    fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }
    fn is_zero(&self, a: &Vec<BigInt>) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let n = self.degree();
        if n == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let p = self.base.p();
        for c in prod.iter_mut() {
            *c = c.mod_floor(p);
        }
        // reduce by the monic modulus from the top
        for k in (n..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &c * &self.modulus[j];
                prod[k - n + j] = (&prod[k - n + j] - t).mod_floor(p);
            }
        }
        prod.truncate(n);
        prod
    }
    fn neg(&self, a: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn inv(&self, a: &Vec<BigInt>) -> Option<Vec<BigInt>> {
        let ring = PolyRing::new(&self.base);
        let a_poly = ring.normalize(a.clone());
        if a_poly.is_empty() {
            return None;
        }
        let (g, s, _) = ring.ext_gcd(&a_poly, &self.modulus);
        (g.len() == 1).then(|| self.pad(s))
    }
    fn from_int(&self, n: &BigInt) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = self.base.from_int(n);
        v
    }
    fn characteristic(&self) -> &BigInt {
        self.base.p()
    }
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Polynomial arithmetic over a finite field.
pub struct PolyRing<'a, F: FiniteField> {
    field: &'a F,
}

impl<'a, F: FiniteField> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        self.field
    }

    pub fn normalize(&self, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    /// Degree, with the zero polynomial at `None`.
    pub fn degree(a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn x(&self) -> Vec<F::Elem> {
        vec![self.field.zero(), self.field.one()]
    }

    pub fn constant(&self, c: F::Elem) -> Vec<F::Elem> {
        self.normalize(vec![c])
    }

    pub fn is_one(&self, a: &[F::Elem]) -> bool {
        a.len() == 1 && a[0] == self.field.one()
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        let out = (0..n)
            .map(|i| self.field.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.normalize(out)
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        let out = (0..n)
            .map(|i| self.field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.normalize(out)
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &t);
            }
        }
        self.normalize(out)
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        self.normalize(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let lead_inv = self
            .field
            .inv(b.last().unwrap())
            .expect("leading coefficient invertible");
        let mut r = a.to_vec();
        let mut q = vec![self.field.zero(); a.len() - db];
        for k in (db..r.len()).rev() {
            if self.field.is_zero(&r[k]) {
                continue;
            }
            let c = self.field.mul(&r[k], &lead_inv);
            for j in 0..=db {
                let t = self.field.mul(&c, &b[j]);
                r[k - db + j] = self.field.sub(&r[k - db + j], &t);
            }
            q[k - db] = c;
        }
        r.truncate(db);
        (self.normalize(q), self.normalize(r))
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.len() < b.len() {
            return a.to_vec();
        }
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `g` monic and `s·a + t·b = g`.
    pub fn ext_gcd(
        &self,
        a: &[F::Elem],
        b: &[F::Elem],
    ) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![self.field.one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![self.field.one()]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                (
                    self.scale(&r0, &inv),
                    self.scale(&s0, &inv),
                    self.scale(&t0, &inv),
                )
            }
        }
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_int(&BigInt::from(i))))
            .collect();
        self.normalize(out)
    }

    pub fn mulmod(&self, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    /// `base^exp mod m` by square-and-multiply.
    pub fn powmod(&self, base: &[F::Elem], exp: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut result = self.rem(&[self.field.one()], m);
        let base = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.mulmod(&result, &result, m);
            if exp.bit(i) {
                result = self.mulmod(&result, &base, m);
            }
        }
        result
    }

    /// Evaluates at a field element (Horner).
    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        a.iter().rev().fold(self.field.zero(), |acc, c| {
            self.field.add(&self.field.mul(&acc, x), c)
        })
    }

    /// `x^(|F|^k) mod m`, computed as `k·deg F` successive `p`-th powers.
    pub fn frobenius_x(&self, k: usize, m: &[F::Elem]) -> Vec<F::Elem> {
        let p = self.field.characteristic().magnitude().clone();
        let mut h = self.rem(&self.x(), m);
        for _ in 0..k * self.field.degree() {
            h = self.powmod(&h, &p, m);
        }
        h
    }
}

/// Monic irreducible factors of a polynomial over `F_p` with multiplicities,
/// sorted by degree and then lexicographically from the top coefficient down.
pub fn factor_mod_p(field: &PrimeField, f: &[BigInt]) -> Vec<(Vec<BigInt>, u32)> {
    let ring = PolyRing::new(field);
    let f = ring.monic(&ring.normalize(f.iter().map(|c| field.from_int(c)).collect()));
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    for (sq, mult) in squarefree_decomposition(&ring, &f) {
        for (g, k) in distinct_degree(&ring, &sq) {
            for factor in equal_degree(&ring, &g, k) {
                out.push((factor, mult));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
    });
    out
}

fn pth_root(field: &PrimeField, a: &[BigInt]) -> Vec<BigInt> {
    let p = field.p().to_usize_checked();
    a.iter().step_by(p).cloned().collect()
}

trait ToUsizeChecked {
    fn to_usize_checked(&self) -> usize;
}

impl ToUsizeChecked for BigInt {
    fn to_usize_checked(&self) -> usize {
        use num_traits::ToPrimitive;
        self.to_usize().expect("characteristic fits in usize")
    }
}

fn squarefree_decomposition(
    ring: &PolyRing<'_, PrimeField>,
    f: &[BigInt],
) -> Vec<(Vec<BigInt>, u32)> {
    let mut out = Vec::new();
    let fp = ring.derivative(f);
    if fp.is_empty() {
        // f is a p-th power
        let root = pth_root(ring.field(), f);
        let p = ring.field().p().to_usize_checked() as u32;
        for (g, k) in squarefree_decomposition(ring, &root) {
            out.push((g, k * p));
        }
        return out;
    }
    let mut c = ring.gcd(f, &fp);
    let mut w = ring.divrem(f, &c).0;
    let mut i = 1u32;
    while !ring.is_one(&w) {
        let y = ring.gcd(&w, &c);
        let fac = ring.divrem(&w, &y).0;
        if !ring.is_one(&fac) {
            out.push((ring.monic(&fac), i));
        }
        i += 1;
        w = y;
        c = ring.divrem(&c, &w).0;
    }
    if !ring.is_one(&c) {
        let root = pth_root(ring.field(), &c);
        let p = ring.field().p().to_usize_checked() as u32;
        for (g, k) in squarefree_decomposition(ring, &root) {
            out.push((g, k * p));
        }
    }
    out
}

fn distinct_degree(ring: &PolyRing<'_, PrimeField>, f: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    let p = ring.field().p().magnitude().clone();
    let mut h = ring.x();
    let mut k = 0;
    while rest.len() > 1 {
        k += 1;
        if 2 * k > rest.len() - 1 {
            let deg = rest.len() - 1;
            out.push((rest, deg));
            break;
        }
        h = ring.powmod(&h, &p, &rest);
        let g = ring.gcd(&rest, &ring.sub(&h, &ring.x()));
        if !ring.is_one(&g) {
            rest = ring.divrem(&rest, &g).0;
            h = ring.rem(&h, &rest);
            out.push((g, k));
        }
    }
    out
}

fn equal_degree(ring: &PolyRing<'_, PrimeField>, f: &[BigInt], k: usize) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == k {
        return vec![ring.monic(f)];
    }
    let p = ring.field().p().clone();
    // seeded from the input so repeated calls are reproducible
    let seed = f.iter().fold(0xcbf29ce484222325u64, |acc, c| {
        let low = c.iter_u64_digits().next().unwrap_or(0);
        (acc ^ low).wrapping_mul(0x100000001b3)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigInt::from(2);
    loop {
        let a: Vec<BigInt> = (0..n).map(|_| rng.gen_bigint_range(&BigInt::zero(), &p)).collect();
        let a = ring.normalize(a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == two {
            // trace map to F_2
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                t = ring.mulmod(&t, &t, f);
                acc = ring.add(&acc, &t);
            }
            acc
        } else {
            let e = (num_traits::pow(p.clone(), k) - 1u32) / 2u32;
            let t = ring.powmod(&a, e.magnitude(), f);
            ring.sub(&t, &[BigInt::one()])
        };
        let g = ring.gcd(f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let h = ring.divrem(f, &g).0;
            let mut out = equal_degree(ring, &g, k);
            out.extend(equal_degree(ring, &ring.monic(&h), k));
            return out;
        }
    }
}

/// Ben-Or irreducibility test for a polynomial over `F_p`.
pub fn is_irreducible(field: &PrimeField, f: &[BigInt]) -> bool {
    let ring = PolyRing::new(field);
    let f = ring.monic(&ring.normalize(f.iter().map(|c| field.from_int(c)).collect()));
    let n = match f.len().checked_sub(1) {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let p = field.p().magnitude().clone();
    let mut h = ring.x();
    for _ in 1..=n / 2 {
        h = ring.powmod(&h, &p, &f);
        let g = ring.gcd(&f, &ring.sub(&h, &ring.x()));
        if !ring.is_one(&g) {
            return false;
        }
    }
    true
}

/// Reduces integer coefficients into `F_p`.
pub fn reduce_int_poly(field: &PrimeField, f: &[BigInt]) -> Vec<BigInt> {
    PolyRing::new(field).normalize(f.iter().map(|c| field.from_int(c)).collect())
}
