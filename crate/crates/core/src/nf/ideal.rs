// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElement, NumberField};
use super::hnf::{column, contains, hnf_det, hnf_mod, is_hnf};
use crate::error::{Error, Result};
use crate::linalg::{det, Matrix};

/// A nonzero fractional ideal of `Z[θ]`, stored as `(1/denominator)·L` with
/// `L` an integral lattice in canonical HNF and the pair in lowest terms.
#[derive(Clone, Debug)]
pub struct Ideal {
    field: Arc<NumberField>,
    hnf: Matrix,
    den: BigInt,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf && self.den == other.den && *self.field == *other.field
    }
}

impl Eq for Ideal {}

impl Ideal {
    fn from_parts(field: Arc<NumberField>, hnf: Matrix, den: BigInt) -> Self {
        let mut ideal = Ideal { field, hnf, den };
        ideal.normalize();
        ideal
    }

    fn normalize(&mut self) {
        let content = self
            .hnf
            .iter()
            .flatten()
            .fold(self.den.clone(), |acc, v| acc.gcd(v));
        if !content.is_one() {
            for v in self.hnf.iter_mut().flatten() {
                *v /= &content;
            }
            self.den /= &content;
        }
    }

    /// The whole order `Z[θ]`.
    pub fn unit(field: &Arc<NumberField>) -> Self {
        let d = field.degree();
        let hnf = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Ideal {
            field: field.clone(),
            hnf,
            den: BigInt::one(),
        }
    }

    /// The `Z[θ]`-module generated by `gens`.
    pub fn from_generators(field: &Arc<NumberField>, gens: &[FieldElement]) -> Result<Self> {
        let d = field.degree();
        for g in gens {
            field.check(g.len())?;
        }
        let nonzero: Vec<&FieldElement> = gens.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let den = nonzero
            .iter()
            .fold(BigInt::one(), |acc, g| acc.lcm(g.denominator()));
        let scaled: Vec<Vec<BigInt>> = nonzero
            .iter()
            .map(|g| {
                let s = &den / g.denominator();
                g.numerators().iter().map(|c| c * &s).collect()
            })
            .collect();
        // an integer inside the module: rational generators directly, else norms
        let rational: Vec<BigInt> = scaled
            .iter()
            .filter(|v| v[1..].iter().all(Zero::is_zero))
            .map(|v| v[0].abs())
            .collect();
        let modulus = if rational.is_empty() {
            scaled
                .iter()
                .fold(BigInt::zero(), |acc, v| acc.gcd(&field.norm_coords(v)))
        } else {
            rational.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
        };
        let mut cols = Vec::with_capacity(d * scaled.len());
        for v in &scaled {
            let m = field.mul_matrix(v);
            cols.extend((0..d).map(|k| column(&m, k)));
        }
        Ok(Self::from_parts(field.clone(), hnf_mod(&cols, d, &modulus), den))
    }

    pub fn principal(field: &Arc<NumberField>, a: &FieldElement) -> Result<Self> {
        Self::from_generators(field, std::slice::from_ref(a))
    }

    /// From an integral basis matrix (row-major, columns are basis vectors).
    /// The matrix is brought to canonical HNF and checked for closure under
    /// multiplication by `θ`.
    pub fn from_basis_matrix(
        field: &Arc<NumberField>,
        basis: Matrix,
        den: BigInt,
    ) -> Result<Self> {
        let d = field.degree();
        if basis.len() != d || basis.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidIdeal(format!("basis must be {d}x{d}")));
        }
        if !den.is_positive() {
            return Err(Error::InvalidIdeal("denominator must be positive".into()));
        }
        let hnf = if is_hnf(&basis) {
            basis
        } else {
            let dt = det(&basis).abs();
            if dt.is_zero() {
                return Err(Error::InvalidIdeal("basis is singular".into()));
            }
            let cols: Vec<Vec<BigInt>> = (0..d).map(|j| column(&basis, j)).collect();
            hnf_mod(&cols, d, &dt)
        };
        for j in 0..d {
            let shifted = field.mul_by_theta(&column(&hnf, j));
            if !contains(&hnf, &shifted) {
                return Err(Error::InvalidIdeal(
                    "lattice is not closed under multiplication by θ".into(),
                ));
            }
        }
        Ok(Self::from_parts(field.clone(), hnf, den))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Canonical HNF of the numerator lattice (row-major).
    pub fn hnf(&self) -> &Matrix {
        &self.hnf
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit(&self) -> bool {
        self.is_integral() && self.hnf_det().is_one()
    }

    fn hnf_det(&self) -> BigInt {
        hnf_det(&self.hnf)
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(
            self.hnf_det(),
            num_traits::pow(self.den.clone(), self.degree()),
        )
    }

    /// Norm of an integral ideal as an integer.
    pub fn integral_norm(&self) -> Option<BigInt> {
        self.is_integral().then(|| self.hnf_det())
    }

    /// Z-basis of the ideal (HNF columns divided by the denominator).
    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.degree())
            .map(|j| FieldElement::new(column(&self.hnf, j), self.den.clone()))
            .collect()
    }

    /// Integral basis columns of the numerator lattice.
    pub fn numerator_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.degree()).map(|j| column(&self.hnf, j)).collect()
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        if a.len() != self.degree() {
            return false;
        }
        // a = num/den_a ∈ L/den  ⇔  num·den ∈ den_a·L
        let scaled: Vec<BigInt> = a.numerators().iter().map(|c| c * &self.den).collect();
        let da = a.denominator();
        if da.is_one() {
            return contains(&self.hnf, &scaled);
        }
        let h: Matrix = self
            .hnf
            .iter()
            .map(|r| r.iter().map(|v| v * da).collect())
            .collect();
        contains(&h, &scaled)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Smallest positive integer `z` with `z ∈ L` for the numerator lattice.
    pub fn numerator_min_integer(&self) -> BigInt {
        // solve H x = e_0 by forward substitution; z = lcm of denominators
        let d = self.degree();
        let mut x: Vec<BigRational> = vec![BigRational::zero(); d];
        for i in 0..d {
            let mut acc = if i == 0 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for (j, xj) in x.iter().enumerate().take(i) {
                if !self.hnf[i][j].is_zero() {
                    acc -= xj * BigRational::from_integer(self.hnf[i][j].clone());
                }
            }
            x[i] = acc / BigRational::from_integer(self.hnf[i][i].clone());
        }
        x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    fn same_field(&self, other: &Ideal) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        self.same_field(other)?;
        let d = self.degree();
        let modulus = self.numerator_min_integer() * other.numerator_min_integer();
        let a = self.numerator_columns();
        let b = other.numerator_columns();
        let mut cols = Vec::with_capacity(d * d);
        for x in &a {
            for y in &b {
                cols.push(self.field.mul_coords(x, y));
            }
        }
        Ok(Self::from_parts(
            self.field.clone(),
            hnf_mod(&cols, d, &modulus),
            &self.den * &other.den,
        ))
    }

    /// `(a)·self` for a nonzero element `a`.
    pub fn mul_element(&self, a: &FieldElement) -> Result<Ideal> {
        self.field.check(a.len())?;
        if a.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let d = self.degree();
        let norm_a = self.field.norm_coords(a.numerators()).abs();
        let modulus = norm_a * self.numerator_min_integer();
        let cols: Vec<Vec<BigInt>> = self
            .numerator_columns()
            .iter()
            .map(|c| self.field.mul_coords(a.numerators(), c))
            .collect();
        Ok(Self::from_parts(
            self.field.clone(),
            hnf_mod(&cols, d, &modulus),
            &self.den * a.denominator(),
        ))
    }

    /// `{x : x·L ⊆ Z[θ]}` scaled back by the denominator. The product with
    /// `self` is checked to be the unit ideal.
    pub fn inverse(&self) -> Result<Ideal> {
        let inv = self.inverse_unchecked();
        if !self.mul(&inv)?.is_unit() {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    pub(crate) fn inverse_unchecked(&self) -> Ideal {
        let d = self.degree();
        let n = self.numerator_min_integer();
        // rows of the multiplication matrices of the basis span the
        // constraint lattice; taken modulo n
        let mut rows = Vec::with_capacity(d * d);
        for b in self.numerator_columns() {
            let m = self.field.mul_matrix(&b);
            rows.extend(m);
        }
        let rb = hnf_mod(&rows, d, &n);
        let rinv = lower_triangular_inverse(&rb);
        // columns of n·(Rb^T)^{-1}: column j is n·(row j of Rb^{-1})
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                rinv[j]
                    .iter()
                    .map(|c| {
                        let v = c * BigRational::from_integer(n.clone());
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let lattice = hnf_mod(&cols, d, &n);
        let scaled: Matrix = lattice
            .into_iter()
            .map(|r| r.into_iter().map(|v| v * &self.den).collect())
            .collect();
        Self::from_parts(self.field.clone(), scaled, n)
    }

    /// `I'` with `I'·divisor = self`. Fails with `NonDivisible` unless
    /// `self ⊆ divisor`.
    pub fn divide(&self, divisor: &Ideal) -> Result<Ideal> {
        self.same_field(divisor)?;
        if !self.is_subset_of(divisor) {
            return Err(Error::NonDivisible);
        }
        let q = self.mul(&divisor.inverse_unchecked())?;
        if q.mul(divisor)? != *self {
            return Err(Error::NotInvertible);
        }
        Ok(q)
    }
}

fn lower_triangular_inverse(h: &Matrix) -> Vec<Vec<BigRational>> {
    let d = h.len();
    let mut inv = vec![vec![BigRational::zero(); d]; d];
    for col in 0..d {
        // solve H x = e_col
        for i in col..d {
            let mut acc = if i == col {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for j in col..i {
                if !h[i][j].is_zero() {
                    acc -= &inv[j][col] * BigRational::from_integer(h[i][j].clone());
                }
            }
            inv[i][col] = acc / BigRational::from_integer(h[i][i].clone());
        }
    }
    inv
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.basis().iter().map(|b| b.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}
