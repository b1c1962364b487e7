// SPDX-License-Identifier: Apache-2.0

//! Imaginary quadratic fields: reduced binary quadratic forms, a form-based
//! principality oracle, and genus-field advice.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_squarefree, trial_factor};
use crate::dpip::{AdviceBundle, Subfield};
use crate::error::{Error, Result};
use crate::nf::{kummer_dedekind, Ideal, NumberField, PrimeIdeal};
use crate::residue::elem_in_prime;

/// The form `a x² + b xy + c y²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QuadForm { a, b, c }
    }

    /// The principal form of discriminant `disc`.
    pub fn principal(disc: &BigInt) -> Self {
        let b = disc.mod_floor(&BigInt::from(2));
        let c = (&b * &b - disc) / 4;
        QuadForm::new(BigInt::one(), b, c)
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        self.a.is_positive()
            && ab <= self.a
            && self.a <= self.c
            && (!(ab == self.a || self.a == self.c) || !self.b.is_negative())
    }

    /// Ambiguous forms have order at most two in the class group.
    pub fn is_ambiguous(&self) -> bool {
        self.b.is_zero() || self.a == self.b || self.a == self.c
    }

    /// The reduced form equivalent to a positive definite `self`.
    pub fn reduce(&self) -> QuadForm {
        let QuadForm { mut a, mut b, mut c } = self.clone();
        let disc = self.discriminant();
        assert!(disc.is_negative() && a.is_positive(), "form must be positive definite");
        loop {
            // b into (-a, a]
            let two_a = &a * 2;
            let mut r = b.mod_floor(&two_a);
            if r > a {
                r -= &two_a;
            }
            if r != b {
                b = r;
                c = (&b * &b - &disc) / (&a * 4);
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            break;
        }
        if (a == c || b.abs() == a) && b.is_negative() {
            b = -b;
        }
        QuadForm { a, b, c }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClassGroup {
    pub disc: BigInt,
    pub forms: Vec<QuadForm>,
    pub h: usize,
    pub elementary2: bool,
}

/// Whether `disc` is a negative fundamental discriminant.
pub fn is_fundamental_negative(disc: &BigInt) -> bool {
    if !disc.is_negative() {
        return false;
    }
    let m4 = disc.mod_floor(&BigInt::from(4));
    if m4 == BigInt::one() {
        return is_squarefree(disc, 1 << 20) == Some(true);
    }
    if m4.is_zero() {
        let m: BigInt = disc / 4;
        let r = m.mod_floor(&BigInt::from(4));
        return (r == BigInt::from(2) || r == BigInt::from(3)) && is_squarefree(&m, 1 << 20) == Some(true);
    }
    false
}

fn require_fundamental(disc: &BigInt) -> Result<()> {
    if is_fundamental_negative(disc) {
        Ok(())
    } else {
        Err(Error::NotFundamental(disc.to_string()))
    }
}

/// All reduced forms of discriminant `disc`, ordered by `(a, b)`.
pub fn enumerate_forms(disc: &BigInt) -> Result<FormClassGroup> {
    require_fundamental(disc)?;
    let bound = (disc.abs() / BigInt::from(3)).sqrt();
    let mut forms = Vec::new();
    let mut a = BigInt::one();
    while a <= bound {
        let mut b: BigInt = -&a + 1;
        while b <= a {
            let num: BigInt = &b * &b - disc;
            let four_a = &a * 4;
            if num.is_multiple_of(&four_a) {
                let f = QuadForm::new(a.clone(), b.clone(), num / four_a);
                if f.is_reduced() {
                    forms.push(f);
                }
            }
            b += 1;
        }
        a += 1;
    }
    let elementary2 = forms.iter().all(QuadForm::is_ambiguous);
    Ok(FormClassGroup {
        disc: disc.clone(),
        h: forms.len(),
        forms,
        elementary2,
    })
}

/// `Q(√Δ)` as `x² − Δ/4` or `x² − x + (1 − Δ)/4`.
pub fn quadratic_field(disc: &BigInt) -> Result<NumberField> {
    require_fundamental(disc)?;
    if disc.is_multiple_of(&BigInt::from(4)) {
        NumberField::new(vec![-(disc / BigInt::from(4)), BigInt::zero(), BigInt::one()])
    } else {
        NumberField::new(vec![(BigInt::one() - disc) / 4, -BigInt::one(), BigInt::one()])
    }
}

/// The form `N(x v₁ + y v₂)/N(I)` attached to the HNF basis of `I`.
pub fn ideal_form(ideal: &Ideal) -> QuadForm {
    let f = ideal.field().defining_poly();
    let (v, u) = (&f[0], &f[1]);
    let cols = ideal.numerator_columns();
    let n = &ideal.hnf()[0][0] * &ideal.hnf()[1][1];
    let norm = |x: &[BigInt]| &x[0] * &x[0] - u * &x[0] * &x[1] + v * &x[1] * &x[1];
    let (x, y) = (&cols[0], &cols[1]);
    let trace = BigInt::from(2) * &x[0] * &y[0] - u * (&x[0] * &y[1] + &x[1] * &y[0])
        + BigInt::from(2) * v * &x[1] * &y[1];
    QuadForm::new(norm(x) / &n, trace / &n, norm(y) / &n)
}

/// Principality of an ideal of the imaginary quadratic field of
/// discriminant `disc`, by form reduction.
pub fn is_principal_quad(ideal: &Ideal, disc: &BigInt) -> Result<bool> {
    let k = ideal.field();
    if k.degree() != 2 || k.disc() != disc || !disc.is_negative() {
        return Err(Error::FieldMismatch);
    }
    Ok(ideal_form(ideal).reduce() == QuadForm::principal(disc))
}

/// The prime discriminants whose product is `disc`.
pub fn prime_discriminants(disc: &BigInt) -> Result<Vec<BigInt>> {
    require_fundamental(disc)?;
    let (fac, rest) = trial_factor(disc, 1 << 20);
    if !rest.is_one() {
        return Err(Error::InvalidConfig(format!(
            "cannot factor the discriminant {disc} by trial division"
        )));
    }
    let mut out = Vec::new();
    let mut odd = BigInt::one();
    for (p, _) in fac {
        if p == BigInt::from(2) {
            continue;
        }
        let star = if (&p % 4u32) == BigInt::one() { p } else { -p };
        odd *= &star;
        out.push(star);
    }
    let two_part = disc / odd;
    if !two_part.is_one() {
        out.push(two_part);
    }
    out.sort_by_key(|a| a.abs());
    Ok(out)
}

/// Genus-field advice for a discriminant whose class group is an
/// elementary abelian 2-group.
pub fn genus_advice(disc: &BigInt) -> Result<AdviceBundle> {
    let group = enumerate_forms(disc)?;
    if !group.elementary2 {
        return Err(Error::ClassGroupNotElementary2(format!(
            "discriminant {disc} has class number {} with a class of order > 2",
            group.h
        )));
    }
    let k = Arc::new(quadratic_field(disc)?);
    let mut pstars = prime_discriminants(disc)?;
    pstars.pop();
    let subfields: Vec<Subfield> = pstars
        .iter()
        .map(|ps| {
            let c = if ps.is_even() { -(ps / BigInt::from(4)) } else { -ps };
            Subfield {
                q: 2,
                poly: vec![k.from_int(c), k.zero(), k.one()],
            }
        })
        .collect();
    let unchecked = AdviceBundle::new(k.clone(), subfields.clone(), vec![])?;
    let mut s: Vec<PrimeIdeal> = Vec::new();
    let mut rational = Vec::new();
    for disc_i in unchecked.disc_cache() {
        let n = disc_i.as_rational().expect("rational coefficients give a rational discriminant");
        let (fac, rest) = trial_factor(&n.to_integer(), 1 << 20);
        debug_assert!(rest.is_one());
        rational.extend(fac.into_iter().map(|(p, _)| p));
    }
    rational.sort();
    rational.dedup();
    for p in rational {
        for (prime, _) in kummer_dedekind(&k, &p)? {
            let divides = unchecked
                .disc_cache()
                .iter()
                .map(|d| elem_in_prime(d, &prime))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .any(|b| b);
            if divides && is_principal_quad(&prime.to_ideal(), disc)? {
                s.push(prime);
            }
        }
    }
    AdviceBundle::new(k, subfields, s)
}

/// Exhaustive search for `x, y` with `N(x + yθ) = n` in an imaginary
/// quadratic order; used as an independent principality check for ideals
/// of norm `n`.
pub fn represents_norm(field: &NumberField, n: u64) -> bool {
    let f = field.defining_poly();
    let (v, u) = (f[0].to_i128().unwrap(), f[1].to_i128().unwrap());
    let disc = u * u - 4 * v;
    assert!(disc < 0, "field must be imaginary quadratic");
    let n = n as i128;
    // 4N = (2x - u y)^2 - disc·y^2
    let ymax = ((4 * n) / (-disc)).sqrt() + 1;
    for y in -ymax..=ymax {
        let rest = 4 * n + disc * y * y;
        if rest < 0 {
            continue;
        }
        let s = rest.sqrt();
        for t in [s, -s] {
            if t * t == rest && (t + u * y) % 2 == 0 {
                return true;
            }
        }
    }
    false
}
