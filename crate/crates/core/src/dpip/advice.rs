// SPDX-License-Identifier: Apache-2.0

//! Advice bundles: subfield polynomials of the Hilbert class field and the
//! principal primes dividing their discriminants.

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::io::{bigints, ints, read_json, write_json, FieldFile, Int};
use crate::nf::{poly_disc_over_ok, FieldElement, NumberField, PrimeIdeal};
use crate::residue::elem_in_prime;

/// A relative extension `K[x]/(poly)` of prime-power degree `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    pub q: usize,
    pub poly: Vec<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct AdviceBundle {
    field: Arc<NumberField>,
    subfields: Vec<Subfield>,
    s: Vec<PrimeIdeal>,
    disc_cache: Vec<FieldElement>,
}

impl PartialEq for AdviceBundle {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.subfields == other.subfields
            && self.s == other.s
            && self.disc_cache == other.disc_cache
    }
}

impl AdviceBundle {
    /// Validates the subfield polynomials and `S`, computing the
    /// discriminant cache.
    pub fn new(field: Arc<NumberField>, subfields: Vec<Subfield>, s: Vec<PrimeIdeal>) -> Result<Self> {
        let mut disc_cache = Vec::with_capacity(subfields.len());
        for (i, sf) in subfields.iter().enumerate() {
            check_subfield(&field, sf)
                .map_err(|e| Error::AdviceInvariant(format!("subfield {}: {e}", i + 1)))?;
            disc_cache.push(poly_disc_over_ok(&field, &sf.poly)?);
        }
        for prime in &s {
            if **prime.field() != *field {
                return Err(Error::AdviceFieldMismatch);
            }
            let mut divides = false;
            for disc in &disc_cache {
                if elem_in_prime(disc, prime)? {
                    divides = true;
                    break;
                }
            }
            if !divides {
                return Err(Error::AdviceInvariant(format!(
                    "S member {prime} divides no subfield discriminant"
                )));
            }
        }
        let mut s = s;
        s.sort_by(|a, b| (a.p(), a.gen_poly()).cmp(&(b.p(), b.gen_poly())));
        s.dedup();
        Ok(AdviceBundle {
            field,
            subfields,
            s,
            disc_cache,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn subfields(&self) -> &[Subfield] {
        &self.subfields
    }

    /// Number of subfields `t`.
    pub fn t(&self) -> usize {
        self.subfields.len()
    }

    /// Smoothness bound `max q_i` (1 when there are no subfields).
    pub fn smoothness(&self) -> usize {
        self.subfields.iter().map(|s| s.q).max().unwrap_or(1)
    }

    pub fn s(&self) -> &[PrimeIdeal] {
        &self.s
    }

    pub fn disc_cache(&self) -> &[FieldElement] {
        &self.disc_cache
    }

    pub fn in_s(&self, prime: &PrimeIdeal) -> bool {
        self.s.iter().any(|q| q == prime)
    }

    pub fn to_file(&self) -> AdviceFile {
        AdviceFile {
            field: FieldFile::from_field(&self.field),
            subfields: self
                .subfields
                .iter()
                .map(|sf| SubfieldFile {
                    q: sf.q,
                    poly: sf.poly.iter().map(|c| ints(c.numerators())).collect(),
                })
                .collect(),
            s: self
                .s
                .iter()
                .map(|p| PrimeFile {
                    p: Int(p.p().clone()),
                    gen_poly: ints(p.gen_poly()),
                })
                .collect(),
            disc_cache: Some(self.disc_cache.iter().map(|c| ints(c.numerators())).collect()),
        }
    }

    /// Rebuilds and revalidates a bundle; a stored discriminant cache must
    /// match the recomputed one.
    pub fn from_file(file: &AdviceFile) -> Result<Self> {
        let field = Arc::new(file.field.to_field()?);
        let d = field.degree();
        let mut subfields = Vec::with_capacity(file.subfields.len());
        for (i, sf) in file.subfields.iter().enumerate() {
            let poly = sf
                .poly
                .iter()
                .map(|c| {
                    if c.len() != d {
                        return Err(Error::Schema(format!(
                            "subfield {}: coefficient vectors must have length {d}",
                            i + 1
                        )));
                    }
                    Ok(FieldElement::integral(bigints(c)))
                })
                .collect::<Result<_>>()?;
            subfields.push(Subfield { q: sf.q, poly });
        }
        let s = file
            .s
            .iter()
            .map(|p| PrimeIdeal::new(&field, p.p.0.clone(), bigints(&p.gen_poly)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::AdviceInvariant(format!("S: {e}")))?;
        let bundle = Self::new(field, subfields, s)?;
        if let Some(cache) = &file.disc_cache {
            if cache.len() != bundle.t() {
                return Err(Error::AdviceInvariant(
                    "disc_cache length differs from the number of subfields".into(),
                ));
            }
            for (i, (stored, actual)) in cache.iter().zip(&bundle.disc_cache).enumerate() {
                if bigints(stored) != actual.numerators() {
                    return Err(Error::AdviceInvariant(format!(
                        "disc_cache[{i}] does not match the discriminant of subfield {}",
                        i + 1
                    )));
                }
            }
        }
        Ok(bundle)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_file(&read_json(path)?)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        write_json(path, &self.to_file())
    }
}

fn check_subfield(field: &NumberField, sf: &Subfield) -> Result<()> {
    if sf.q < 2 || prime_power(&BigInt::from(sf.q)).is_none() {
        return Err(Error::AdviceInvariant(format!("degree {} is not a prime power", sf.q)));
    }
    if sf.poly.len() != sf.q + 1 {
        return Err(Error::AdviceInvariant(format!(
            "polynomial degree {} differs from q = {}",
            sf.poly.len().saturating_sub(1),
            sf.q
        )));
    }
    for c in &sf.poly {
        field.check(c.len())?;
        if !c.is_integral() {
            return Err(Error::NonIntegral);
        }
    }
    if *sf.poly.last().unwrap() != field.one() {
        return Err(Error::NonMonic);
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubfieldFile {
    pub q: usize,
    pub poly: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeFile {
    pub p: Int,
    pub gen_poly: Vec<Int>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdviceFile {
    pub field: FieldFile,
    pub subfields: Vec<SubfieldFile>,
    #[serde(rename = "S", default)]
    pub s: Vec<PrimeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc_cache: Option<Vec<Vec<Int>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> AdviceBundle {
        let k = Arc::new(NumberField::from_i64(&[5, 0, 1]).unwrap());
        let poly = vec![k.one(), k.zero(), k.one()];
        AdviceBundle::new(k, vec![Subfield { q: 2, poly }], vec![]).unwrap()
    }

    #[test]
    fn disc_cache_example1() {
        let a = example1();
        assert_eq!(a.disc_cache()[0], FieldElement::from_i64(&[-4, 0]));
        assert_eq!(a.smoothness(), 2);
    }

    #[test]
    fn round_trip_and_tamper() {
        let a = example1();
        let file = a.to_file();
        let text = serde_json::to_string(&file).unwrap();
        let back = AdviceBundle::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, a);

        let mut bad = file.clone();
        bad.disc_cache = Some(vec![vec![Int((-8).into()), Int(0.into())]]);
        assert!(matches!(AdviceBundle::from_file(&bad), Err(Error::AdviceInvariant(_))));
    }

    #[test]
    fn rejects_bad_s_member() {
        let a = example1();
        let k = a.field().clone();
        // (3, θ - 1) does not contain -4
        let p3 = PrimeIdeal::new(&k, 3.into(), vec![2.into(), 1.into()]).unwrap();
        let r = AdviceBundle::new(k, a.subfields().to_vec(), vec![p3]);
        assert!(matches!(r, Err(Error::AdviceInvariant(_))));
    }

    #[test]
    fn rejects_wrong_degree() {
        let k = Arc::new(NumberField::from_i64(&[5, 0, 1]).unwrap());
        let poly = vec![k.one(), k.zero(), k.one()];
        let r = AdviceBundle::new(k, vec![Subfield { q: 3, poly }], vec![]);
        assert!(matches!(r, Err(Error::AdviceInvariant(_))));
    }
}
