// SPDX-License-Identifier: Apache-2.0

//! JSON file formats for fields and ideals.
//!
//! Integers are written as decimal strings; plain JSON integers are accepted
//! on input.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nf::{FieldElement, Ideal, NumberField};

/// An arbitrary-precision integer in serialized form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                BigInt::from_str(v.trim())
                    .map(Int)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn bigints(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub defining_poly: Vec<Int>,
}

impl FieldFile {
    pub fn from_field(k: &NumberField) -> Self {
        FieldFile {
            defining_poly: ints(k.defining_poly()),
        }
    }

    pub fn to_field(&self) -> Result<NumberField> {
        NumberField::new(bigints(&self.defining_poly))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hnf: Option<Vec<Vec<Int>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Int>,
}

impl IdealFile {
    pub fn from_ideal(ideal: &Ideal) -> Self {
        let den = ideal.denominator();
        IdealFile {
            generators: None,
            hnf: Some(ideal.hnf().iter().map(|r| ints(r)).collect()),
            denominator: (!den.is_one()).then(|| Int(den.clone())),
        }
    }

    pub fn to_ideal(&self, field: &Arc<NumberField>) -> Result<Ideal> {
        match (&self.generators, &self.hnf) {
            (Some(gens), None) => {
                let den = self.denominator.as_ref().map_or_else(BigInt::one, |d| d.0.clone());
                let elems: Vec<FieldElement> = gens
                    .iter()
                    .map(|g| {
                        field.check(g.len())?;
                        Ok(FieldElement::new(bigints(g), den.clone()))
                    })
                    .collect::<Result<_>>()?;
                Ideal::from_generators(field, &elems)
            }
            (None, Some(rows)) => {
                let m = rows.iter().map(|r| bigints(r)).collect();
                let den = self.denominator.as_ref().map_or_else(BigInt::one, |d| d.0.clone());
                Ideal::from_basis_matrix(field, m, den)
            }
            _ => Err(Error::Schema(
                "ideal file needs exactly one of \"generators\" or \"hnf\"".into(),
            )),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_field(path: &Path) -> Result<NumberField> {
    read_json::<FieldFile>(path)?.to_field()
}

pub fn load_ideal(path: &Path, field: &Arc<NumberField>) -> Result<Ideal> {
    read_json::<IdealFile>(path)?.to_ideal(field)
}
