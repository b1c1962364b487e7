// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use dpip_core::nf::{FieldElement, Ideal, NumberField};
use num_bigint::BigInt;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn field(poly: &[i64]) -> Arc<NumberField> {
    Arc::new(NumberField::from_i64(poly).unwrap())
}

pub fn qsqrtm5() -> Arc<NumberField> {
    field(&[5, 0, 1])
}

/// Monogenic test fields of degree at most 8 with `Z[θ]` maximal.
pub fn test_fields() -> Vec<Arc<NumberField>> {
    vec![
        field(&[5, 0, 1]),
        field(&[21, 0, 1]),
        field(&[1, -1, 1]),
        field(&[-2, 0, 0, 1]),
        field(&[1, 1, 0, 1]),
        field(&[1, 0, 0, 0, 1]),
        field(&[1, 0, 0, 0, 0, 0, 0, 0, 1]),
    ]
}

pub fn el(c: &[i64]) -> FieldElement {
    FieldElement::from_i64(c)
}

pub fn random_element<R: Rng>(rng: &mut R, d: usize, h: i64) -> FieldElement {
    loop {
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-h..=h)).collect();
        if c.iter().any(|&x| x != 0) {
            return el(&c);
        }
    }
}

/// `(m, α)` for a random integer `m` and element `α`.
pub fn random_ideal<R: Rng>(rng: &mut R, k: &Arc<NumberField>, h: i64, m: i64) -> Ideal {
    let d = k.degree();
    let a = random_element(rng, d, h);
    let n = k.from_int(BigInt::from(rng.gen_range(1..=m)));
    Ideal::from_generators(k, &[n, a]).unwrap()
}
