// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use dpip_core::arith::primes_up_to;
use dpip_core::dpip::{prime_ideal_dpip, Verdict};
use dpip_core::nf::kummer_dedekind;
use dpip_core::quadlab::{
    enumerate_forms, genus_advice, ideal_form, is_principal_quad, quadratic_field, represents_norm,
};
use num_bigint::BigInt;

#[test]
fn form_ideal_duality_sqrt_m5() {
    let d = BigInt::from(-20);
    let k = Arc::new(quadratic_field(&d).unwrap());
    for p in primes_up_to(1000) {
        for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
            if prime.res_degree() != 1 {
                continue;
            }
            let oracle = is_principal_quad(&prime.to_ideal(), &d).unwrap();
            let brute = (0..=32u64).any(|a| (0..=15u64).any(|b| a * a + 5 * b * b == p));
            assert_eq!(oracle, brute, "p = {p}");
            assert_eq!(oracle, represents_norm(&k, p));
        }
    }
}

#[test]
fn genus_advice_soundness() {
    for disc in [-20i64, -84, -120, -132] {
        let disc = BigInt::from(disc);
        let a = genus_advice(&disc).unwrap();
        let k = a.field().clone();
        for p in primes_up_to(1000) {
            for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
                if prime.norm() >= BigInt::from(1000) {
                    continue;
                }
                let v = prime_ideal_dpip(&prime, &a).unwrap().verdict;
                assert_eq!(v == Verdict::Yes, is_principal_quad(&prime.to_ideal(), &disc).unwrap(), "{prime} in {disc}");
            }
        }
    }
}

#[test]
fn class_number_from_prime_forms() {
    for disc in [-20i64, -23, -47, -84, -120, -132, -71] {
        let disc = BigInt::from(disc);
        let h = enumerate_forms(&disc).unwrap().h;
        let k = Arc::new(quadratic_field(&disc).unwrap());
        let mut classes = BTreeSet::new();
        classes.insert(dpip_core::quadlab::QuadForm::principal(&disc));
        for p in primes_up_to(50) {
            for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
                classes.insert(ideal_form(&prime.to_ideal()).reduce());
            }
        }
        assert_eq!(classes.len(), h, "disc {disc}");
    }
}

#[test]
fn class_numbers_match_known_values() {
    let h = |d: i64| enumerate_forms(&BigInt::from(d)).unwrap().h;
    assert_eq!([h(-3), h(-4), h(-20), h(-23), h(-47), h(-84), h(-120)], [1, 1, 2, 3, 5, 4, 4]);
}
