// SPDX-License-Identifier: Apache-2.0

mod common;

use std::sync::Arc;

use common::{el, field, qsqrtm5, test_fields};
use dpip_core::finite::{factor_mod_p, FiniteField};
use dpip_core::nf::{kummer_dedekind, NumberField, PrimeIdeal};
use dpip_core::residue::{elem_in_prime, reduce_mod, splits_completely, ResidueField};
use dpip_core::Error;
use num_bigint::BigInt;
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Residue fields with `q < 10^4`.
fn small_fields() -> Vec<ResidueField> {
    let mut out = Vec::new();
    for (p, m) in [
        (2, vec![1, 1]),
        (3, vec![0, 1]),
        (29, vec![0, 1]),
        (97, vec![0, 1]),
        (9973, vec![0, 1]),
        (2, vec![1, 1, 0, 1]),
        (3, vec![1, 0, 1]),
        (5, vec![2, 0, 1]),
        (7, vec![1, 1, 0, 0, 1]),
        (31, vec![1, 0, 1]),
        (97, vec![5, 0, 1]),
        (13, vec![2, 0, 1, 1]),
    ] {
        if let Ok(f) = ResidueField::new(BigInt::from(p), &ints(&m)) {
            out.push(f);
        }
    }
    assert_eq!(out.len(), 12);
    out
}

#[test]
fn reduction_examples() {
    let k = qsqrtm5();
    let p29 = PrimeIdeal::new(&k, 29.into(), ints(&[16, 1])).unwrap();
    let g = vec![k.one(), k.zero(), k.one()];
    let r = reduce_mod(&g, &p29).unwrap();
    assert_eq!(r.coeffs(), &[ints(&[1]), ints(&[0]), ints(&[1])]);
    let rf = ResidueField::of_prime(&p29);
    assert!(splits_completely(&r, &rf).unwrap());
}

#[test]
fn zeta64_theta16_reduction() {
    let k = Arc::new(NumberField::cyclotomic_pow2(64).unwrap());
    let mut c = vec![0i64; 32];
    c[16] = 1;
    let g = vec![el(&c), k.one()];

    // 193 ≡ 1 mod 64: degree-one primes, θ maps to a root of unity in F_193
    let primes = kummer_dedekind(&k, &193.into()).unwrap();
    assert_eq!(primes.len(), 32);
    let (p, _) = &primes[0];
    let root: BigInt = (BigInt::from(193) - &p.gen_poly()[0]) % 193;
    let r = reduce_mod(&g, p).unwrap();
    assert_eq!(r.coeffs()[0], vec![root.modpow(&16.into(), &193.into())]);

    // 97 has order 2 mod 64: residue degree 2, compare with repeated products
    let primes = kummer_dedekind(&k, &97.into()).unwrap();
    assert_eq!((primes.len(), primes[0].0.res_degree()), (16, 2));
    let (p, _) = &primes[0];
    let rf = ResidueField::of_prime(p);
    let y = rf.ext().generator();
    let y16 = (0..16).fold(rf.ext().one(), |acc, _| rf.ext().mul(&acc, &y));
    assert_eq!(reduce_mod(&g, p).unwrap().coeffs()[0], y16);
}

#[test]
fn prime_membership_matches_lattice() {
    for k in test_fields() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
                let lattice = prime.to_ideal();
                for seed in 0..40i64 {
                    let c: Vec<i64> = (0..k.degree() as i64).map(|j| (seed * 31 + j * 17) % 11 - 5).collect();
                    let a = el(&c);
                    assert_eq!(elem_in_prime(&a, &prime).unwrap(), lattice.contains(&a));
                }
                let g = prime.generator_element();
                assert!(elem_in_prime(&g, &prime).unwrap());
            }
        }
    }
}

#[test]
fn repeated_roots_rejected() {
    let rf = ResidueField::new(7.into(), &ints(&[0, 1])).unwrap();
    let g = rf.poly(vec![ints(&[1]), ints(&[2]), ints(&[1])]);
    assert_eq!(splits_completely(&g, &rf), Err(Error::SquarefreeViolation));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn frobenius_agrees_with_root_count(fi in 0usize..12, deg in 1usize..=6, raw in proptest::collection::vec(proptest::collection::vec(0i64..10_000, 4), 6)) {
        let rf = &small_fields()[fi];
        let p = rf.p().clone();
        let mut coeffs: Vec<Vec<BigInt>> = raw[..deg].iter().map(|c| {
            rf.ext().from_base_poly(&c.iter().map(|&x| BigInt::from(x) % &p).collect::<Vec<_>>())
        }).collect();
        coeffs.push(rf.ext().one());
        let g = rf.poly(coeffs);
        match splits_completely(&g, rf) {
            Ok(split) => {
                let roots = rf.count_roots_naive(&g);
                prop_assert_eq!(split, roots == deg);
            }
            Err(e) => prop_assert_eq!(e, Error::SquarefreeViolation),
        }
    }

    #[test]
    fn reduction_is_a_homomorphism(a in proptest::collection::vec(-9i64..=9, 6), b in proptest::collection::vec(-9i64..=9, 6), p in prop::sample::select(vec![3u32, 7, 29, 41, 101])) {
        let k = qsqrtm5();
        for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
            let rf = ResidueField::of_prime(&prime);
            let ga: Vec<_> = a.chunks(2).map(el).collect();
            let gb: Vec<_> = b.chunks(2).map(el).collect();
            let mut prod = vec![k.zero(); ga.len() + gb.len() - 1];
            for (i, x) in ga.iter().enumerate() {
                for (j, y) in gb.iter().enumerate() {
                    prod[i + j] = k.add(&prod[i + j], &k.mul(x, y).unwrap()).unwrap();
                }
            }
            let lhs = reduce_mod(&prod, &prime).unwrap();
            let rhs = rf.mul(&reduce_mod(&ga, &prime).unwrap(), &reduce_mod(&gb, &prime).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn rational_factorization_agrees_with_roots() {
    let k = field(&[1, 1, 0, 1]);
    for p in dpip_core::arith::primes_up_to(200) {
        let fp = dpip_core::finite::PrimeField::new(p.into());
        let linear = factor_mod_p(&fp, k.defining_poly()).iter().filter(|(g, _)| g.len() == 2).count();
        let naive = (0..p).filter(|x| (x * x * x + x + 1) % p == 0).count();
        assert_eq!(linear, naive, "p = {p}");
    }
}
