// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria, one line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use common::{el, fixture, random_element, random_ideal, test_fields};
use dpip_core::arith::primes_up_to;
use dpip_core::dpip::{general_ideal_dpip, prime_ideal_dpip, AdviceBundle, SwitchConfig, Verdict};
use dpip_core::finite::FiniteField;
use dpip_core::io::{load_field, load_ideal};
use dpip_core::nf::{kummer_dedekind, FieldElement, Ideal, NumberField};
use dpip_core::quadlab::{genus_advice, is_principal_quad};
use dpip_core::residue::{elem_in_prime, splits_completely, ResidueField};
use dpip_core::switchlab::{prime_cofactor_density, landau_ratio, switch_stats, DensityMode};
use dpip_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_agreement() -> Outcome {
    let mut cases = 0;
    for disc in [-20i64, -84] {
        let disc = BigInt::from(disc);
        let advice = genus_advice(&disc).map_err(|e| e.to_string())?;
        let k = advice.field().clone();
        for p in primes_up_to(1000) {
            for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
                if prime.norm() >= BigInt::from(1000) {
                    continue;
                }
                let v = prime_ideal_dpip(&prime, &advice).map_err(|e| e.to_string())?.verdict;
                let oracle = is_principal_quad(&prime.to_ideal(), &disc).unwrap();
                ensure(oracle == (v == Verdict::Yes), || format!("{prime} in disc {disc}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} prime ideals agree"))
}

fn switch_counts() -> Outcome {
    let k = Arc::new(load_field(&fixture("zeta64.json")).unwrap());
    let ideal = load_ideal(&fixture("zeta64_ideal187.json"), &k).unwrap();
    let bounds = [5u32, 10, 20];
    let bands = [(10.0, 40.0), (13.0, 52.0), (16.0, 64.0)];
    let stats = switch_stats(&ideal, &bounds.map(BigInt::from), 100, 42, None)
        .map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    for (s, (lo, hi)) in stats.iter().zip(bands) {
        let m = s.mean_f64();
        detail.push(format!("B={} mean={m:.2}", s.bound_b));
        ensure((lo..=hi).contains(&m) && !s.capped, || {
            format!("B={} mean {m:.2} outside [{lo}, {hi}]", s.bound_b)
        })?;
    }
    Ok(detail.join(", "))
}

fn ramified_qsqrtm5() -> Outcome {
    let advice = AdviceBundle::load(&fixture("qsqrtm5_advice.json")).unwrap();
    let k = advice.field().clone();
    let cfg = SwitchConfig::for_field(&k);
    let p2 = Ideal::from_generators(&k, &[el(&[2, 0]), el(&[1, 1])]).unwrap();
    let d = general_ideal_dpip(&p2, &advice, &cfg).map_err(|e| e.to_string())?;
    ensure(d.verdict == Verdict::No, || format!("(2, 1+θ) gave {}", d.verdict))?;
    let two = Ideal::principal(&k, &el(&[2, 0])).unwrap();
    let d2 = general_ideal_dpip(&two, &advice, &cfg).map_err(|e| e.to_string())?;
    ensure(d2.verdict == Verdict::Yes, || format!("(2) gave {}", d2.verdict))?;
    Ok(format!(
        "(2, 1+θ): No ({}); (2): Yes after {} switches",
        d.reason, d2.switches_used
    ))
}

fn zeta180_end_to_end() -> Outcome {
    let advice = AdviceBundle::load(&fixture("zeta180_advice.json")).map_err(|e| e.to_string())?;
    let degrees: Vec<usize> = advice.subfields().iter().map(|s| s.q).collect();
    ensure(degrees == [3, 5, 5], || format!("degrees {degrees:?}"))?;
    let k = advice.field().clone();
    let cfg = SwitchConfig::for_field(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(180);
    let mut switches = 0;
    for n in 0..25 {
        let alpha = random_element(&mut rng, k.degree(), 3);
        let i = Ideal::principal(&k, &alpha).unwrap();
        let d = general_ideal_dpip(&i, &advice, &cfg).map_err(|e| format!("ideal {n}: {e}"))?;
        ensure(d.verdict == Verdict::Yes, || format!("ideal {n} gave No ({})", d.reason))?;
        switches += d.switches_used;
    }
    Ok(format!("25/25 Yes, {switches} switches in total"))
}

fn advice_equivalence() -> Outcome {
    let a = AdviceBundle::load(&fixture("qsqrtm5_advice.json")).unwrap();
    let b = AdviceBundle::load(&fixture("qsqrtm5_advice_alt.json")).unwrap();
    let k = a.field().clone();
    let mut cases = 0;
    for p in primes_up_to(10_000) {
        for (prime, _) in kummer_dedekind(&k, &p.into()).unwrap() {
            if prime.norm() >= BigInt::from(10_000) {
                continue;
            }
            let gated = a
                .disc_cache()
                .iter()
                .chain(b.disc_cache())
                .any(|d| elem_in_prime(d, &prime).unwrap());
            if gated {
                continue;
            }
            let va = prime_ideal_dpip(&prime, &a).unwrap().verdict;
            let vb = prime_ideal_dpip(&prime, &b).unwrap().verdict;
            ensure(va == vb, || format!("{prime}: {va} vs {vb}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} primes agree"))
}

fn arithmetic_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cases = 0usize;
    for k in test_fields() {
        let d = k.degree();
        for _ in 0..300 {
            // HNF canonicity under a permuted, redundant generating set
            let i = random_ideal(&mut rng, &k, 8, 60);
            let mut gens = i.basis();
            let extra = k.mul(&gens[0], &random_element(&mut rng, d, 3)).unwrap();
            gens.push(extra);
            gens.reverse();
            ensure(Ideal::from_generators(&k, &gens).unwrap() == i, || format!("HNF canonicity in {k}"))?;
            // multiplicativity
            let j = random_ideal(&mut rng, &k, 8, 60);
            let ij = i.mul(&j).unwrap();
            ensure(ij.norm() == i.norm() * j.norm(), || format!("N(IJ) in {k}"))?;
            cases += 2;
        }
        for _ in 0..150 {
            let i = random_ideal(&mut rng, &k, 8, 60);
            let inv = i.inverse().map_err(|e| e.to_string())?;
            ensure(i.mul(&inv).unwrap().is_unit(), || format!("I·I^-1 in {k}"))?;
            let alpha = random_element(&mut rng, d, 6);
            let j = i.mul_element(&alpha).unwrap();
            let q = j.divide(&i).map_err(|e| e.to_string())?;
            ensure(q.mul(&i).unwrap() == j, || format!("division in {k}"))?;
            cases += 2;
        }
        for p in primes_up_to(500) {
            let fac = kummer_dedekind(&k, &p.into()).unwrap();
            let sum: usize = fac.iter().map(|(q, e)| q.res_degree() * *e as usize).sum();
            ensure(sum == d, || format!("Σ e f at {p} in {k}"))?;
            let mut prod = Ideal::unit(&k);
            for (q, e) in &fac {
                for _ in 0..*e {
                    prod = prod.mul(&q.to_ideal()).unwrap();
                }
            }
            ensure(prod == Ideal::principal(&k, &k.from_int(p.into())).unwrap(), || {
                format!("recompose {p} in {k}")
            })?;
            cases += 1;
        }
    }
    let fields: Vec<ResidueField> = [
        (2u32, vec![1i64, 1, 0, 1]),
        (3, vec![1, 0, 1]),
        (7, vec![0, 1]),
        (11, vec![1, 0, 1]),
        (97, vec![0, 1]),
        (9973, vec![0, 1]),
    ]
    .into_iter()
    .map(|(p, m)| ResidueField::new(p.into(), &m.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()).unwrap())
    .collect();
    for n in 0..4000 {
        let rf = &fields[n % fields.len()];
        let deg = rng.gen_range(1..=6);
        let p = rf.p().to_i64().unwrap();
        let mut coeffs: Vec<Vec<BigInt>> = (0..deg)
            .map(|_| {
                let v: Vec<BigInt> = (0..rf.degree()).map(|_| BigInt::from(rng.gen_range(0..p))).collect();
                rf.ext().from_base_poly(&v)
            })
            .collect();
        coeffs.push(rf.ext().one());
        let g = rf.poly(coeffs);
        match splits_completely(&g, rf) {
            Ok(split) => ensure(split == (rf.count_roots_naive(&g) == deg), || {
                format!("Frobenius test over F_{}", rf.q())
            })?,
            Err(Error::SquarefreeViolation) => {}
            Err(e) => return Err(e.to_string()),
        }
        cases += 1;
    }
    ensure(cases >= 10_000, || format!("only {cases} cases"))?;
    Ok(format!("{cases} randomized cases, 0 failures"))
}

fn landau() -> Outcome {
    let mut detail = Vec::new();
    for poly in [[5i64, 0, 1], [1, 0, 1]] {
        let k = Arc::new(NumberField::from_i64(&poly).unwrap());
        let r = landau_ratio(&k, 10_000).map_err(|e| e.to_string())?;
        ensure((0.5..=2.0).contains(&r), || format!("ratio {r} for {k}"))?;
        detail.push(format!("{r:.4}"));
    }
    Ok(format!("ratios {}", detail.join(", ")))
}

fn cofactor_density() -> Outcome {
    let k = Arc::new(NumberField::from_i64(&[5, 0, 1]).unwrap());
    let unit = Ideal::unit(&k);
    let basis: Vec<FieldElement> = unit.basis();
    let ex = prime_cofactor_density(&unit, &basis, 5, DensityMode::Exhaustive { budget: 1000 })
        .map_err(|e| e.to_string())?;
    let exact = ex.exact.clone().unwrap();
    ensure(exact > BigRational::from_integer(0.into()) && exact < BigRational::one(), || {
        format!("exact density {exact}")
    })?;
    let s = prime_cofactor_density(&unit, &basis, 5, DensityMode::Sampled { samples: 100_000, seed: 42 })
        .map_err(|e| e.to_string())?;
    let z = (s.estimate - ex.estimate).abs() / s.std_err;
    ensure(z < 4.0, || format!("sampled {} vs exact {} ({z:.2} SE)", s.estimate, ex.estimate))?;
    Ok(format!("exact {exact} = {:.5}, sampled {:.5} ({z:.2} SE)", ex.estimate, s.estimate))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("oracle agreement (quadratic)", oracle_agreement),
        ("switch counts in Q(ζ64)", switch_counts),
        ("ramified prime in Q(√−5)", ramified_qsqrtm5),
        ("end-to-end in Q(ζ180)", zeta180_end_to_end),
        ("advice equivalence", advice_equivalence),
        ("arithmetic invariants", arithmetic_suite),
        ("Landau ratio", landau),
        ("prime cofactor density", cofactor_density),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.1}s]", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
