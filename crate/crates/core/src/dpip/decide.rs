// SPDX-License-Identifier: Apache-2.0

//! Prime-ideal and general-ideal principality decisions.

use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::advice::AdviceBundle;
use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::nf::{is_prime_ideal, lll_reduce, FieldElement, Ideal, NumberField, PrimeIdeal};
use crate::residue::{elem_in_prime, reduce_mod, splits_completely, ResidueField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
        })
    }
}

/// Why a verdict was reached. Subfield indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// The prime divides a subfield discriminant and is listed in `S`.
    InS,
    /// The prime divides a subfield discriminant and is not in `S`.
    NotInS,
    /// The `i`-th subfield polynomial does not split modulo the prime.
    NonSplitAt(usize),
    /// Every subfield polynomial splits completely.
    AllSplit,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::InS => f.write_str("divides a subfield discriminant; in S"),
            Reason::NotInS => f.write_str("divides a subfield discriminant; not in S"),
            Reason::NonSplitAt(i) => write!(f, "f_{i} does not split completely"),
            Reason::AllSplit => f.write_str("all subfield polynomials split completely"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// The prime the general-ideal path decided on.
    pub witness_prime: Option<PrimeIdeal>,
    pub switches_used: usize,
    pub reason: Reason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchConfig {
    bound_b: BigInt,
    max_trials: usize,
    seed: u64,
}

impl SwitchConfig {
    pub const DEFAULT_BOUND: u32 = 16;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn new(bound_b: BigInt, max_trials: usize, seed: u64) -> Result<Self> {
        if bound_b < BigInt::one() {
            return Err(Error::InvalidConfig("bound_B must be at least 1".into()));
        }
        if max_trials == 0 {
            return Err(Error::InvalidConfig("max_trials must be at least 1".into()));
        }
        Ok(SwitchConfig {
            bound_b,
            max_trials,
            seed,
        })
    }

    /// `B = 16`, `64·d` trials, seed 42.
    pub fn for_field(field: &NumberField) -> Self {
        SwitchConfig {
            bound_b: Self::DEFAULT_BOUND.into(),
            max_trials: 64 * field.degree(),
            seed: Self::DEFAULT_SEED,
        }
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound_b
    }

    pub fn max_trials(&self) -> usize {
        self.max_trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// The conjectural sampling bound `2^d·|Δ|`.
pub fn conjectural_bound(field: &NumberField) -> BigInt {
    field.disc().abs() << field.degree()
}

/// Whether the prime ideal `prime` is principal, given the advice.
pub fn prime_ideal_dpip(prime: &PrimeIdeal, advice: &AdviceBundle) -> Result<Decision> {
    if **prime.field() != **advice.field() {
        return Err(Error::AdviceFieldMismatch);
    }
    let decision = |verdict, reason| Decision {
        verdict,
        witness_prime: None,
        switches_used: 0,
        reason,
    };
    for disc in advice.disc_cache() {
        if elem_in_prime(disc, prime)? {
            return Ok(if advice.in_s(prime) {
                decision(Verdict::Yes, Reason::InS)
            } else {
                decision(Verdict::No, Reason::NotInS)
            });
        }
    }
    let rf = ResidueField::of_prime(prime);
    for (i, sf) in advice.subfields().iter().enumerate() {
        let g = reduce_mod(&sf.poly, prime)?;
        if !splits_completely(&g, &rf)? {
            return Ok(decision(Verdict::No, Reason::NonSplitAt(i + 1)));
        }
    }
    Ok(decision(Verdict::Yes, Reason::AllSplit))
}

/// Deterministic generator for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sampling state for switching an ideal `I` to `(r)/I`.
#[derive(Clone, Debug)]
pub struct Switcher {
    ideal: Ideal,
    basis: Vec<Vec<BigInt>>,
    inverse: Ideal,
    norm: BigInt,
}

impl Switcher {
    /// Uses the given `Z`-basis of `ideal` (integral coordinates).
    pub fn new(ideal: &Ideal, basis: &[FieldElement]) -> Result<Self> {
        let norm = ideal.integral_norm().ok_or(Error::NonIntegral)?;
        if basis.len() != ideal.degree() || basis.iter().any(|b| !b.is_integral()) {
            return Err(Error::InvalidIdeal("basis must be d integral elements".into()));
        }
        Ok(Switcher {
            ideal: ideal.clone(),
            basis: basis.iter().map(|b| b.numerators().to_vec()).collect(),
            inverse: ideal.inverse()?,
            norm,
        })
    }

    /// LLL-reduces the basis first.
    pub fn reduced(ideal: &Ideal) -> Result<Self> {
        Self::new(ideal, &lll_reduce(ideal)?)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `r = Σ r_i b_i` with `r_i` uniform in `[-B, B]`; zero is redrawn.
    pub fn draw<R: Rng>(&self, bound: &BigInt, rng: &mut R) -> FieldElement {
        let d = self.basis.len();
        let lo = -bound.clone();
        let hi = bound + 1;
        loop {
            let mut r = vec![BigInt::zero(); d];
            for b in &self.basis {
                let c = rng.gen_bigint_range(&lo, &hi);
                if c.is_zero() {
                    continue;
                }
                for (acc, x) in r.iter_mut().zip(b) {
                    *acc += &c * x;
                }
            }
            if r.iter().any(|c| !c.is_zero()) {
                return FieldElement::integral(r);
            }
        }
    }

    /// `N((r)/I)`.
    pub fn cofactor_norm(&self, r: &FieldElement) -> BigInt {
        let n = self.ideal.field().norm_coords(r.numerators()).abs();
        let (q, rem) = n.div_rem(&self.norm);
        debug_assert!(rem.is_zero(), "r must lie in I");
        q
    }

    /// `(r)/I`.
    pub fn cofactor(&self, r: &FieldElement) -> Result<Ideal> {
        let q = self.inverse.mul_element(r)?;
        if !q.is_integral() {
            return Err(Error::NonDivisible);
        }
        Ok(q)
    }

    /// `(r)/I` when it is a prime ideal; the norm is screened first.
    pub fn prime_cofactor(&self, r: &FieldElement) -> Result<Option<PrimeIdeal>> {
        if prime_power(&self.cofactor_norm(r)).is_none() {
            return Ok(None);
        }
        Ok(is_prime_ideal(&self.cofactor(r)?))
    }
}

/// One switching sample: `r ∈ I` drawn from `basis` and `I' = (r)/I`.
pub fn sample_switch<R: Rng>(
    ideal: &Ideal,
    basis: &[FieldElement],
    cfg: &SwitchConfig,
    rng: &mut R,
) -> Result<(FieldElement, Ideal)> {
    let sw = Switcher::new(ideal, basis)?;
    let r = sw.draw(cfg.bound(), rng);
    let ip = sw.cofactor(&r)?;
    Ok((r, ip))
}

/// Whether the integral ideal `ideal` is principal, by switching to a prime
/// in the inverse class and deciding that prime.
pub fn general_ideal_dpip(ideal: &Ideal, advice: &AdviceBundle, cfg: &SwitchConfig) -> Result<Decision> {
    if **ideal.field() != **advice.field() {
        return Err(Error::AdviceFieldMismatch);
    }
    if !ideal.is_integral() {
        return Err(Error::NonIntegral);
    }
    let with_witness = |prime: PrimeIdeal, switches_used: usize| -> Result<Decision> {
        let mut d = prime_ideal_dpip(&prime, advice)?;
        d.witness_prime = Some(prime);
        d.switches_used = switches_used;
        Ok(d)
    };
    if let Some(prime) = is_prime_ideal(ideal) {
        return with_witness(prime, 0);
    }
    let sw = Switcher::reduced(ideal)?;
    for trial in 0..cfg.max_trials() {
        let mut rng = trial_rng(cfg.seed(), trial as u64);
        let r = sw.draw(cfg.bound(), &mut rng);
        if let Some(prime) = sw.prime_cofactor(&r)? {
            return with_witness(prime, trial + 1);
        }
    }
    Err(Error::MaxTrialsExceeded(cfg.max_trials()))
}
