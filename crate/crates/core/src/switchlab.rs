// SPDX-License-Identifier: Apache-2.0

//! Statistics for random ideal switching: waiting times until a prime
//! cofactor, the density of prime cofactors over the sampling box, and the
//! prime ideal counting function.

use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::primes_up_to;
use crate::dpip::{trial_rng, Switcher};
use crate::error::{Error, Result};
use crate::nf::{kummer_dedekind, FieldElement, Ideal, NumberField};

/// Samples allowed per trial before it is recorded at the cap.
pub const TRIAL_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchStats {
    pub bound_b: BigInt,
    pub trials: usize,
    /// Samples drawn in each trial up to and including the first prime.
    pub switch_counts: Vec<u64>,
    pub mean: BigRational,
    /// Successes per sample, an estimate of `N/(2B+1)^d`.
    pub prime_fraction: BigRational,
    pub seed: u64,
    /// Set when some trial hit [`TRIAL_CAP`].
    pub capped: bool,
}

impl SwitchStats {
    fn from_counts(bound_b: BigInt, switch_counts: Vec<u64>, seed: u64) -> Self {
        let total: u64 = switch_counts.iter().sum();
        let trials = switch_counts.len();
        let capped = switch_counts.iter().any(|&c| c >= TRIAL_CAP);
        let successes = switch_counts.iter().filter(|&&c| c < TRIAL_CAP).count();
        SwitchStats {
            bound_b,
            trials,
            mean: BigRational::new(total.into(), trials.into()),
            prime_fraction: BigRational::new(successes.into(), total.max(1).into()),
            switch_counts,
            seed,
            capped,
        }
    }

    pub fn mean_f64(&self) -> f64 {
        self.mean.to_f64().unwrap_or(f64::NAN)
    }

    pub fn prime_fraction_f64(&self) -> f64 {
        self.prime_fraction.to_f64().unwrap_or(f64::NAN)
    }

    /// Standard error of the mean waiting time.
    pub fn std_err(&self) -> f64 {
        let n = self.trials as f64;
        if self.trials < 2 {
            return f64::INFINITY;
        }
        let m = self.mean_f64();
        let var = self
            .switch_counts
            .iter()
            .map(|&c| (c as f64 - m).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    }
}

/// Independent generator for one trial at one bound.
fn stream_rng(seed: u64, bound: &BigInt, trial: u64) -> ChaCha8Rng {
    let b = bound.to_u64().unwrap_or(u64::MAX);
    // splitmix64 of the bound, folded into the key
    let mut z = b.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    trial_rng(seed ^ z, trial)
}

fn run_trial(sw: &Switcher, bound: &BigInt, seed: u64, trial: u64) -> Result<u64> {
    let mut rng = stream_rng(seed, bound, trial);
    for n in 1..=TRIAL_CAP {
        let r = sw.draw(bound, &mut rng);
        if sw.prime_cofactor(&r)?.is_some() {
            return Ok(n);
        }
    }
    Ok(TRIAL_CAP)
}

/// Runs `trials` repeat-until-prime experiments for each bound, using the
/// LLL-reduced basis of `ideal`. `jobs` limits the worker threads.
pub fn switch_stats(
    ideal: &Ideal,
    bounds: &[BigInt],
    trials: usize,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Vec<SwitchStats>> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if let Some(b) = bounds.iter().find(|b| **b < BigInt::one()) {
        return Err(Error::InvalidConfig(format!("bound {b} must be at least 1")));
    }
    let sw = Switcher::reduced(ideal)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(|| {
        bounds
            .iter()
            .map(|b| {
                let counts = (0..trials as u64)
                    .into_par_iter()
                    .map(|t| run_trial(&sw, b, seed, t))
                    .collect::<Result<Vec<u64>>>()?;
                Ok(SwitchStats::from_counts(b.clone(), counts, seed))
            })
            .collect()
    })
}

/// Six significant digits in plain decimal notation.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (5 - mag).max(0) as usize;
    format!("{x:.prec$}")
}

pub const CSV_HEADER: &str = "bound_B,trials,mean_switches,prime_fraction,seed";

pub fn to_csv(stats: &[SwitchStats]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in stats {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.bound_b,
            s.trials,
            format_sig6(s.mean_f64()),
            format_sig6(s.prime_fraction_f64()),
            s.seed
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    /// Every point of the box, refused above `budget` points.
    Exhaustive { budget: u64 },
    /// Uniform samples from the box, the zero vector counted as a failure.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Density {
    /// Exact value in exhaustive mode.
    pub exact: Option<BigRational>,
    pub estimate: f64,
    pub std_err: f64,
    pub points: u64,
}

/// Fraction of `(r_1, …, r_d) ∈ [-B, B]^d` for which `(Σ r_i b_i)/I` is a
/// prime ideal.
pub fn prime_cofactor_density(
    ideal: &Ideal,
    basis: &[FieldElement],
    bound: u64,
    mode: DensityMode,
) -> Result<Density> {
    let sw = Switcher::new(ideal, basis)?;
    let d = basis.len();
    let side = 2 * bound + 1;
    let coeffs: Vec<Vec<BigInt>> = basis.iter().map(|b| b.numerators().to_vec()).collect();
    let combine = |r: &[i64]| -> FieldElement {
        let mut v = vec![BigInt::zero(); d];
        for (c, b) in r.iter().zip(&coeffs) {
            if *c != 0 {
                for (acc, x) in v.iter_mut().zip(b) {
                    *acc += x * *c;
                }
            }
        }
        FieldElement::integral(v)
    };
    let hit = |r: &[i64]| -> Result<bool> {
        let e = combine(r);
        if e.is_zero() {
            return Ok(false);
        }
        Ok(sw.prime_cofactor(&e)?.is_some())
    };
    match mode {
        DensityMode::Exhaustive { budget } => {
            let points = (side as u128).checked_pow(d as u32).filter(|&n| n <= budget as u128);
            let points = match points {
                Some(n) => n as u64,
                None => {
                    return Err(Error::BudgetExceeded {
                        grid: format!("{side}^{d}"),
                        budget,
                    })
                }
            };
            let b = bound as i64;
            let count = (0..points)
                .into_par_iter()
                .map(|mut idx| {
                    let mut r = vec![0i64; d];
                    for c in r.iter_mut() {
                        *c = (idx % side) as i64 - b;
                        idx /= side;
                    }
                    hit(&r).map(u64::from)
                })
                .sum::<Result<u64>>()?;
            let exact = BigRational::new(count.into(), points.into());
            Ok(Density {
                estimate: exact.to_f64().unwrap_or(f64::NAN),
                exact: Some(exact),
                std_err: 0.0,
                points,
            })
        }
        DensityMode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidConfig("samples must be at least 1".into()));
            }
            let lo = -BigInt::from(bound);
            let hi = BigInt::from(bound + 1);
            let count = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let mut rng = trial_rng(seed, i);
                    let r: Vec<i64> = (0..d)
                        .map(|_| rng.gen_bigint_range(&lo, &hi).to_i64().unwrap())
                        .collect();
                    hit(&r).map(u64::from)
                })
                .sum::<Result<u64>>()?;
            let p = count as f64 / samples as f64;
            Ok(Density {
                exact: None,
                estimate: p,
                std_err: (p * (1.0 - p) / samples as f64).sqrt(),
                points: samples,
            })
        }
    }
}

/// Number of prime ideals of norm at most `t`.
pub fn prime_ideal_count(field: &std::sync::Arc<NumberField>, t: u64) -> Result<u64> {
    let mut count = 0;
    let tb = BigInt::from(t);
    for p in primes_up_to(t) {
        for (prime, _) in kummer_dedekind(field, &BigInt::from(p))? {
            if prime.norm() <= tb {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `π_K(T)·log(T)/T`.
pub fn landau_ratio(field: &std::sync::Arc<NumberField>, t: u64) -> Result<f64> {
    if t < 100 {
        return Err(Error::InvalidConfig("T must be at least 100".into()));
    }
    if field.degree() > 4 {
        return Err(Error::DegreeTooLarge(field.degree()));
    }
    let n = prime_ideal_count(field, t)?;
    Ok(n as f64 * (t as f64).ln() / t as f64)
}
