// SPDX-License-Identifier: Apache-2.0

//! Rational-integer helpers: primality, prime powers, small factorizations.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

fn miller_rabin_round(n: &BigUint, d: &BigUint, s: u32, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Miller–Rabin with the first 25 prime bases. Deterministic below 3.3·10^24,
/// and a strong probable-prime test beyond.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    let n = n.magnitude();
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in SMALL_PRIMES.iter() {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
    } else {
        for &p in SMALL_PRIMES.iter() {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0) as u32;
    let d = &n_minus_one >> s;
    SMALL_PRIMES
        .iter()
        .all(|&a| miller_rabin_round(n, &d, s, &BigUint::from(a)))
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigInt::from(n))
}

/// If `n = p^k` with `p` prime and `k ≥ 1`, returns `(p, k)`.
pub fn prime_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if n <= &BigInt::one() {
        return None;
    }
    if is_prime(n) {
        return Some((n.clone(), 1));
    }
    // a cheap small-factor scan settles most composites
    for &p in SMALL_PRIMES.iter() {
        let p = BigInt::from(p);
        if (n % &p).is_zero() {
            let mut m = n.clone();
            let mut k = 0u32;
            while (&m % &p).is_zero() {
                m /= &p;
                k += 1;
            }
            return m.is_one().then_some((p, k));
        }
    }
    let bits = n.bits() as u32;
    for k in 2..=bits {
        let root = n.nth_root(k);
        if root <= BigInt::one() {
            break;
        }
        if num_traits::pow(root.clone(), k as usize) == *n && is_prime(&root) {
            return Some((root, k));
        }
    }
    None
}

/// Factorization by trial division. Returns the prime factors found and the
/// unfactored cofactor (1 when complete).
pub fn trial_factor(n: &BigInt, bound: u64) -> (Vec<(BigInt, u32)>, BigInt) {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return (out, m);
    }
    for p in primes_up_to(bound) {
        if m.is_one() {
            break;
        }
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut k = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            k += 1;
        }
        if k > 0 {
            out.push((bp, k));
        }
    }
    if m > BigInt::one() && is_prime(&m) {
        out.push((m, 1));
        m = BigInt::one();
    }
    (out, m)
}

/// Representative of `a mod m` in `[0, m)`.
#[inline]
pub fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Representative of `a mod m` in `(-m/2, m/2]`.
pub fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// `(g, x, y)` with `g = gcd(a, b) ≥ 0` and `a·x + b·y = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

/// True if `n` is squarefree (checked by trial division; `n` must factor over
/// primes below `bound` apart from a prime cofactor).
pub fn is_squarefree(n: &BigInt, bound: u64) -> Option<bool> {
    let (fac, rest) = trial_factor(n, bound);
    if !rest.is_one() {
        // cofactor has no factor below bound; squarefree unless it is a square
        let r = rest.sqrt();
        if &r * &r == rest {
            return Some(false);
        }
        if fac.iter().any(|(_, k)| *k > 1) {
            return Some(false);
        }
        return None;
    }
    Some(fac.iter().all(|(_, k)| *k == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let ps: Vec<u64> = (0..200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(ps, primes_up_to(199));
    }

    #[test]
    fn primality_large() {
        // 2^127 - 1 is prime, 2^128 + 1 is not
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_prime(&m127));
        assert!(!is_prime(&((BigInt::one() << 128) + 1)));
        // Carmichael number
        assert!(!is_prime(&BigInt::from(561)));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(&BigInt::from(1)), None);
        assert_eq!(prime_power(&BigInt::from(29)), Some((BigInt::from(29), 1)));
        assert_eq!(prime_power(&BigInt::from(121)), Some((BigInt::from(11), 2)));
        assert_eq!(prime_power(&BigInt::from(4)), Some((BigInt::from(2), 2)));
        assert_eq!(prime_power(&BigInt::from(12)), None);
        let big = num_traits::pow(BigInt::from(1_000_003u64), 7);
        assert_eq!(prime_power(&big), Some((BigInt::from(1_000_003u64), 7)));
        let semi = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert_eq!(prime_power(&semi), None);
    }

    #[test]
    fn symmetric_residues() {
        let m = BigInt::from(29);
        assert_eq!(sym_mod(&BigInt::from(16), &m), BigInt::from(-13));
        assert_eq!(sym_mod(&BigInt::from(-1), &m), BigInt::from(-1));
        assert_eq!(mod_inverse(&BigInt::from(2), &m), Some(BigInt::from(15)));
    }

    #[test]
    fn factor_by_trial() {
        let (f, rest) = trial_factor(&BigInt::from(-84), 100);
        assert!(rest.is_one());
        assert_eq!(
            f,
            vec![
                (BigInt::from(2), 2),
                (BigInt::from(3), 1),
                (BigInt::from(7), 1)
            ]
        );
    }
}
