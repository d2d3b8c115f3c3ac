//! Integer utilities and the arithmetic functions ω, ρ and η.
//!
//! Indices handled here are small machine integers, so `u64` factorization
//! (trial division followed by Pollard rho) is plenty. Sequence terms are
//! big integers and are never factored; [`remove_shared_factors`] is the
//! factorization-free tool for those.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization of `n` as `(prime, multiplicity)` pairs, primes increasing.
///
/// `n = 1` (and, by convention, `n = 0`) gives an empty list.
pub fn prime_factors(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut m = n;
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    // wheel over 6k ± 1
    let mut d = 7u64;
    let mut step = 4u64;
    while d <= TRIAL_LIMIT && d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += step;
        step = 6 - step;
    }
    if m > 1 {
        let mut rest = Vec::new();
        split_large(m, &mut rest);
        rest.sort_unstable();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

fn split_large(n: u64, acc: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        acc.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_large(d, acc);
    split_large(n / d, acc);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns a non-trivial divisor of the odd composite `n` (Brent's variant).
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> u32 {
    prime_factors(n).len() as u32
}

/// Sum of 1/p² over the distinct primes p dividing `n`.
pub fn rho(n: u64) -> f64 {
    prime_factors(n)
        .iter()
        .map(|&(p, _)| 1.0 / (p as f64 * p as f64))
        .sum()
}

/// Twice the sum of ln p over the distinct primes p dividing `n`.
pub fn eta(n: u64) -> f64 {
    2.0 * prime_factors(n)
        .iter()
        .map(|&(p, _)| (p as f64).ln())
        .sum::<f64>()
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && prime_factors(n).iter().all(|&(_, e)| e == 1)
}

/// The squarefree kernel of `n` up to squares: the product of primes
/// occurring to an odd power.
pub fn squarefree_part(n: u64) -> u64 {
    prime_factors(n)
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p)
        .product()
}

/// ω, ρ and η of a single index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArithProfile {
    pub n: u64,
    pub omega: u32,
    pub rho: f64,
    pub eta: f64,
}

impl ArithProfile {
    pub fn of(n: u64) -> Self {
        Self::from_primes(n, prime_factors(n).into_iter().map(|(p, _)| p))
    }

    fn from_primes(n: u64, primes: impl Iterator<Item = u64>) -> Self {
        let mut profile = ArithProfile {
            n,
            omega: 0,
            rho: 0.0,
            eta: 0.0,
        };
        for p in primes {
            let pf = p as f64;
            profile.omega += 1;
            profile.rho += 1.0 / (pf * pf);
            profile.eta += 2.0 * pf.ln();
        }
        profile
    }
}

/// Smallest-prime-factor sieve for fast [`ArithProfile`] lookups over a range.
#[derive(Debug, Clone)]
pub struct ProfileSieve {
    spf: Vec<u32>,
}

impl ProfileSieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(1) as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        ProfileSieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Distinct primes of `n`, increasing. Falls back to trial division past the sieve.
    pub fn distinct_primes(&self, n: u64) -> Vec<u64> {
        if n > self.limit() {
            return prime_factors(n).into_iter().map(|(p, _)| p).collect();
        }
        let mut m = n as usize;
        let mut out = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            out.push(p as u64);
            while m % p == 0 {
                m /= p;
            }
        }
        out
    }

    pub fn profile(&self, n: u64) -> ArithProfile {
        ArithProfile::from_primes(n, self.distinct_primes(n).into_iter())
    }
}

/// Natural logarithm of a positive big integer from its leading 64 bits.
pub fn log_big(x: &BigUint) -> Result<f64> {
    if x.is_zero() {
        return Err(Error::Precondition("log of zero".into()));
    }
    let bits = x.bits();
    if bits <= 64 {
        return Ok((x.to_u64().unwrap() as f64).ln());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap() as f64;
    Ok(top.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// Strips from `a` every prime that also divides `b`.
///
/// The result divides `a`, is coprime to `b`, and `a / result` is composed
/// only of primes dividing `b`. No factorization is performed.
pub fn remove_shared_factors(a: &BigUint, b: &BigUint) -> BigUint {
    debug_assert!(!a.is_zero() && !b.is_zero());
    let mut rest = a.clone();
    let mut g = rest.gcd(b);
    while !g.is_one() {
        rest /= &g;
        g = rest.gcd(&g);
    }
    rest
}

/// p-adic valuation of a non-zero big integer.
pub fn valuation(x: &BigUint, p: u64) -> u32 {
    debug_assert!(p >= 2 && !x.is_zero());
    let p = BigUint::from(p);
    let mut v = 0;
    let mut m = x.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn is_perfect_square(x: &BigUint) -> bool {
    let r = x.sqrt();
    &r * &r == *x
}
