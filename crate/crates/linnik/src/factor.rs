//! Integer factorization at desk scale, and the cube-part decomposition.
//!
//! Factoring runs trial division by all primes up to 10^6 first; any
//! remaining composite cofactor (necessarily > 10^12 with no small factors)
//! is split by Brent's variant of Pollard's rho. The rho parameters are
//! swept deterministically (c = 1, 2, 3, …), so factorizations — and
//! everything derived from them — are reproducible run to run.

use std::sync::OnceLock;

use crate::primality::is_prime_u64;
use crate::sieve;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve::simple_sieve(TRIAL_DIVISION_LIMIT))
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Brent-cycle rho: one nontrivial factor of an odd composite `n` that has
/// no prime factor below the trial-division limit.
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n) && n % 2 == 1);
    for c in 1u64.. {
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = 0u64;
        let mut checkpoint = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && g == 1 {
                checkpoint = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += batch;
            }
            r *= 2;
        }
        if g == n {
            // The batched gcd jumped past the factor; replay single steps
            // from the last checkpoint.
            loop {
                checkpoint = f(checkpoint);
                g = gcd(x.abs_diff(checkpoint), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        // Degenerate cycle for this c; sweep to the next parameter.
    }
    unreachable!("rho parameter sweep is unbounded")
}

fn push_factor(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    push_factor(d, out);
    push_factor(n / d, out);
}

/// Prime factorization of `n >= 1` as sorted (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_u64 requires n >= 1");
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if n > 1 {
        if n <= TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT && is_prime_u64(n) {
            // No factor below the trial limit and n below its square: prime.
            factors.push((n, 1));
        } else {
            let mut rest = Vec::new();
            push_factor(n, &mut rest);
            rest.sort_unstable();
            let mut i = 0;
            while i < rest.len() {
                let p = rest[i];
                let mut e = 0u32;
                while i < rest.len() && rest[i] == p {
                    e += 1;
                    i += 1;
                }
                factors.push((p, e));
            }
        }
    }
    factors
}

/// The unique decomposition q = q₃³ · q₂ with q₂ cube-free: from
/// q = ∏ p^e, q₃ = ∏ p^⌊e/3⌋ and q₂ = ∏ p^(e mod 3).
pub fn cubic_part(q: u64) -> (u64, u64) {
    assert!(q >= 1, "cubic_part requires q >= 1");
    let mut q3 = 1u64;
    let mut q2 = 1u64;
    for (p, e) in factor_u64(q) {
        q3 *= p.pow(e / 3);
        q2 *= p.pow(e % 3);
    }
    (q3, q2)
}
