//! Sieve of Eratosthenes and trial-division helpers.

/// `is_prime[m]` for `0 <= m <= limit`.
pub fn sieve(limit: u64) -> Vec<bool> {
    let len = limit as usize + 1;
    let mut is_prime = vec![true; len];
    is_prime[0] = false;
    if len > 1 {
        is_prime[1] = false;
    }
    let mut i = 2usize;
    while i * i < len {
        if is_prime[i] {
            for j in (i * i..len).step_by(i) {
                is_prime[j] = false;
            }
        }
        i += 1;
    }
    is_prime
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo {
        return Vec::new();
    }
    sieve(hi)
        .into_iter()
        .enumerate()
        .skip(lo as usize)
        .filter_map(|(m, prime)| prime.then_some(m as u64))
        .collect()
}

/// Smallest prime factor of a composite `n`; `None` for primes, 0 and 1.
pub fn smallest_factor(n: u64) -> Option<u64> {
    if n < 4 {
        return None;
    }
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 2;
    }
    None
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_factor(n).is_none()
}
