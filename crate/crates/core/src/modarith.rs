//! Modular arithmetic for a single odd prime.
//!
//! [`ModContext`] holds `m!`, `(m!)^-1` and `m^-1` modulo `p` for every
//! `m < p`, so a binomial with top index below `p` costs three table reads
//! and two multiplications. Tables are `u32`. The free functions widen to
//! `u128`; [`ModContext::mul`] relies on the 2^31 cap and stays in `u64`.

use crate::error::{Error, Result};
use crate::primes::smallest_factor;

/// Largest accepted modulus (exclusive).
pub const MODULUS_CAP: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModContext {
    p: u64,
    fact: Vec<u32>,
    inv_fact: Vec<u32>,
    /// `inv[0]` is unused and stored as 0.
    inv: Vec<u32>,
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(a: u64, mut e: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Modular inverse by the extended Euclidean algorithm, if `gcd(a, m) = 1`.
pub fn inverse_egcd(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

pub fn make_context(p: u64) -> Result<ModContext> {
    ModContext::new(p)
}

impl ModContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::InvalidModulus { p });
        }
        if p >= MODULUS_CAP {
            return Err(Error::ModulusTooLarge { p });
        }
        if let Some(factor) = smallest_factor(p) {
            return Err(Error::NotPrime { p, factor });
        }

        let len = p as usize;
        let mut inv = vec![0u32; len];
        inv[1] = 1;
        for m in 2..len {
            // p = (p / m) * m + p % m  =>  m^-1 = -(p / m) * (p % m)^-1
            let q = p / m as u64;
            let r = (p % m as u64) as usize;
            inv[m] = (p - mulmod(q, inv[r] as u64, p)) as u32;
        }

        let mut fact = vec![1u32; len];
        let mut inv_fact = vec![1u32; len];
        for m in 1..len {
            fact[m] = mulmod(fact[m - 1] as u64, m as u64, p) as u32;
            inv_fact[m] = mulmod(inv_fact[m - 1] as u64, inv[m] as u64, p) as u32;
        }

        Ok(ModContext {
            p,
            fact,
            inv_fact,
            inv,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `m! mod p`, `m < p`.
    #[inline]
    pub fn fact(&self, m: u64) -> u64 {
        self.fact[m as usize] as u64
    }

    #[inline]
    pub fn inv_fact(&self, m: u64) -> u64 {
        self.inv_fact[m as usize] as u64
    }

    /// `m^-1 mod p`, `1 <= m < p`.
    #[inline]
    pub fn inv(&self, m: u64) -> u64 {
        self.inv[m as usize] as u64
    }

    /// `m^-1` recovered as `(m!)^-1 * (m - 1)!`.
    pub fn inverse_from_factorials(&self, m: u64) -> u64 {
        mulmod(self.inv_fact(m), self.fact(m - 1), self.p)
    }

    /// `a * b mod p` for residues `a, b < p`; `p < 2^31` keeps the product
    /// below 2^62.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        a * b % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        powmod(a, e, self.p)
    }

    /// `C(n, k) mod p` with no range check on `n`.
    #[inline]
    pub(crate) fn binom_unchecked(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        self.mul(
            self.mul(self.fact(n), self.inv_fact(k)),
            self.inv_fact(n - k),
        )
    }

    pub fn fact_table(&self) -> &[u32] {
        &self.fact
    }

    pub fn inv_fact_table(&self) -> &[u32] {
        &self.inv_fact
    }

    pub fn inv_table(&self) -> &[u32] {
        &self.inv
    }
}

/// `C(n, k) mod p` for `n < p`; 0 when `k > n`.
pub fn binom_mod(ctx: &ModContext, n: u64, k: u64) -> Result<u64> {
    if n >= ctx.p {
        return Err(Error::OutOfTable { n, p: ctx.p });
    }
    Ok(ctx.binom_unchecked(n, k))
}
