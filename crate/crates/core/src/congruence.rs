//! The congruence `S(p, k) = sum_{i=1}^{p-2k-1} 2^(i-1) C(k-1+i, k) == 0 (mod p)`.
//!
//! `S` is evaluated three ways:
//!
//! - [`sum_exact`]: big-integer sum reduced at the end. Valid for any odd
//!   modulus, so it is also what [`composite_scan`] uses.
//! - [`sum_kernel_direct`]: termwise with table binomials and a running
//!   power of two.
//! - [`sum_kernel_incremental`]: the term ratio
//!   `T_{i+1} / T_i = 2 (k + i) / i`, one inverse read per term.
//!
//! The top binomial index is at most `p - k - 2`, so table lookups never
//! leave `[0, p)`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{binomial_exact, pow2_int};
use crate::modarith::ModContext;
use crate::primes::{primes_in_range, sieve, smallest_factor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactOracle,
    DirectKernel,
    IncrementalKernel,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactOracle => "exact-oracle",
            Method::DirectKernel => "direct-kernel",
            Method::IncrementalKernel => "incremental-kernel",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub p: u64,
    pub k: u64,
    #[serde(rename = "terms")]
    pub term_count: u64,
    pub residue: u64,
    pub method: Method,
    pub passed: bool,
}

impl CongruenceReport {
    fn new(p: u64, k: u64, residue: u64, method: Method) -> Self {
        CongruenceReport {
            p,
            k,
            term_count: term_count(p, k),
            residue,
            method,
            passed: residue == 0,
        }
    }
}

/// Aggregate over a prime range.
///
/// `elapsed` and `worker_count` describe the run, not the result, and are
/// left out of serialization and equality.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub p_min: u64,
    pub p_max: u64,
    pub primes_checked: u64,
    pub pairs_checked: u64,
    pub failures: Vec<CongruenceReport>,
    #[serde(skip)]
    pub elapsed: f64,
    #[serde(skip)]
    pub worker_count: usize,
}

impl PartialEq for SweepReport {
    fn eq(&self, other: &Self) -> bool {
        self.p_min == other.p_min
            && self.p_max == other.p_max
            && self.primes_checked == other.primes_checked
            && self.pairs_checked == other.pairs_checked
            && self.failures == other.failures
    }
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> SweepSummary {
        SweepSummary {
            p_min: self.p_min,
            p_max: self.p_max,
            primes_checked: self.primes_checked,
            pairs_checked: self.pairs_checked,
            failures: self.failures.len() as u64,
            passed: self.passed(),
        }
    }
}

/// The deterministic part of a [`SweepReport`], as printed on the summary line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub p_min: u64,
    pub p_max: u64,
    pub primes_checked: u64,
    pub pairs_checked: u64,
    pub failures: u64,
    pub passed: bool,
}

/// Number of terms `p - 2k - 1`, for `k` already validated.
pub fn term_count(p: u64, k: u64) -> u64 {
    p - 2 * k - 1
}

fn check_args(p: u64, k: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidModulus { p });
    }
    if k < 1 || k > (p - 1) / 2 {
        return Err(Error::KOutOfRange { p, k });
    }
    Ok(())
}

/// `S(p, k)` as an unreduced integer.
pub fn sum_exact_integer(p: u64, k: u64) -> Result<BigInt> {
    check_args(p, k)?;
    Ok((1..=term_count(p, k))
        .map(|i| pow2_int(i - 1) * binomial_exact(k - 1 + i, k))
        .sum())
}

/// `S(p, k) mod p` in exact arithmetic; `p` may be composite.
pub fn sum_exact(p: u64, k: u64) -> Result<u64> {
    let total = sum_exact_integer(p, k)?;
    Ok((total % BigInt::from(p))
        .to_u64()
        .expect("residue of a non-negative sum"))
}

pub fn sum_kernel_direct(ctx: &ModContext, k: u64) -> Result<u64> {
    let p = ctx.p();
    check_args(p, k)?;
    let mut pow2 = 1u64;
    let mut acc = 0u64;
    for i in 1..=term_count(p, k) {
        acc = (acc + ctx.mul(pow2, ctx.binom_unchecked(k - 1 + i, k))) % p;
        pow2 = (pow2 * 2) % p;
    }
    Ok(acc)
}

pub fn sum_kernel_incremental(ctx: &ModContext, k: u64) -> Result<u64> {
    let p = ctx.p();
    check_args(p, k)?;
    let terms = term_count(p, k);
    if terms == 0 {
        return Ok(0);
    }
    // T_1 = 2^0 C(k, k) = 1
    let mut term = 1u64;
    let mut acc = 1u64;
    for i in 1..terms {
        term = ctx.mul(ctx.mul(term, (2 * (k + i)) % p), ctx.inv(i));
        acc = (acc + term) % p;
    }
    Ok(acc)
}

pub fn report(ctx: &ModContext, k: u64, method: Method) -> Result<CongruenceReport> {
    let p = ctx.p();
    let residue = match method {
        Method::ExactOracle => sum_exact(p, k)?,
        Method::DirectKernel => sum_kernel_direct(ctx, k)?,
        Method::IncrementalKernel => sum_kernel_incremental(ctx, k)?,
    };
    Ok(CongruenceReport::new(p, k, residue, method))
}

/// One incremental-kernel report per `k` in `[1, (p-1)/2]`.
pub fn verify_context(ctx: &ModContext) -> Result<Vec<CongruenceReport>> {
    (1..=(ctx.p() - 1) / 2)
        .map(|k| report(ctx, k, Method::IncrementalKernel))
        .collect()
}

pub fn verify_prime(p: u64) -> Result<Vec<CongruenceReport>> {
    verify_context(&ModContext::new(p)?)
}

/// Verifies every prime in `[p_min, p_max]` on `workers` threads.
///
/// Threads claim primes from a shared index; failures are sorted by
/// `(p, k)` after all threads join, so the report does not depend on
/// scheduling or on `workers`.
pub fn sweep(p_min: u64, p_max: u64, workers: usize) -> Result<SweepReport> {
    if p_min < 3 || p_min > p_max {
        return Err(Error::InvalidRange {
            lo: p_min,
            hi: p_max,
            reason: "need 3 <= min <= max",
        });
    }
    if p_max >= crate::modarith::MODULUS_CAP {
        return Err(Error::ModulusTooLarge { p: p_max });
    }
    let workers = workers.max(1);
    let start = Instant::now();
    let primes = primes_in_range(p_min, p_max);
    let next = AtomicUsize::new(0);
    let collected: Mutex<Vec<(u64, Vec<CongruenceReport>)>> = Mutex::new(Vec::new());
    let first_error: Mutex<Option<Error>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..workers.min(primes.len().max(1)) {
            scope.spawn(|| {
                let mut local = Vec::new();
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&p) = primes.get(idx) else { break };
                    match verify_prime(p) {
                        Ok(reports) => {
                            let pairs = reports.len() as u64;
                            let failed = reports.into_iter().filter(|r| !r.passed).collect();
                            local.push((pairs, failed));
                        }
                        Err(e) => {
                            first_error.lock().unwrap().get_or_insert(e);
                            break;
                        }
                    }
                }
                collected.lock().unwrap().extend(local);
            });
        }
    });

    if let Some(e) = first_error.into_inner().unwrap() {
        return Err(e);
    }
    let collected = collected.into_inner().unwrap();
    let pairs_checked = collected.iter().map(|(pairs, _)| pairs).sum();
    let mut failures: Vec<CongruenceReport> = collected
        .into_iter()
        .flat_map(|(_, failed)| failed)
        .collect();
    failures.sort_by_key(|r| (r.p, r.k));

    Ok(SweepReport {
        p_min,
        p_max,
        primes_checked: primes.len() as u64,
        pairs_checked,
        failures,
        elapsed: start.elapsed().as_secs_f64(),
        worker_count: workers,
    })
}

/// Exact-oracle reports for every odd composite `n <= n_max` and every
/// `k` in `[1, (n-1)/2]`. Informational only.
pub fn composite_scan(n_max: u64) -> Result<Vec<CongruenceReport>> {
    if n_max < 9 {
        return Err(Error::InvalidRange {
            lo: 9,
            hi: n_max,
            reason: "composite scan needs an upper bound >= 9",
        });
    }
    let is_prime = sieve(n_max);
    let mut out = Vec::new();
    for n in (9..=n_max).step_by(2).filter(|&n| !is_prime[n as usize]) {
        for k in 1..=(n - 1) / 2 {
            out.push(CongruenceReport::new(
                n,
                k,
                sum_exact(n, k)?,
                Method::ExactOracle,
            ));
        }
    }
    Ok(out)
}

/// Rejects anything but an odd prime, naming the smallest factor of a composite.
pub fn require_prime(p: u64) -> Result<()> {
    if p < 3 {
        return Err(Error::InvalidModulus { p });
    }
    match smallest_factor(p) {
        Some(factor) => Err(Error::NotPrime { p, factor }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::make_context;

    #[test]
    fn exact_examples() {
        assert_eq!(sum_exact_integer(5, 1).unwrap(), BigInt::from(5));
        assert_eq!(sum_exact(5, 1), Ok(0));
        assert_eq!(sum_exact_integer(7, 1).unwrap(), BigInt::from(49));
        assert_eq!(sum_exact(7, 1), Ok(0));
        assert_eq!(sum_exact(5, 2), Ok(0));
        assert_eq!(sum_exact_integer(9, 1).unwrap(), BigInt::from(321));
        assert_eq!(sum_exact(9, 1), Ok(6));
    }

    #[test]
    fn argument_validation() {
        assert_eq!(sum_exact(7, 0), Err(Error::KOutOfRange { p: 7, k: 0 }));
        assert_eq!(sum_exact(7, 4), Err(Error::KOutOfRange { p: 7, k: 4 }));
        assert_eq!(sum_exact(8, 1), Err(Error::InvalidModulus { p: 8 }));
        let ctx = make_context(11).unwrap();
        assert!(sum_kernel_direct(&ctx, 6).is_err());
        assert!(sum_kernel_incremental(&ctx, 0).is_err());
    }

    #[test]
    fn direct_kernel_examples() {
        assert_eq!(sum_exact_integer(7, 2).unwrap(), BigInt::from(7));
        assert_eq!(sum_kernel_direct(&make_context(7).unwrap(), 2), Ok(0));
        assert_eq!(sum_exact_integer(11, 1).unwrap(), BigInt::from(1793));
        assert_eq!(1793, 11 * 163);
        assert_eq!(sum_kernel_direct(&make_context(11).unwrap(), 1), Ok(0));
        assert_eq!(sum_kernel_direct(&make_context(7).unwrap(), 3), Ok(0));
    }

    #[test]
    fn incremental_kernel_examples() {
        assert_eq!(
            sum_kernel_incremental(&make_context(5).unwrap(), 1),
            sum_exact(5, 1)
        );
        let c13 = make_context(13).unwrap();
        for k in 1..=6 {
            assert_eq!(sum_kernel_incremental(&c13, k), Ok(0));
            assert_eq!(sum_exact(13, k), Ok(0));
        }
        assert_eq!(sum_kernel_incremental(&make_context(3).unwrap(), 1), Ok(0));
    }

    #[test]
    fn kernels_agree_on_small_primes() {
        for p in primes_in_range(3, 199) {
            let ctx = make_context(p).unwrap();
            for k in 1..=(p - 1) / 2 {
                let exact = sum_exact(p, k).unwrap();
                assert_eq!(sum_kernel_direct(&ctx, k).unwrap(), exact, "p={p} k={k}");
                assert_eq!(
                    sum_kernel_incremental(&ctx, k).unwrap(),
                    exact,
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn k_one_closed_form() {
        for p in (5..=64u64).step_by(2) {
            let expected = BigInt::from(p - 4) * pow2_int(p - 3) + 1;
            assert_eq!(sum_exact_integer(p, 1).unwrap(), expected, "p = {p}");
        }
    }

    #[test]
    fn empty_sum_at_half() {
        for p in (3..=301u64).step_by(2) {
            let k = (p - 1) / 2;
            assert_eq!(term_count(p, k), 0);
            assert_eq!(sum_exact(p, k), Ok(0));
        }
    }

    #[test]
    fn verify_prime_examples() {
        let r3 = verify_prime(3).unwrap();
        assert_eq!(r3.len(), 1);
        assert_eq!((r3[0].k, r3[0].term_count, r3[0].residue), (1, 0, 0));
        let r7: Vec<_> = verify_prime(7).unwrap().iter().map(|r| r.residue).collect();
        assert_eq!(r7, vec![0, 0, 0]);
        let r101 = verify_prime(101).unwrap();
        assert_eq!(r101.len(), 50);
        assert!(r101
            .iter()
            .all(|r| r.passed && r.method == Method::IncrementalKernel));
        assert_eq!(verify_prime(9), Err(Error::NotPrime { p: 9, factor: 3 }));
    }

    #[test]
    fn sweep_small() {
        let s = sweep(3, 20, 1).unwrap();
        assert_eq!(s.primes_checked, 7);
        assert_eq!(s.pairs_checked, 1 + 2 + 3 + 5 + 6 + 8 + 9);
        assert!(s.failures.is_empty());
        assert_eq!(sweep(3, 3, 4).unwrap().primes_checked, 1);
        assert_eq!(sweep(24, 28, 2).unwrap().primes_checked, 0);
        assert!(sweep(2, 20, 1).is_err());
        assert!(sweep(30, 20, 1).is_err());
    }

    #[test]
    fn sweep_is_independent_of_workers() {
        let base = sweep(3, 300, 1).unwrap();
        for w in [2, 4, 8] {
            let other = sweep(3, 300, w).unwrap();
            assert_eq!(other, base);
            assert_eq!(other.worker_count, w);
        }
    }

    #[test]
    fn composite_examples() {
        let scan = composite_scan(15).unwrap();
        let find = |n, k| scan.iter().find(|r| r.p == n && r.k == k).unwrap().residue;
        assert_eq!(find(9, 1), 6);
        assert_eq!(find(9, 4), 0);
        assert_eq!(sum_exact_integer(15, 1).unwrap(), BigInt::from(45057));
        assert_eq!(find(15, 1), 12);
        assert!(scan.iter().all(|r| r.p == 9 || r.p == 15));
        assert_eq!(scan.len(), 4 + 7);
        assert!(composite_scan(7).is_err());
    }

    #[test]
    fn report_json_shape() {
        let ctx = make_context(7).unwrap();
        let r = report(&ctx, 1, Method::DirectKernel).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"p":7,"k":1,"terms":4,"residue":0,"method":"direct-kernel","passed":true}"#
        );
        assert_eq!(Method::ExactOracle.as_str(), "exact-oracle");
    }

    #[test]
    fn require_prime_messages() {
        assert_eq!(
            require_prime(9).unwrap_err().to_string(),
            "9 = 3\u{b7}3 is not prime"
        );
        assert_eq!(
            require_prime(10).unwrap_err().to_string(),
            "10 = 2\u{b7}5 is not prime"
        );
        assert!(require_prime(2).is_err());
        assert!(require_prime(13).is_ok());
    }
}
