//! Congruence sweep over a prime range, parallel across primes.
//!
//! ```bash
//! cargo run --release -p banach --example prime_sweep -- 3 2000 1
//! # larger run, timing per decade of p:
//! cargo run --release -p banach --example prime_sweep -- 3 20000 8
//! ```

use std::time::Instant;

use banach::congruence::sweep;

fn arg(i: usize, default: u64) -> u64 {
    std::env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn main() -> Result<(), banach::Error> {
    let (lo, hi, workers) = (arg(1, 3), arg(2, 2000), arg(3, 4) as usize);

    let start = Instant::now();
    let report = sweep(lo, hi, workers)?;
    println!(
        "[{lo}, {hi}] with {workers} workers: {} primes, {} (p, k) pairs, {} failures in {:.2}s",
        report.primes_checked,
        report.pairs_checked,
        report.failures.len(),
        start.elapsed().as_secs_f64()
    );
    for f in report.failures.iter().take(10) {
        println!(
            "  failure: p = {}, k = {}, residue = {}",
            f.p, f.k, f.residue
        );
    }

    // Per-prime work is about p^2 / 4 terms; doubling the upper bound
    // should take roughly 8x as long once the range is large.
    if hi >= 4000 {
        let half = sweep(lo, hi / 2, workers)?;
        println!(
            "[{lo}, {}]: {:.2}s; ratio of full to half range: {:.1}",
            hi / 2,
            half.elapsed,
            report.elapsed / half.elapsed
        );
    }
    Ok(())
}
