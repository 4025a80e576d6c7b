//! Simulated matchbox rounds against the exact distribution.
//!
//! ```bash
//! cargo run --release -p banach --example monte_carlo -- 10 1000000 42
//! ```

use banach::matchbox::distribution;
use banach::simulate::run;

fn arg(i: usize, default: u64) -> u64 {
    std::env::args()
        .nth(i)
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

fn main() -> Result<(), banach::Error> {
    let (n, trials, seed) = (arg(1, 10), arg(2, 200_000), arg(3, 1));
    let result = run(n, trials, seed)?;
    let exact = distribution(n);

    println!(
        "{:>4} {:>10} {:>10} {:>10}",
        "r", "count", "observed", "exact"
    );
    for (r, (&count, p)) in result.counts.iter().zip(&exact.probs).enumerate() {
        println!(
            "{r:>4} {count:>10} {:>10.6} {:>10.6}",
            count as f64 / trials as f64,
            p.to_f64()
        );
    }
    println!("total variation = {:.6}", result.tv_distance);
    println!("chi-square = {:.3} (df = {n})", result.chi_square);
    Ok(())
}
