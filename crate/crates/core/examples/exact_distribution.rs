//! Exact matchbox distribution for one box size.
//!
//! ```bash
//! cargo run -p banach --example exact_distribution -- 6
//! ```

use banach::exactmath::Rational;
use banach::matchbox::distribution;

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let dist = distribution(n);

    println!("n = {n}");
    println!("{:>4}  {:>24}  {:>12}", "r", "u_n(r)", "approx");
    for (r, p) in dist.probs.iter().enumerate() {
        println!("{r:>4}  {:>24}  {:>12.8}", p.to_string(), p.to_f64());
    }
    let total = dist.total();
    println!("sum = {total} (exactly one: {})", total == Rational::one());
}
