//! The three evaluations of S(p, k) side by side for one modulus.
//!
//! ```bash
//! cargo run -p banach --example congruence_kernels -- 31
//! ```

use banach::congruence::{sum_exact, sum_exact_integer, sum_kernel_direct, sum_kernel_incremental};
use banach::modarith::ModContext;

fn main() -> Result<(), banach::Error> {
    let p: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(23);
    let ctx = ModContext::new(p)?;

    println!(
        "{:>4} {:>6} {:>8} {:>8} {:>12}  S(p,k) as an integer",
        "k", "terms", "exact", "direct", "incremental"
    );
    for k in 1..=(p - 1) / 2 {
        let integer = sum_exact_integer(p, k)?;
        println!(
            "{k:>4} {:>6} {:>8} {:>8} {:>12}  {integer}",
            p - 2 * k - 1,
            sum_exact(p, k)?,
            sum_kernel_direct(&ctx, k)?,
            sum_kernel_incremental(&ctx, k)?,
        );
    }
    Ok(())
}
