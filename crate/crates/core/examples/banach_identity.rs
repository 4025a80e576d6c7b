//! Exact check of sum_r C(2n-r, n) 2^(r-n) = 2^n over a range of n.
//!
//! ```bash
//! cargo run -p banach --example banach_identity -- 64
//! ```

use banach::matchbox::check_identity;

fn main() {
    let max_n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(32);
    let mut failures = 0;
    for n in 0..=max_n {
        let check = check_identity(n);
        if n <= 6 {
            println!(
                "n = {n}: lhs = {}, rhs = {}, holds = {}",
                check.lhs, check.rhs, check.holds
            );
        }
        if !check.holds {
            failures += 1;
            println!("FAILED at n = {n}");
        }
    }
    println!("checked n = 0..={max_n}: {failures} failures");
}
