//! Replays the derivative/Leibniz argument for one prime.
//!
//! ```bash
//! cargo run -p banach --example proof_replay -- 13
//! ```

use banach::proofreplay::{chain_check, derivative, geometric_poly, reduced_identities};

fn main() -> Result<(), banach::Error> {
    let p: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(11);

    let poly = geometric_poly(p, 1)?;
    let terms: Vec<String> = poly.terms().map(|(e, c)| format!("{c}x^{e}")).collect();
    println!("k = 1 polynomial over Z/{p}: {}", terms.join(" + "));
    let d = derivative(&poly, 1);
    println!("its derivative at x = 2: {}", d.evaluate(2));
    println!();

    println!(
        "{:>3} {:>7} {:>8} {:>11}  I1..I4",
        "k", "direct", "leibniz", "k!*S(p,k)"
    );
    for k in 1..=(p - 1) / 2 {
        let c = chain_check(p, k)?;
        println!(
            "{k:>3} {:>7} {:>8} {:>11}  {:?}",
            c.lhs_direct,
            c.lhs_leibniz,
            c.scaled_sum,
            c.identities_passed()
        );
    }
    println!();

    let r = reduced_identities(4);
    println!("k = 4 over the rationals:");
    println!("  I1: {} = {}  ({})", r.i1.lhs, r.i1.rhs, r.i1.holds);
    println!("  I2: {} = {}  ({})", r.i2.lhs, r.i2.rhs, r.i2.holds);
    println!("  I3: {} = {}  ({})", r.i3.lhs, r.i3.rhs, r.i3.holds);
    println!("  I4: {} = {}  ({})", r.i4.lhs, r.i4.rhs, r.i4.holds);
    Ok(())
}
