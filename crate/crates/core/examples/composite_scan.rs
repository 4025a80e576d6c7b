//! Residues of S(n, k) for odd composite n.
//!
//! Nothing is claimed about composites; this only shows how often the sum
//! happens to vanish.
//!
//! ```bash
//! cargo run -p banach --example composite_scan -- 99
//! ```

use std::collections::BTreeMap;

use banach::congruence::composite_scan;

fn main() -> Result<(), banach::Error> {
    let n_max: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(63);
    let reports = composite_scan(n_max)?;

    let mut by_modulus: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for r in &reports {
        by_modulus.entry(r.p).or_default().push(r.residue);
    }
    for (n, residues) in &by_modulus {
        let zeros = residues.iter().filter(|&&x| x == 0).count();
        let shown: Vec<String> = residues.iter().take(12).map(u64::to_string).collect();
        println!(
            "n = {n:>4}: {zeros:>3}/{:<3} vanishing  residues {}{}",
            residues.len(),
            shown.join(" "),
            if residues.len() > 12 { " ..." } else { "" }
        );
    }
    let all_zero: Vec<_> = by_modulus
        .iter()
        .filter(|(_, r)| r.iter().all(|&x| x == 0))
        .map(|(n, _)| *n)
        .collect();
    println!("composites vanishing for every k: {all_zero:?}");
    Ok(())
}
