//! Exact Banach matchbox distribution.
//!
//! `r` always denotes the matches left in the non-empty box; `k` is kept
//! for the congruence parameter elsewhere in the crate.

use serde::{Deserialize, Serialize};

use num_traits::One;

use crate::exactmath::{binomial_exact, pow2_rational, BigInt, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchboxDistribution {
    pub n: u64,
    /// `probs[r] = u_n(r)` for `r = 0..=n`.
    pub probs: Vec<Rational>,
}

/// One CSV row of a distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub r: u64,
    pub num: String,
    pub den: String,
}

impl MatchboxDistribution {
    pub fn total(&self) -> Rational {
        self.probs.iter().sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = DistributionRow> + '_ {
        self.probs.iter().enumerate().map(|(r, p)| DistributionRow {
            r: r as u64,
            num: p.numer().to_string(),
            den: p.denom().to_string(),
        })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(Rational::to_f64).collect()
    }
}

/// `C(2n - r, n)` for `r = 0..=n`, built from `r = n` downwards with
/// `C(m + 1, n) = C(m, n) * (m + 1) / (m + 1 - n)`.
fn binomial_column(n: u64) -> Vec<BigInt> {
    let mut col = vec![BigInt::one(); n as usize + 1];
    for r in (0..n).rev() {
        let m = 2 * n - r;
        col[r as usize] = &col[r as usize + 1] * m / (m - n);
    }
    col
}

/// `u_n(r) = C(2n - r, n) * 2^(r - 2n)`.
pub fn probability(n: u64, r: u64) -> Rational {
    if r > n {
        return Rational::zero();
    }
    Rational::from_integer(binomial_exact(2 * n - r, n)) * pow2_rational(r as i64 - 2 * n as i64)
}

pub fn distribution(n: u64) -> MatchboxDistribution {
    let probs = binomial_column(n)
        .into_iter()
        .enumerate()
        .map(|(r, c)| Rational::from_integer(c) * pow2_rational(r as i64 - 2 * n as i64))
        .collect();
    MatchboxDistribution { n, probs }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Both sides of `sum_{r=0}^{n} C(2n - r, n) * 2^(r - n) = 2^n`.
pub fn check_identity(n: u64) -> IdentityCheck {
    let lhs: Rational = binomial_column(n)
        .into_iter()
        .enumerate()
        .map(|(r, c)| Rational::from_integer(c) * pow2_rational(r as i64 - n as i64))
        .sum();
    let rhs = pow2_rational(n as i64);
    let holds = lhs == rhs;
    IdentityCheck { n, lhs, rhs, holds }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den)).unwrap()
    }

    #[test]
    fn small_distributions() {
        assert_eq!(distribution(0).probs, vec![Rational::one()]);
        assert_eq!(distribution(1).probs, vec![q(1, 2), q(1, 2)]);
        assert_eq!(distribution(2).probs, vec![q(3, 8), q(3, 8), q(1, 4)]);
    }

    #[test]
    fn identity_examples() {
        let c0 = check_identity(0);
        assert_eq!(
            (c0.lhs.clone(), c0.rhs.clone(), c0.holds),
            (q(1, 1), q(1, 1), true)
        );
        let c2 = check_identity(2);
        assert_eq!(q(6, 4) + q(3, 2) + q(1, 1), q(4, 1));
        assert_eq!(c2.lhs, q(4, 1));
        assert!(c2.holds);
        let c5 = check_identity(5);
        assert_eq!(c5.rhs, q(32, 1));
        assert!(c5.holds);
    }

    #[test]
    fn normalization_and_identity_up_to_128() {
        for n in 0..=128 {
            let d = distribution(n);
            assert_eq!(d.probs.len() as u64, n + 1);
            assert_eq!(d.total(), Rational::one(), "n = {n}");
            assert!(d
                .probs
                .iter()
                .all(|p| !p.is_negative() && *p <= Rational::one()));
            let rescaled: Rational = d.probs.iter().map(|p| p * &pow2_rational(n as i64)).sum();
            assert_eq!(rescaled, check_identity(n).lhs);
        }
    }

    #[test]
    fn column_matches_direct_binomials() {
        for n in 0..=80 {
            for (r, c) in binomial_column(n).iter().enumerate() {
                assert_eq!(c, &binomial_exact(2 * n - r as u64, n));
            }
            for r in 0..=n {
                assert_eq!(distribution(n).probs[r as usize], probability(n, r));
            }
        }
    }

    #[test]
    fn tail_probability_is_power_of_half() {
        for n in 0..=64 {
            assert_eq!(
                distribution(n).probs[n as usize],
                pow2_rational(-(n as i64))
            );
        }
    }

    #[test]
    fn csv_rows_and_json() {
        let d = distribution(2);
        let rows: Vec<_> = d.rows().map(|r| (r.r, r.num, r.den)).collect();
        assert_eq!(
            rows,
            vec![
                (0, "3".into(), "8".into()),
                (1, "3".into(), "8".into()),
                (2, "1".into(), "4".into())
            ]
        );
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"n":2,"probs":["3/8","3/8","1/4"]}"#
        );
    }

    #[test]
    fn probability_outside_support_is_zero() {
        assert!(probability(3, 4).is_zero());
    }
}
