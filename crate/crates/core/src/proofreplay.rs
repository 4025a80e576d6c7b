//! The derivation of the congruence, replayed step by step.
//!
//! Multiplying `S(p, k)` by `k!` turns each binomial into a rising product,
//! which is the `k`-th derivative of `x^(i+k-1)` at `x = 2`:
//!
//! ```text
//! k! S(p, k) = ( sum_{i=1}^{p-2k-1} x^(i+k-1) )^(k) |_{x=2}
//!            = ( (x^(p-1-k) - x^k) (x - 1)^-1 )^(k) |_{x=2}
//! ```
//!
//! [`chain_check`] evaluates the first line on a [`SparsePoly`] and the
//! second through the Leibniz rule, using `((x-1)^-1)^(m) = (-1)^m m!` at
//! `x = 2`. [`reduced_identities`] then checks, over the rationals, the four
//! identities the Leibniz sum is reduced to, the last of which is the
//! matchbox normalization identity at `n = k`.

use std::collections::BTreeMap;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::congruence::{require_prime, sum_kernel_incremental};
use crate::error::{Error, Result};
use crate::exactmath::{binomial_exact, factorial_exact, pow2_rational, rising_exact, Rational};
use crate::modarith::{powmod, ModContext};

/// Polynomial over `Z/pZ` stored as exponent -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    modulus: u64,
    terms: BTreeMap<u64, u64>,
}

impl SparsePoly {
    pub fn zero(modulus: u64) -> Self {
        SparsePoly {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from `(exponent, coefficient)` pairs, reducing coefficients
    /// and summing repeated exponents.
    pub fn from_terms(modulus: u64, terms: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut poly = SparsePoly::zero(modulus);
        for (e, c) in terms {
            poly.add_term(e, c);
        }
        poly
    }

    fn add_term(&mut self, exponent: u64, coeff: u64) {
        let p = self.modulus;
        let c = coeff % p;
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: u64) -> u64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        let p = self.modulus;
        self.terms()
            .fold(0, |acc, (e, c)| (acc + c * powmod(x, e, p) % p) % p)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

/// `sum_{i=1}^{p-2k-1} x^(i+k-1)`: exponents `k ..= p-k-2`, all coefficients 1.
pub fn geometric_poly(p: u64, k: u64) -> Result<SparsePoly> {
    check_args(p, k)?;
    let top = p - k - 1;
    Ok(SparsePoly::from_terms(p, (k..top).map(|e| (e, 1))))
}

/// The `order`-th formal derivative.
pub fn derivative(poly: &SparsePoly, order: u64) -> SparsePoly {
    let p = poly.modulus;
    SparsePoly::from_terms(
        p,
        poly.terms().filter(|&(e, _)| e >= order).map(|(e, c)| {
            let falling = (0..order).fold(c, |acc, t| acc * ((e - t) % p) % p);
            (e - order, falling)
        }),
    )
}

fn check_args(p: u64, k: u64) -> Result<()> {
    require_prime(p)?;
    if k < 1 || k > (p - 1) / 2 {
        return Err(Error::KOutOfRange { p, k });
    }
    Ok(())
}

/// How the power `2^(p-1-k-j)` in the Leibniz terms is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerOfTwo {
    /// The literal exponent `p - 1 - k - j`.
    Literal,
    /// `2^(p-1)` replaced by 1, leaving `2^-(k+j)`.
    FermatReduced,
}

fn falling_mod(top: u64, len: u64, p: u64) -> u64 {
    (0..len).fold(1, |acc, t| acc * ((top - t) % p) % p)
}

/// `sum_{j=0}^{k} C(k, j) D_j (-1)^(k-j) (k-j)!  mod p`, where
/// `D_j = (p-1-k)_j 2^(p-1-k-j) - (k)_j 2^(k-j)` is the `j`-th derivative of
/// `x^(p-1-k) - x^k` at 2 and `(a)_j` is the falling product.
pub fn leibniz_route(ctx: &ModContext, k: u64, power: PowerOfTwo) -> Result<u64> {
    let p = ctx.p();
    if k < 1 || k > (p - 1) / 2 {
        return Err(Error::KOutOfRange { p, k });
    }
    let high = p - 1 - k;
    let inv2 = ctx.inv(2);
    let mut acc = 0u64;
    for j in 0..=k {
        let pow_high = match power {
            PowerOfTwo::Literal => powmod(2, high - j, p),
            PowerOfTwo::FermatReduced => powmod(inv2, k + j, p),
        };
        let d_high = ctx.mul(falling_mod(high, j, p), pow_high);
        let d_low = ctx.mul(falling_mod(k, j, p), powmod(2, k - j, p));
        let d_j = (d_high + p - d_low) % p;
        let mut term = ctx.mul(ctx.mul(ctx.binom_unchecked(k, j), d_j), ctx.fact(k - j));
        if (k - j) % 2 == 1 {
            term = (p - term) % p;
        }
        acc = (acc + term) % p;
    }
    Ok(acc)
}

/// `[ d^k/dx^k geometric_poly(p, k) ](2) mod p`.
pub fn direct_route(p: u64, k: u64) -> Result<u64> {
    Ok(derivative(&geometric_poly(p, k)?, k).evaluate(2))
}

/// Both sides of one identity in the reduction chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl ReducedIdentity {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs == rhs;
        ReducedIdentity { lhs, rhs, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedIdentities {
    pub k: u64,
    /// `sum_j C(k,j) (k-j)! (k+1)...(k+j) 2^(-k-j) = k! sum_j (-1)^j C(k,j) 2^(k-j)`,
    /// with the right side also required to equal `k!`.
    pub i1: ReducedIdentity,
    /// `sum_j 2^-j C(k,j) (k-j)! (k+j)! = 2^k (k!)^2`.
    pub i2: ReducedIdentity,
    /// `sum_j 2^-j C(k+j, k) = 2^k`.
    pub i3: ReducedIdentity,
    /// `sum_i C(2k-i, k) 2^(i-k) = 2^k`.
    pub i4: ReducedIdentity,
}

impl ReducedIdentities {
    pub fn flags(&self) -> [bool; 4] {
        [self.i1.holds, self.i2.holds, self.i3.holds, self.i4.holds]
    }

    pub fn all_hold(&self) -> bool {
        self.flags().iter().all(|&b| b)
    }
}

fn int(v: num_bigint::BigInt) -> Rational {
    Rational::from_integer(v)
}

pub fn reduced_identities(k: u64) -> ReducedIdentities {
    let ki = k as i64;
    let k_fact = factorial_exact(k);

    let i1_lhs: Rational = (0..=k)
        .map(|j| {
            int(binomial_exact(k, j) * factorial_exact(k - j) * rising_exact(k + 1, j))
                * pow2_rational(-ki - j as i64)
        })
        .sum();
    let alternating: Rational = (0..=k)
        .map(|j| {
            let t = int(binomial_exact(k, j)) * pow2_rational(ki - j as i64);
            if j % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum();
    let i1_rhs = int(k_fact.clone()) * alternating;
    let mut i1 = ReducedIdentity::new(i1_lhs, i1_rhs);
    i1.holds = i1.holds && i1.rhs == int(k_fact.clone());

    let i2_lhs: Rational = (0..=k)
        .map(|j| {
            int(binomial_exact(k, j) * factorial_exact(k - j) * factorial_exact(k + j))
                * pow2_rational(-(j as i64))
        })
        .sum();
    let i2_rhs = pow2_rational(ki) * int(&k_fact * &k_fact);
    let i2 = ReducedIdentity::new(i2_lhs, i2_rhs);

    let i3_lhs: Rational = (0..=k)
        .map(|j| int(binomial_exact(k + j, k)) * pow2_rational(-(j as i64)))
        .sum();
    let i3 = ReducedIdentity::new(i3_lhs, pow2_rational(ki));

    let i4_lhs: Rational = (0..=k)
        .map(|i| int(binomial_exact(2 * k - i, k)) * pow2_rational(i as i64 - ki))
        .sum();
    let i4 = ReducedIdentity::new(i4_lhs, pow2_rational(ki));

    ReducedIdentities { k, i1, i2, i3, i4 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub p: u64,
    pub k: u64,
    #[serde(rename = "direct")]
    pub lhs_direct: u64,
    #[serde(rename = "leibniz")]
    pub lhs_leibniz: u64,
    /// `k! * S(p, k) mod p`.
    pub scaled_sum: u64,
    #[serde(rename = "I1")]
    pub i1: bool,
    #[serde(rename = "I2")]
    pub i2: bool,
    #[serde(rename = "I3")]
    pub i3: bool,
    #[serde(rename = "I4")]
    pub i4: bool,
}

impl ChainReport {
    pub fn identities_passed(&self) -> [bool; 4] {
        [self.i1, self.i2, self.i3, self.i4]
    }

    pub fn routes_agree(&self) -> bool {
        self.lhs_direct == self.lhs_leibniz && self.lhs_direct == self.scaled_sum
    }

    pub fn passed(&self) -> bool {
        self.routes_agree() && self.identities_passed().iter().all(|&b| b)
    }
}

pub fn chain_check(p: u64, k: u64) -> Result<ChainReport> {
    check_args(p, k)?;
    let ctx = ModContext::new(p)?;
    chain_check_with(&ctx, k)
}

/// [`chain_check`] against an already built context.
pub fn chain_check_with(ctx: &ModContext, k: u64) -> Result<ChainReport> {
    let p = ctx.p();
    let lhs_direct = direct_route(p, k)?;
    let lhs_leibniz = leibniz_route(ctx, k, PowerOfTwo::Literal)?;
    let scaled_sum = ctx.mul(ctx.fact(k), sum_kernel_incremental(ctx, k)?);
    let [i1, i2, i3, i4] = reduced_identities(k).flags();
    Ok(ChainReport {
        p,
        k,
        lhs_direct,
        lhs_leibniz,
        scaled_sum,
        i1,
        i2,
        i3,
        i4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::sum_exact_integer;
    use crate::exactmath::BigInt;
    use crate::matchbox::check_identity;
    use crate::primes::primes_in_range;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn poly(p: u64, terms: &[(u64, u64)]) -> SparsePoly {
        SparsePoly::from_terms(p, terms.iter().copied())
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_poly(5, 1).unwrap(), poly(5, &[(1, 1), (2, 1)]));
        assert_eq!(geometric_poly(7, 2).unwrap(), poly(7, &[(2, 1), (3, 1)]));
        assert!(geometric_poly(3, 1).unwrap().is_zero());
        assert_eq!(geometric_poly(101, 7).unwrap().len(), 101 - 14 - 1);
        assert!(geometric_poly(9, 1).is_err());
        assert!(geometric_poly(7, 4).is_err());
    }

    #[test]
    fn derivative_examples() {
        let f = poly(5, &[(1, 1), (2, 1)]);
        assert_eq!(derivative(&f, 1), poly(5, &[(0, 1), (1, 2)]));
        assert_eq!(derivative(&f, 0), f);
        assert_eq!(derivative(&poly(7, &[(3, 1)]), 2), poly(7, &[(1, 6)]));
        // 7 x^7 vanishes mod 7 after one derivative
        assert!(derivative(&poly(7, &[(7, 1)]), 1).is_zero());
        assert!(derivative(&poly(7, &[(2, 3)]), 3).is_zero());
    }

    #[test]
    fn coefficients_never_stored_as_zero() {
        let f = poly(5, &[(1, 2), (1, 3), (4, 10)]);
        assert!(f.is_zero());
        assert_eq!(f.coeff(1), 0);
        assert_eq!(poly(5, &[(2, 7)]).coeff(2), 2);
    }

    #[test]
    fn evaluation() {
        // 1 + 2x at x = 2 over 5
        assert_eq!(poly(5, &[(0, 1), (1, 2)]).evaluate(2), 0);
        assert_eq!(poly(101, &[(10, 1)]).evaluate(2), 1024 % 101);
        assert_eq!(SparsePoly::zero(7).evaluate(2), 0);
    }

    fn scaled_oracle(p: u64, k: u64) -> u64 {
        let s = sum_exact_integer(p, k).unwrap() * factorial_exact(k) % BigInt::from(p);
        s.to_u64().unwrap()
    }

    #[test]
    fn chain_examples() {
        let c = chain_check(5, 1).unwrap();
        assert_eq!((c.lhs_direct, c.lhs_leibniz, c.scaled_sum), (0, 0, 0));
        assert!(c.passed());
        let c = chain_check(7, 2).unwrap();
        assert_eq!(sum_exact_integer(7, 2).unwrap(), BigInt::from(7));
        assert_eq!((c.lhs_direct, c.lhs_leibniz), (0, 0));
        assert!(c.passed());
        let c = chain_check(3, 1).unwrap();
        assert_eq!((c.lhs_direct, c.lhs_leibniz), (0, 0));
        assert!(chain_check(9, 1).is_err());
    }

    #[test]
    fn routes_match_exact_scaled_sum() {
        for p in primes_in_range(3, 199) {
            let ctx = ModContext::new(p).unwrap();
            for k in 1..=(p - 1) / 2 {
                let oracle = scaled_oracle(p, k);
                assert_eq!(direct_route(p, k).unwrap(), oracle, "direct p={p} k={k}");
                let lit = leibniz_route(&ctx, k, PowerOfTwo::Literal).unwrap();
                let red = leibniz_route(&ctx, k, PowerOfTwo::FermatReduced).unwrap();
                assert_eq!(lit, oracle, "leibniz p={p} k={k}");
                assert_eq!(red, lit, "fermat p={p} k={k}");
            }
        }
    }

    #[test]
    fn identity_examples() {
        assert!(reduced_identities(0).all_hold());
        let r1 = reduced_identities(1);
        assert_eq!(r1.i3.lhs, Rational::from_integer(2));
        assert!(r1.all_hold());
        let r3 = reduced_identities(3);
        assert!(r3.all_hold());
        assert_eq!(r3.i4.lhs, check_identity(3).lhs);
        assert_eq!(r3.i1.rhs, Rational::from_integer(6));
    }

    #[test]
    fn identities_hold_to_64() {
        for k in 0..=64 {
            let r = reduced_identities(k);
            assert!(r.all_hold(), "k = {k}");
            assert_eq!(r.i4.lhs, check_identity(k).lhs);
        }
    }

    #[test]
    fn chain_report_json() {
        let c = chain_check(7, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"p":7,"k":1,"direct":0,"leibniz":0,"scaled_sum":0,"I1":true,"I2":true,"I3":true,"I4":true}"#
        );
    }

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        proptest::collection::vec((0u64..40, 0u64..101), 0..12)
            .prop_map(|terms| SparsePoly::from_terms(101, terms))
    }

    proptest! {
        #[test]
        fn derivative_is_linear(f in arb_poly(), g in arb_poly(), m in 0u64..=5) {
            let lhs = derivative(&(&f + &g), m);
            let rhs = &derivative(&f, m) + &derivative(&g, m);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn stored_coefficients_are_nonzero(f in arb_poly(), m in 0u64..=5) {
            let d = derivative(&f, m);
            prop_assert!(d.terms().all(|(_, c)| c != 0 && c < 101));
        }
    }
}
