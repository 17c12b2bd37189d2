//! Exact integer/rational kernel: gcd, least-positive modular inverses,
//! multiplicative-function sieves and arbitrary-precision rationals.
//!
//! Everything here is pure and deterministic. [`SieveTables`] is immutable
//! after construction and may be shared freely across parallel workers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Carries Dedekind sums and continued-fraction evaluations
/// without rounding.
pub type ExactRational = num_rational::BigRational;

/// Exact rational from machine integers.
pub fn rational(num: i128, den: i128) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convert an exact rational to `f64` without overflowing on large
/// numerators or denominators: the quotient is extracted with ~65
/// significant bits and then scaled by an exact power of two, so the
/// result is correct to within a couple of ulps.
pub fn rational_to_f64(x: &ExactRational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.sign() == Sign::Minus;
    let num = num.abs();
    let nbits = num.bits() as i64;
    let dbits = den.bits() as i64;
    // Shift so that num << shift has ~65 more bits than den.
    let shift = dbits - nbits + 65;
    let scaled = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    // At most 66 bits by construction.
    let q = scaled.to_u128().expect("quotient fits in 128 bits") as f64;
    let value = q * 2f64.powi(-shift as i32);
    if negative {
        -value
    } else {
        value
    }
}

/// Greatest common divisor. Errors when both inputs are zero.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(domain("gcd(0, 0) is undefined"));
    }
    Ok(gcd_unchecked(a, b))
}

pub(crate) fn gcd_unchecked(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended Euclid on (a, b): returns (g, x, y) with a·x + b·y = g.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    (old_r, old_x, old_y)
}

/// Least positive representative of the inverse of `a` modulo `q`: the
/// unique value in `{1, …, q}` with `a · inv ≡ 1 (mod q)`. In particular
/// the inverse is never 0 and `mod_inverse(a, 1) = 1`.
pub fn mod_inverse(a: i64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(domain("modulus must be positive"));
    }
    if q == 1 {
        return Ok(1);
    }
    let a_red = a.rem_euclid(q as i64);
    let (g, x, _) = extended_gcd(a_red, q as i64);
    if g != 1 {
        return Err(domain(format!("{a} is not invertible modulo {q}")));
    }
    let inv = x.rem_euclid(q as i64) as u64;
    // Representative in {1, …, q}; x ≡ 0 cannot satisfy a·x ≡ 1 for q > 1.
    debug_assert!(inv >= 1 && inv <= q);
    Ok(inv)
}

/// φ, μ and divisor-count tables for `1 ..= limit`, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct SieveTables {
    pub limit: u64,
    /// Euler totient; `phi[0]` is unused.
    pub phi: Vec<u64>,
    /// Möbius function in {-1, 0, 1}.
    pub mu: Vec<i8>,
    /// Number of divisors.
    pub dcount: Vec<u32>,
    /// Smallest prime factor (0 for 0, 1 and primes).
    spf: Vec<u32>,
}

impl SieveTables {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(domain("sieve limit must be at least 1"));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<usize> = Vec::new();
        let mut phi = vec![0u64; n + 1];
        let mut mu = vec![0i8; n + 1];
        let mut dcount = vec![0u32; n + 1];
        // exponent of the smallest prime factor, for the divisor count
        let mut spf_exp = vec![0u32; n + 1];
        phi[1] = 1;
        mu[1] = 1;
        dcount[1] = 1;
        for i in 2..=n {
            if spf[i] == 0 {
                primes.push(i);
                phi[i] = i as u64 - 1;
                mu[i] = -1;
                dcount[i] = 2;
                spf_exp[i] = 1;
                spf[i] = i as u32;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > n {
                    break;
                }
                spf[ip] = p as u32;
                if i % p == 0 {
                    phi[ip] = phi[i] * p as u64;
                    mu[ip] = 0;
                    let e = spf_exp[i];
                    spf_exp[ip] = e + 1;
                    dcount[ip] = dcount[i] / (e + 1) * (e + 2);
                    break;
                } else {
                    phi[ip] = phi[i] * (p as u64 - 1);
                    mu[ip] = -mu[i];
                    spf_exp[ip] = 1;
                    dcount[ip] = dcount[i] * 2;
                }
            }
        }
        Ok(SieveTables {
            limit,
            phi,
            mu,
            dcount,
            spf,
        })
    }

    /// All divisors of `q ≤ limit`, in no particular order.
    pub fn divisors(&self, q: u64) -> Vec<u64> {
        assert!(q >= 1 && q <= self.limit);
        let mut divs = vec![1u64];
        let mut m = q as usize;
        while m > 1 {
            let p = if self.spf[m] == 0 { m as u64 } else { self.spf[m] as u64 };
            let mut e = 0;
            while (m as u64).is_multiple_of(p) {
                m /= p as usize;
                e += 1;
            }
            let base_len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..base_len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs
    }

    /// `♯𝓕(q) = 1 + Σ_{k ≤ q} φ(k)`: the number of reduced fractions in
    /// [0, 1] with denominator at most `q` (both endpoints included).
    pub fn farey_count(&self, q: u64) -> u64 {
        assert!(q >= 1 && q <= self.limit);
        1 + self.phi[1..=q as usize].iter().sum::<u64>()
    }
}

/// A rational v/w in lowest terms with w ≥ 1 and value in [0, 1].
///
/// This is the universal input type: cut points α and Farey elements both
/// use it. The constructor reduces its arguments, so the coprimality
/// invariant always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: u64,
    den: u64,
}

impl ReducedFraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(domain("denominator must be positive"));
        }
        if num > den {
            return Err(domain(format!("{num}/{den} lies outside [0, 1]")));
        }
        let g = gcd_unchecked(num, den);
        Ok(ReducedFraction {
            num: num / g,
            den: den / g,
        })
    }

    pub const ZERO: ReducedFraction = ReducedFraction { num: 0, den: 1 };
    pub const ONE: ReducedFraction = ReducedFraction { num: 1, den: 1 };

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// 1 − x, exact (denominator is preserved).
    pub fn complement(&self) -> ReducedFraction {
        ReducedFraction {
            num: self.den - self.num,
            den: self.den,
        }
    }

    pub fn to_rational(&self) -> ExactRational {
        rational(self.num as i128, self.den as i128)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Exact comparison against an arbitrary fraction via cross
    /// multiplication; `other` need not be reduced.
    pub fn cmp_frac(&self, other_num: u64, other_den: u64) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other_den as u128;
        let rhs = other_num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_frac(other.num, other.den)
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ReducedFraction {
    type Err = Error;

    /// Parses "v/w" (or a bare integer "0"/"1").
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| domain(format!("cannot parse '{t}' as an integer")))
        };
        match s.split_once('/') {
            Some((n, d)) => ReducedFraction::new(parse_int(n)?, parse_int(d)?),
            None => ReducedFraction::new(parse_int(s)?, 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(0, 7).unwrap(), 7);
        assert_eq!(gcd(12, 18).unwrap(), 6);
        assert_eq!(gcd(35, 64).unwrap(), 1);
        assert!(gcd(0, 0).is_err());
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 9).unwrap(), 1);
        assert_eq!(mod_inverse(7, 3).unwrap(), 1);
        assert_eq!(mod_inverse(5, 1).unwrap(), 1);
        assert!(mod_inverse(2, 4).is_err());
        // negative representatives are accepted
        assert_eq!(mod_inverse(-4, 7).unwrap(), mod_inverse(3, 7).unwrap());
    }

    #[test]
    fn least_positive_inverse_identity() {
        // q·inv_p(q) + p·inv_q(p) = 1 + p·q for coprime p, q ≥ 2
        for p in 2u64..=120 {
            for q in 2u64..=120 {
                if gcd_unchecked(p, q) != 1 {
                    continue;
                }
                let ip = mod_inverse(q as i64, p).unwrap();
                let iq = mod_inverse(p as i64, q).unwrap();
                assert_eq!(q * ip + p * iq, 1 + p * q, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn sieve_small_values() {
        let t = SieveTables::new(60).unwrap();
        assert_eq!(t.phi[1], 1);
        assert_eq!(t.mu[1], 1);
        assert_eq!(t.mu[6], 1);
        assert_eq!(t.dcount[12], 6);
        assert_eq!(t.phi[12], 4);
        assert_eq!(t.mu[12], 0);
        assert_eq!(t.phi[49], 42);
        assert_eq!(t.dcount[60], 12);
        assert!(SieveTables::new(0).is_err());
    }

    #[test]
    fn sieve_divisor_enumeration() {
        let t = SieveTables::new(360).unwrap();
        let mut d = t.divisors(360);
        d.sort_unstable();
        assert_eq!(d.len(), t.dcount[360] as usize);
        assert_eq!(d.first(), Some(&1));
        assert_eq!(d.last(), Some(&360));
        assert!(d.iter().all(|x| 360 % x == 0));
    }

    #[test]
    fn farey_count_matches_pair_counting() {
        let t = SieveTables::new(300).unwrap();
        for x in [1u64, 2, 3, 5, 50, 300] {
            let brute = 1 + (1..=x)
                .map(|q| (1..=q).filter(|&a| gcd_unchecked(a, q) == 1).count() as u64)
                .sum::<u64>();
            assert_eq!(t.farey_count(x), brute, "x={x}");
        }
        assert_eq!(t.farey_count(3), 5);
        assert_eq!(t.farey_count(5), 11);
    }

    #[test]
    fn reduced_fraction_basics() {
        let x = ReducedFraction::new(4, 6).unwrap();
        assert_eq!((x.num(), x.den()), (2, 3));
        assert_eq!(x.to_string(), "2/3");
        assert_eq!("2/3".parse::<ReducedFraction>().unwrap(), x);
        assert_eq!(x.complement(), ReducedFraction::new(1, 3).unwrap());
        assert!(ReducedFraction::new(3, 2).is_err());
        assert!(ReducedFraction::new(1, 0).is_err());
        assert!(ReducedFraction::new(1, 3).unwrap() < x);
    }

    #[test]
    fn rational_to_f64_handles_huge_terms() {
        let big = BigInt::from(10u64).pow(200);
        let x = ExactRational::new(big.clone() * 3 + 1, big);
        assert!((rational_to_f64(&x) - 3.0).abs() < 1e-12);
        let y = rational(-7, 16);
        assert_eq!(rational_to_f64(&y), -0.4375);
        assert_eq!(rational_to_f64(&rational(0, 1)), 0.0);
    }
}
