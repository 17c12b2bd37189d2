//! Exact Dedekind sums by independent routes.
//!
//! `dedekind_naive` is the literal sawtooth summation and serves as the
//! oracle; `dedekind_fast` evaluates the same value in O(log b) steps via
//! the reciprocity law
//! s(a,b) + s(b,a) = (1/12)(a/b + b/a + 1/(ab)) − 1/4.
//! A third route, `contfrac::hickerson_sum`, evaluates s from the regular
//! continued fraction and is what the bulk sweeps use.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{gcd_unchecked, rational, ExactRational};
use crate::error::{domain, Result};

/// s(a, b) = Σ_{n=1}^{b} ((n/b)) ((na/b)) summed term by term, exactly.
///
/// The sawtooth ((t)) is t − ⌊t⌋ − 1/2 off the integers and 0 on them, so
/// each nonzero term is (2n − b)(2(na mod b) − b) / (4b²); the integer
/// numerators are accumulated and divided once at the end. Inputs need
/// not be coprime: s(ka, kb) = s(a, b) holds term by term.
pub fn dedekind_naive(a: i64, b: u64) -> Result<ExactRational> {
    if b == 0 {
        return Err(domain("dedekind sum needs a positive denominator"));
    }
    let a = a.rem_euclid(b as i64) as u128;
    let b_wide = b as u128;
    let mut acc: i128 = 0;
    for n in 1..b_wide {
        let r = (n * a) % b_wide;
        if r == 0 {
            continue;
        }
        let t1 = 2 * n as i128 - b as i128;
        let t2 = 2 * r as i128 - b as i128;
        acc += t1 * t2;
    }
    Ok(rational(acc, 4 * (b as i128) * (b as i128)))
}

/// s(a, b) for coprime a, b via the reciprocity recursion
/// s(a, b) = (a² + b² + 1)/(12ab) − 1/4 − s(b mod a, a),
/// reducing like the Euclidean algorithm down to s(0, 1) = 0.
pub fn dedekind_fast(a: i64, b: u64) -> Result<ExactRational> {
    if b == 0 {
        return Err(domain("dedekind sum needs a positive denominator"));
    }
    let mut a = a.rem_euclid(b as i64) as u64;
    let mut b = b;
    if gcd_unchecked(a, b) != 1 {
        return Err(domain(format!(
            "reciprocity route needs coprime arguments, got gcd = {}",
            gcd_unchecked(a, b)
        )));
    }
    let mut acc = ExactRational::zero();
    let mut negate = false;
    let quarter = rational(1, 4);
    while a > 0 {
        let (ai, bi) = (BigInt::from(a), BigInt::from(b));
        let term = ExactRational::new(&ai * &ai + &bi * &bi + 1, 12 * ai * bi) - &quarter;
        if negate {
            acc -= term;
        } else {
            acc += term;
        }
        negate = !negate;
        (a, b) = (b % a, a);
    }
    Ok(acc)
}
