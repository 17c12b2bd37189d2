//! Solution counters for the Diophantine systems that encode by-excess
//! step-count sums, and the exact identities connecting them.
//!
//! Three counters target the same quantity at different levels of
//! reduction:
//! - `count_n`: N_α(Q) = Σ ℓ(a/b) over all integer pairs 1 ≤ a < αb,
//!   b ≤ Q (pairs need not be coprime; ℓ is evaluated on the reduced
//!   form), by direct summation.
//! - `count_t`: T_α(Q), the eight-variable system linking consecutive
//!   convergents of the minus expansion; deliberately budget-guarded,
//!   since it exists to be cross-checked, not to be fast.
//! - `count_r`: R_α(Q), the four-variable reduction with the
//!   modular-inverse side condition; the inner (k, n) box is counted in
//!   closed form per (p, q), so the cost is one modular inverse per
//!   admissible pair.
//!
//! All interval memberships (a < αb, inv_p(q) ≤ αp, p > (1−α)q) are
//! decided by exact cross multiplication.

use crate::arith::{gcd_unchecked, mod_inverse, rational, ExactRational, ReducedFraction, SieveTables};
use crate::contfrac::FracSummary;
use crate::error::{domain, Error, Result};
use crate::farey::{cut_totals, CutInterval};

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    DirectSum,
    EightVar,
    FourVar,
    CaseSplit,
}

/// An exact solution count of one of the systems.
#[derive(Debug, Clone, Copy)]
pub struct SystemCount {
    pub bound: u64,
    pub alpha: ReducedFraction,
    pub value: u64,
    pub method: CountMethod,
}

/// The five-way partition of R_α(U²) by the size of p, q and n relative
/// to U.
#[derive(Debug, Clone, Copy)]
pub struct CaseSplit {
    pub u_bound: u64,
    pub alpha: ReducedFraction,
    pub cases: [u64; 5],
}

impl CaseSplit {
    pub fn total(&self) -> u64 {
        self.cases.iter().sum()
    }
}

#[cfg(feature = "parallel")]
fn sum_over_range<F>(lo: u64, hi: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    use rayon::prelude::*;
    (lo..=hi).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
fn sum_over_range<F>(lo: u64, hi: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    (lo..=hi).map(f).sum()
}

/// Largest a with a < αb, i.e. a·w ≤ v·b − 1; 0 when none.
#[inline]
fn max_below_cut(alpha: ReducedFraction, b: u64) -> u64 {
    let vb = alpha.num() as u128 * b as u128;
    if vb == 0 {
        0
    } else {
        ((vb - 1) / alpha.den() as u128) as u64
    }
}

fn count_n_value_seq(q_max: u64, alpha: ReducedFraction) -> u64 {
    (1..=q_max).map(|b| count_n_row(b, alpha)).sum()
}

fn count_n_row(b: u64, alpha: ReducedFraction) -> u64 {
    let mut total = 0u64;
    for a in 1..=max_below_cut(alpha, b) {
        let g = gcd_unchecked(a, b);
        total += FracSummary::new(a / g, b / g).ell();
    }
    total
}

/// N_α(Q): Σ ℓ(a/b) over all pairs 1 ≤ a < αb, b ≤ Q.
pub fn count_n(q_max: u64, alpha: ReducedFraction) -> SystemCount {
    assert!(q_max >= 1 && !alpha.is_zero());
    SystemCount {
        bound: q_max,
        alpha,
        value: sum_over_range(1, q_max, |b| count_n_row(b, alpha)),
        method: CountMethod::DirectSum,
    }
}

/// Sequential N_α(Q), for the benchmark comparison.
pub fn count_n_seq(q_max: u64, alpha: ReducedFraction) -> SystemCount {
    SystemCount {
        bound: q_max,
        alpha,
        value: count_n_value_seq(q_max, alpha),
        method: CountMethod::DirectSum,
    }
}

/// Enumeration budget for the eight-variable system.
pub const COUNT_T_LIMIT: u64 = 60;

/// T_α(Q): solutions (a₁, q₁, a₂, q₂, m, n, a, b) of
///   a₁q₂ − a₂q₁ = 1,  1 ≤ a₁ ≤ αq₁,  1 ≤ a₂ ≤ q₂,
///   na₂ − ma₁ = a,    nq₂ − mq₁ = b,  1 ≤ a < b ≤ Q,
///   1 ≤ m < n,        1 ≤ q₁ < q₂.
///
/// The determinant equation pins (a₁, a₂) for each coprime (q₁, q₂):
/// a₁ = inv_{q₁}(q₂) is the only representative that can satisfy both
/// box constraints, after which (m, n) are enumerated within b ≤ Q.
pub fn count_t(q_max: u64, alpha: ReducedFraction) -> Result<SystemCount> {
    if q_max > COUNT_T_LIMIT {
        return Err(Error::Budget {
            name: "count_t",
            limit: COUNT_T_LIMIT,
            requested: q_max,
        });
    }
    assert!(q_max >= 1 && !alpha.is_zero());
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let mut total = 0u64;
    for q2 in 2..=q_max {
        for q1 in 1..q2 {
            if gcd_unchecked(q1, q2) != 1 {
                continue;
            }
            let a1 = mod_inverse(q2 as i64, q1).expect("coprime");
            if a1 as u128 * w > v * q1 as u128 {
                continue;
            }
            let a2 = (a1 * q2 - 1) / q1;
            debug_assert!(a2 >= 1 && a2 <= q2);
            // For each m, n runs while b = n·q₂ − m·q₁ stays ≤ Q.
            for m in 1..=q_max {
                if (m + 1) * q2 > q_max + m * q1 {
                    break;
                }
                let n_hi = (q_max + m * q1) / q2;
                for n in (m + 1)..=n_hi {
                    let b = n * q2 - m * q1;
                    let a = n as i128 * a2 as i128 - m as i128 * a1 as i128;
                    if a >= 1 && a < b as i128 {
                        total += 1;
                    }
                }
            }
        }
    }
    Ok(SystemCount {
        bound: q_max,
        alpha,
        value: total,
        method: CountMethod::EightVar,
    })
}

/// Number of pairs 1 ≤ k < n with nq + kp ≤ limit (closed form per k).
#[inline]
fn kn_box_count(p: u64, q: u64, limit: u64) -> u64 {
    let mut total = 0u64;
    let mut k = 1u64;
    while k * p + (k + 1) * q <= limit {
        total += (limit - k * p) / q - k;
        k += 1;
    }
    total
}

fn count_r_column(p: u64, q_max: u64, alpha: ReducedFraction) -> u64 {
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let mut total = 0u64;
    for q in 1..=(q_max.saturating_sub(p)) / 2 {
        if gcd_unchecked(p, q) != 1 {
            continue;
        }
        let inv = mod_inverse(q as i64, p).expect("coprime");
        if inv as u128 * w <= v * p as u128 {
            total += kn_box_count(p, q, q_max);
        }
    }
    total
}

/// R_α(Q): solutions (p, q, n, k) of
///   gcd(p, q) = 1,  p ≥ 2,  q ≥ 1,
///   2 ≤ nq + kp ≤ Q,  1 ≤ k < n,  inv_p(q) ≤ αp.
pub fn count_r(q_max: u64, alpha: ReducedFraction) -> SystemCount {
    assert!(q_max >= 1 && !alpha.is_zero());
    let value = if q_max < 4 {
        0
    } else {
        sum_over_range(2, q_max - 2, |p| count_r_column(p, q_max, alpha))
    };
    SystemCount {
        bound: q_max,
        alpha,
        value,
        method: CountMethod::FourVar,
    }
}

/// Sequential R_α(Q), for the benchmark comparison.
pub fn count_r_seq(q_max: u64, alpha: ReducedFraction) -> SystemCount {
    let value = if q_max < 4 {
        0
    } else {
        (2..=q_max - 2)
            .map(|p| count_r_column(p, q_max, alpha))
            .sum()
    };
    SystemCount {
        bound: q_max,
        alpha,
        value,
        method: CountMethod::FourVar,
    }
}

/// Case-split budget: U ≤ 100 keeps the Q = U² sweep cheap.
pub const CASE_SPLIT_LIMIT: u64 = 100;

/// R_α(U²) split into the five size classes
///   1: p ≤ q ≤ U            2: p ≤ q, U < q         3: q < p ≤ U
///   4: q < p, U < p, n ≤ U  5: q < p, U < p, U < n.
pub fn count_r_cases(u_bound: u64, alpha: ReducedFraction) -> Result<CaseSplit> {
    if u_bound > CASE_SPLIT_LIMIT {
        return Err(Error::Budget {
            name: "count_r_cases",
            limit: CASE_SPLIT_LIMIT,
            requested: u_bound,
        });
    }
    if u_bound == 0 {
        return Err(domain("case split needs U ≥ 1"));
    }
    assert!(!alpha.is_zero());
    let q_max = u_bound * u_bound;
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let mut cases = [0u64; 5];
    for p in 2..=q_max.saturating_sub(2) {
        for q in 1..=(q_max - p) / 2 {
            if gcd_unchecked(p, q) != 1 {
                continue;
            }
            let inv = mod_inverse(q as i64, p).expect("coprime");
            if inv as u128 * w > v * p as u128 {
                continue;
            }
            if p <= q {
                let idx = if q <= u_bound { 0 } else { 1 };
                cases[idx] += kn_box_count(p, q, q_max);
            } else if p <= u_bound {
                cases[2] += kn_box_count(p, q, q_max);
            } else {
                // q < p, U < p: split the n-range at U
                let mut k = 1u64;
                while k * p + (k + 1) * q <= q_max {
                    let top = (q_max - k * p) / q;
                    let low_top = top.min(u_bound);
                    if low_top > k {
                        cases[3] += low_top - k;
                    }
                    let high_base = k.max(u_bound);
                    if top > high_base {
                        cases[4] += top - high_base;
                    }
                    k += 1;
                }
            }
        }
    }
    Ok(CaseSplit {
        u_bound,
        alpha,
        cases,
    })
}

/// Both sides of the Möbius cut identity
///   Σ_{d ≤ Q} μ(d) N_α(⌊Q/d⌋) = Σ_{x ∈ 𝓕_α(Q)} ℓ(x),
/// which holds exactly for every Q and α. Returns (lhs, rhs).
pub fn moebius_cut_identity(q_max: u64, alpha: ReducedFraction) -> (i128, i128) {
    assert!(q_max >= 1 && !alpha.is_zero());
    let sieve = SieveTables::new(q_max).expect("q_max ≥ 1");
    let mut lhs = 0i128;
    for d in 1..=q_max {
        let mu = sieve.mu[d as usize];
        if mu == 0 {
            continue;
        }
        lhs += mu as i128 * count_n(q_max / d, alpha).value as i128;
    }
    let rhs = cut_totals(q_max, &CutInterval::lower(alpha)).ell;
    (lhs, rhs)
}

/// δ_α(q) (a direct coprime count over ((1−α)q, q]) and κ_α(q) (the exact
/// divisor-sum correction), which satisfy δ_α(q) = α·φ(q) + κ_α(q) for
/// every q ≥ 1.
pub fn delta_kappa(
    q: u64,
    alpha: ReducedFraction,
    sieve: &SieveTables,
) -> (u64, ExactRational) {
    assert!(q >= 1 && q <= sieve.limit && !alpha.is_zero());
    let (v, w) = (alpha.num(), alpha.den());
    // smallest p with p·w > (w−v)·q
    let p_min = ((w - v) as u128 * q as u128 / w as u128) as u64 + 1;
    let delta = (p_min..=q).filter(|&p| gcd_unchecked(p, q) == 1).count() as u64;

    let mut kappa_num = 0i128; // numerator over denominator w
    for d in sieve.divisors(q) {
        let mu = sieve.mu[(q / d) as usize];
        if mu == 0 {
            continue;
        }
        let r = d % w;
        if r == 0 {
            continue;
        }
        // 1 − {αr} = (w − (v·r mod w)) / w; v·r mod w ≠ 0 since gcd(v, w) = 1
        let frac = (v as u128 * r as u128 % w as u128) as i128;
        kappa_num += mu as i128 * (w as i128 - frac);
    }
    (delta, rational(kappa_num, w as i128))
}

/// Outcome of the inverse-swap equivalence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionCheck {
    /// Both membership tests, evaluated exactly: they must agree.
    Checked { lhs: bool, rhs: bool },
    /// The hypothesis w ≤ max(p, q) fails; the equivalence is not claimed.
    SkippedHypothesis,
}

/// Evaluates both sides of
///   inv_p(q) ≤ αp  ⟺  inv_q(p) > (1−α)q
/// for coprime p, q ≥ 2 and reduced α = v/w with w ≤ p or w ≤ q.
pub fn inversion_equiv(p: u64, q: u64, alpha: ReducedFraction) -> Result<InversionCheck> {
    if p < 2 || q < 2 {
        return Err(domain("equivalence needs p, q ≥ 2"));
    }
    if gcd_unchecked(p, q) != 1 {
        return Err(domain("equivalence needs coprime p, q"));
    }
    let (v, w) = (alpha.num(), alpha.den());
    if alpha.is_zero() {
        return Err(domain("cut must be positive"));
    }
    if w > p && w > q {
        return Ok(InversionCheck::SkippedHypothesis);
    }
    let inv_pq = mod_inverse(q as i64, p).expect("coprime");
    let inv_qp = mod_inverse(p as i64, q).expect("coprime");
    let lhs = inv_pq as u128 * w as u128 <= v as u128 * p as u128;
    let rhs = inv_qp as u128 * w as u128 > (w - v) as u128 * q as u128;
    Ok(InversionCheck::Checked { lhs, rhs })
}

/// Which tail of the inverse distribution is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PomiTail {
    /// inv_p(q) ≤ αp
    Lower,
    /// inv_p(q) > (1−α)p
    Upper,
}

/// Count, expected main term and deviation for one window of the
/// modular-inverse equidistribution statement.
#[derive(Debug, Clone, Copy)]
pub struct PomiReport {
    pub count: u64,
    pub main: f64,
    pub deviation: f64,
}

fn euler_phi(mut n: u64) -> u64 {
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            phi -= phi / p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// ♯{q ∈ [x1, x2] : gcd(q, p) = 1, tail condition} against the
/// equidistribution main term α·φ(p)/p·(x2 − x1).
pub fn pomi_deviation(
    p: u64,
    alpha: ReducedFraction,
    x1: f64,
    x2: f64,
    tail: PomiTail,
) -> Result<PomiReport> {
    if p < 2 {
        return Err(domain("modulus must be at least 2"));
    }
    if !(x2 > x1 && x1 >= 0.0) {
        return Err(domain("window must satisfy 0 ≤ x1 < x2"));
    }
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let lo = x1.ceil() as u64;
    let hi = x2.floor() as u64;
    let mut count = 0u64;
    for q in lo..=hi {
        if gcd_unchecked(q, p) != 1 {
            continue;
        }
        let inv = mod_inverse(q as i64, p).expect("coprime") as u128;
        let keep = match tail {
            PomiTail::Lower => inv * w <= v * p as u128,
            PomiTail::Upper => inv * w > (w - v) * p as u128,
        };
        if keep {
            count += 1;
        }
    }
    let main = alpha.to_f64() * euler_phi(p) as f64 / p as f64 * (x2 - x1);
    Ok(PomiReport {
        count,
        main,
        deviation: count as f64 - main,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: u64, d: u64) -> ReducedFraction {
        ReducedFraction::new(n, d).unwrap()
    }

    #[test]
    fn count_n_examples() {
        assert_eq!(count_n(3, frac(1, 1)).value, 4);
        assert_eq!(count_n(3, frac(1, 2)).value, 2);
        assert_eq!(count_n(1, frac(1, 1)).value, 0);
        assert_eq!(count_n_seq(30, frac(2, 5)).value, count_n(30, frac(2, 5)).value);
    }

    #[test]
    fn count_t_examples() {
        assert_eq!(count_t(1, frac(1, 1)).unwrap().value, 0);
        assert!(matches!(
            count_t(61, frac(1, 1)),
            Err(Error::Budget { limit: 60, .. })
        ));
    }

    #[test]
    fn count_r_examples() {
        assert_eq!(count_r(7, frac(1, 1)).value, 12);
        assert_eq!(count_r(7, frac(1, 2)).value, 11);
        assert_eq!(count_r(2, frac(1, 1)).value, 0);
        assert_eq!(count_r_seq(55, frac(1, 3)).value, count_r(55, frac(1, 3)).value);
    }

    #[test]
    fn case_split_partitions() {
        for (u, al) in [(3u64, frac(1, 1)), (5, frac(1, 2)), (6, frac(1, 3))] {
            let split = count_r_cases(u, al).unwrap();
            assert_eq!(split.total(), count_r(u * u, al).value, "U={u} α={al}");
        }
        assert!(count_r_cases(101, frac(1, 1)).is_err());
    }

    #[test]
    fn moebius_identity_examples() {
        assert_eq!(moebius_cut_identity(3, frac(1, 2)), (2, 2));
        assert_eq!(moebius_cut_identity(3, frac(1, 1)), (4, 4));
        assert_eq!(moebius_cut_identity(1, frac(1, 1)), (0, 0));
    }

    #[test]
    fn delta_kappa_examples() {
        let sieve = SieveTables::new(16).unwrap();
        let (d, k) = delta_kappa(4, frac(1, 2), &sieve);
        assert_eq!((d, k), (1, rational(0, 1)));
        let (d, k) = delta_kappa(3, frac(1, 3), &sieve);
        assert_eq!((d, k), (0, rational(-2, 3)));
        let (d, k) = delta_kappa(1, frac(1, 1), &sieve);
        assert_eq!((d, k), (1, rational(0, 1)));
        // q = 1 with w > 1: the divisor d = 1 falls in the r = 1 class,
        // so κ = 1 − α and the identity δ = αφ + κ still holds.
        let (d, k) = delta_kappa(1, frac(1, 2), &sieve);
        assert_eq!((d, k), (1, rational(1, 2)));
    }

    #[test]
    fn delta_kappa_identity_small() {
        let sieve = SieveTables::new(200).unwrap();
        for q in 1..=200u64 {
            for al in [frac(1, 2), frac(2, 3), frac(3, 7), frac(1, 1)] {
                let (delta, kappa) = delta_kappa(q, al, &sieve);
                let lhs = rational(delta as i128, 1);
                let rhs = al.to_rational() * rational(sieve.phi[q as usize] as i128, 1) + kappa;
                assert_eq!(lhs, rhs, "q={q} α={al}");
            }
        }
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(
            inversion_equiv(7, 3, frac(1, 3)).unwrap(),
            InversionCheck::Checked {
                lhs: false,
                rhs: false
            }
        );
        assert_eq!(
            inversion_equiv(2, 3, frac(1, 2)).unwrap(),
            InversionCheck::Checked {
                lhs: true,
                rhs: true
            }
        );
        assert_eq!(
            inversion_equiv(3, 2, frac(1, 1)).unwrap(),
            InversionCheck::Checked {
                lhs: true,
                rhs: true
            }
        );
        assert_eq!(
            inversion_equiv(3, 2, frac(1, 5)).unwrap(),
            InversionCheck::SkippedHypothesis
        );
        assert!(inversion_equiv(1, 2, frac(1, 2)).is_err());
        assert!(inversion_equiv(4, 2, frac(1, 2)).is_err());
    }

    #[test]
    fn pomi_examples() {
        let r = pomi_deviation(5, frac(1, 1), 0.0, 5.0, PomiTail::Lower).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.main, 4.0);
        assert_eq!(r.deviation, 0.0);
        let r = pomi_deviation(7, frac(1, 2), 0.0, 7.0, PomiTail::Lower).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.main, 3.0);
        let r = pomi_deviation(7, frac(1, 2), 0.0, 7.0, PomiTail::Upper).unwrap();
        assert_eq!(r.main, 3.0);
        assert!(pomi_deviation(1, frac(1, 2), 0.0, 1.0, PomiTail::Lower).is_err());
    }

    #[test]
    fn euler_phi_spot_checks() {
        let sieve = SieveTables::new(1000).unwrap();
        for n in [2u64, 12, 97, 360, 1000] {
            assert_eq!(euler_phi(n), sieve.phi[n as usize]);
        }
    }
}
