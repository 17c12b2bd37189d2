//! Brute-force oracles shared by the integration suites. Every oracle is
//! a direct transcription of the defining conditions, independent of the
//! code paths it checks.
//!
//! Each test binary compiles this module separately and uses a subset.
#![allow(dead_code)]

use fareycut::arith::{gcd, ExactRational, ReducedFraction};

pub fn frac(n: u64, d: u64) -> ReducedFraction {
    ReducedFraction::new(n, d).unwrap()
}

pub fn rat(n: i128, d: i128) -> ExactRational {
    fareycut::arith::rational(n, d)
}

/// All reduced fractions v/w with w ≤ q, 0 ≤ v/w ≤ 1, by scanning pairs.
pub fn farey_brute(q: u64) -> Vec<ReducedFraction> {
    let mut out = vec![ReducedFraction::ZERO];
    for den in 1..=q {
        for num in 1..=den {
            if gcd(num, den).unwrap() == 1 {
                out.push(frac(num, den));
            }
        }
    }
    out.sort();
    out
}

/// ℓ(a/b) by literally running the by-excess iteration on the reduced
/// fraction, counting ceiling steps.
pub fn ell_by_excess(x: ReducedFraction) -> u64 {
    assert!(!x.is_zero());
    if x.is_one() {
        return 0;
    }
    let mut num = x.den();
    let mut den = x.den() - x.num();
    let mut steps = 0;
    while den != 0 {
        steps += 1;
        if num.is_multiple_of(den) {
            break;
        }
        let b = num / den + 1;
        (num, den) = (den, b * den - num);
    }
    steps
}

/// T_α(Q) by enumerating all eight variables against the raw system.
pub fn count_t_naive(q_max: u64, alpha: ReducedFraction) -> u64 {
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let mut total = 0u64;
    for q1 in 1..=q_max {
        for q2 in (q1 + 1)..=q_max {
            for a1 in 1..=q1 {
                if a1 as u128 * w > v * q1 as u128 {
                    continue;
                }
                for a2 in 1..=q2 {
                    if a1 * q2 != a2 * q1 + 1 {
                        continue;
                    }
                    for m in 1..=q_max {
                        if (m + 1) * q2 > q_max + m * q1 {
                            break;
                        }
                        for n in (m + 1)..=q_max {
                            let b = n as i128 * q2 as i128 - m as i128 * q1 as i128;
                            if b > q_max as i128 {
                                break;
                            }
                            let a = n as i128 * a2 as i128 - m as i128 * a1 as i128;
                            if b >= 1 && a >= 1 && a < b {
                                total += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    total
}

/// R_α(Q) by enumerating all four variables against the raw system.
pub fn count_r_naive(q_max: u64, alpha: ReducedFraction) -> u64 {
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let mut total = 0u64;
    for p in 2..=q_max {
        for q in 1..=q_max {
            if gcd(p, q).unwrap() != 1 {
                continue;
            }
            let inv = fareycut::mod_inverse(q as i64, p).unwrap();
            if inv as u128 * w > v * p as u128 {
                continue;
            }
            for k in 1..=q_max {
                for n in (k + 1)..=q_max {
                    let s = n * q + k * p;
                    if s > q_max {
                        break;
                    }
                    if s >= 2 {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

/// The five-way size split of R_α(U²), by the same raw enumeration.
pub fn count_r_cases_naive(u_bound: u64, alpha: ReducedFraction) -> [u64; 5] {
    let q_max = u_bound * u_bound;
    let (v, w) = (alpha.num() as u128, alpha.den() as u128);
    let mut cases = [0u64; 5];
    for p in 2..=q_max {
        for q in 1..=q_max {
            if gcd(p, q).unwrap() != 1 {
                continue;
            }
            let inv = fareycut::mod_inverse(q as i64, p).unwrap();
            if inv as u128 * w > v * p as u128 {
                continue;
            }
            for k in 1..=q_max {
                if k * p + (k + 1) * q > q_max {
                    break;
                }
                for n in (k + 1)..=q_max {
                    if n * q + k * p > q_max {
                        break;
                    }
                    let idx = if p <= q {
                        if q <= u_bound {
                            0
                        } else {
                            1
                        }
                    } else if p <= u_bound {
                        2
                    } else if n <= u_bound {
                        3
                    } else {
                        4
                    };
                    cases[idx] += 1;
                }
            }
        }
    }
    cases
}
