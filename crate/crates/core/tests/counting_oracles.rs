//! The deliberately-dumb enumerations against the structured counters.

mod support;

use support::{frac, count_r_cases_naive, count_r_naive, count_t_naive};

use fareycut::counting::{count_n, count_r, count_r_cases, count_t};

#[test]
fn eight_variable_system_matches_naive_to_20() {
    for alpha in [frac(1, 1), frac(1, 2), frac(1, 3)] {
        for q in 1..=20u64 {
            assert_eq!(
                count_t(q, alpha).unwrap().value,
                count_t_naive(q, alpha),
                "Q={q} α={alpha}"
            );
        }
    }
    // smallest nontrivial case, cross-checked explicitly
    assert_eq!(count_t(2, frac(1, 1)).unwrap().value, count_t_naive(2, frac(1, 1)));
}

#[test]
fn four_variable_system_matches_naive_small() {
    for alpha in [frac(1, 1), frac(1, 2), frac(2, 5)] {
        for q in 1..=40u64 {
            assert_eq!(
                count_r(q, alpha).value,
                count_r_naive(q, alpha),
                "Q={q} α={alpha}"
            );
        }
    }
}

#[test]
fn case_counts_match_naive_split() {
    // every case individually, not only the total
    let split = count_r_cases(3, frac(1, 1)).unwrap();
    assert_eq!(split.cases, count_r_cases_naive(3, frac(1, 1)));
    let split = count_r_cases(5, frac(1, 2)).unwrap();
    assert_eq!(split.cases, count_r_cases_naive(5, frac(1, 2)));
    let split = count_r_cases(6, frac(1, 3)).unwrap();
    assert_eq!(split.cases, count_r_cases_naive(6, frac(1, 3)));
}

#[test]
fn direct_sum_matches_by_excess_oracle() {
    // N_α(Q) against a literal double loop running the by-excess iteration
    for alpha in [frac(1, 1), frac(1, 2), frac(2, 3)] {
        for q in [1u64, 7, 25, 60] {
            let mut expect = 0u64;
            for b in 1..=q {
                for a in 1..b.max(1) {
                    if (a as u128) * alpha.den() as u128 >= (alpha.num() as u128) * b as u128 {
                        continue;
                    }
                    let g = fareycut::gcd(a, b).unwrap();
                    expect += support::ell_by_excess(frac(a / g, b / g));
                }
            }
            assert_eq!(count_n(q, alpha).value, expect, "Q={q} α={alpha}");
        }
    }
}
