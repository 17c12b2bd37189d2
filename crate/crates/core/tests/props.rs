//! Property-based invariants.

mod support;

use proptest::prelude::*;

use fareycut::arith::{rational, ExactRational, ReducedFraction, SieveTables};
use fareycut::contfrac::{
    ell_length, eval_minus_cf, eval_regular_cf, hickerson_sum, minus_cf, regular_cf,
};
use fareycut::dedekind::dedekind_naive;

fn reduced_fraction(max_den: u64) -> impl Strategy<Value = ReducedFraction> {
    (1..=max_den).prop_flat_map(|den| {
        (0..=den).prop_map(move |num| ReducedFraction::new(num, den).unwrap())
    })
}

fn exact(num: i64, den: u64) -> ExactRational {
    rational(num as i128, den as i128)
}

proptest! {
    #[test]
    fn rational_add_round_trips(
        (a, b) in (-1000i64..1000, 1u64..1000),
        (c, d) in (-1000i64..1000, 1u64..1000),
    ) {
        let x = exact(a, b);
        let y = exact(c, d);
        prop_assert_eq!((&x + &y) - &y, x);
    }

    #[test]
    fn regular_cf_round_trips(x in reduced_fraction(5000)) {
        prop_assume!(!x.is_one());
        let cf = regular_cf(x).unwrap();
        prop_assert!(cf.digits.last() != Some(&1));
        prop_assert_eq!(eval_regular_cf(&cf.digits, false).unwrap(), x.to_rational());
    }

    #[test]
    fn minus_cf_round_trips(x in reduced_fraction(5000)) {
        prop_assume!(!x.is_zero());
        let cf = minus_cf(x).unwrap();
        prop_assert!(cf.digits.iter().all(|&b| b >= 2));
        prop_assert_eq!(eval_minus_cf(&cf.digits).unwrap(), x.to_rational());
    }

    #[test]
    fn ell_shortcut_equals_by_excess_iteration(x in reduced_fraction(5000)) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(ell_length(x).unwrap(), minus_cf(x).unwrap().len() as u64);
        prop_assert_eq!(ell_length(x).unwrap(), support::ell_by_excess(x));
    }

    #[test]
    fn hickerson_equals_sawtooth(x in reduced_fraction(400)) {
        prop_assume!(!x.is_one());
        let closed = hickerson_sum(x).unwrap();
        let naive = dedekind_naive(x.num() as i64, x.den()).unwrap();
        prop_assert_eq!(closed, naive);
    }

    #[test]
    fn inverse_identity(p in 2u64..4000, q in 2u64..4000) {
        prop_assume!(fareycut::gcd(p, q).unwrap() == 1);
        let ip = fareycut::mod_inverse(q as i64, p).unwrap();
        let iq = fareycut::mod_inverse(p as i64, q).unwrap();
        prop_assert!(ip >= 1 && ip <= p);
        prop_assert_eq!(q * ip + p * iq, 1 + p * q);
    }

    #[test]
    fn moebius_divisor_sums(q in 1u64..3000) {
        // Σ_{d|q} μ(d) = [q = 1], and φ multiplicativity via the sieve
        let sieve = SieveTables::new(q).unwrap();
        let total: i64 = sieve
            .divisors(q)
            .iter()
            .map(|&d| sieve.mu[d as usize] as i64)
            .sum();
        prop_assert_eq!(total, if q == 1 { 1 } else { 0 });
        prop_assert_eq!(sieve.divisors(q).len(), sieve.dcount[q as usize] as usize);
    }

    #[test]
    fn phi_multiplicative(m in 1u64..300, n in 1u64..300) {
        prop_assume!(fareycut::gcd(m, n).unwrap() == 1);
        let sieve = SieveTables::new(m * n).unwrap();
        prop_assert_eq!(
            sieve.phi[(m * n) as usize],
            sieve.phi[m as usize] * sieve.phi[n as usize]
        );
    }

    #[test]
    fn cut_streams_match_filters(q in 1u64..60, alpha in reduced_fraction(60)) {
        prop_assume!(!alpha.is_zero());
        let all = support::farey_brute(q);
        let lower: Vec<_> = fareycut::farey::FareyStream::new(
            q,
            &fareycut::farey::CutInterval::lower(alpha),
        )
        .collect();
        let expect: Vec<_> = all.iter().copied().filter(|x| *x < alpha).collect();
        prop_assert_eq!(lower, expect);
        let comp: Vec<_> = fareycut::farey::FareyStream::new(
            q,
            &fareycut::farey::CutInterval::upper_complement(alpha),
        )
        .collect();
        let c = alpha.complement();
        let expect: Vec<_> = all.iter().copied().filter(|x| *x > c).collect();
        prop_assert_eq!(comp, expect);
    }
}
