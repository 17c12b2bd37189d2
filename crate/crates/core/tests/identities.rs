//! Cross-module exact identities at module-invariant scale. The heavier,
//! criterion-level sweeps live in tests/acceptance.rs.

mod support;

use num_traits::{Signed, Zero};
use support::{frac, rat};

use fareycut::arith::{rational, ReducedFraction, SieveTables};
use fareycut::asymptotics::predict;
use fareycut::counting::delta_kappa;
use fareycut::dedekind::{dedekind_fast, dedekind_naive};
use fareycut::farey::{
    aggregate, complement_aggregate, cut_totals, CutInterval, FareyCutSpec, FareyStream, Side,
    Statistic,
};

#[test]
fn inverse_identity_exhaustive_to_500() {
    // q·inv_p(q) + p·inv_q(p) = 1 + pq for all coprime p, q ≤ 500
    for p in 2u64..=500 {
        for q in (p + 1)..=500 {
            if fareycut::gcd(p, q).unwrap() != 1 {
                continue;
            }
            let ip = fareycut::mod_inverse(q as i64, p).unwrap();
            let iq = fareycut::mod_inverse(p as i64, q).unwrap();
            assert_eq!(q * ip + p * iq, 1 + p * q, "p={p} q={q}");
        }
    }
}

#[test]
fn totient_summatory_matches_pair_counting() {
    let sieve = SieveTables::new(300).unwrap();
    let mut brute = 1u64; // the fraction 0
    for q in 1..=300u64 {
        brute += (1..=q).filter(|&a| fareycut::gcd(a, q).unwrap() == 1).count() as u64;
        assert_eq!(sieve.farey_count(q), brute, "x={q}");
    }
}

#[test]
fn dedekind_scaling_invariance() {
    // s(ka, kb) = s(a, b) for k = 1, 2, 3, via the literal sawtooth sum
    for b in 1u64..=100 {
        for a in 0..b {
            if a != 0 && fareycut::gcd(a, b).unwrap() != 1 {
                continue;
            }
            let base = dedekind_naive(a as i64, b).unwrap();
            for k in 2u64..=3 {
                let scaled = dedekind_naive((k * a) as i64, k * b).unwrap();
                assert_eq!(scaled, base, "a={a} b={b} k={k}");
            }
        }
    }
}

#[test]
fn dedekind_reciprocity_exhaustive_to_300() {
    // s(a,b) + s(b,a) = (1/12)(a/b + b/a + 1/(ab)) − 1/4
    for b in 2u64..=300 {
        for a in 1..b {
            if fareycut::gcd(a, b).unwrap() != 1 {
                continue;
            }
            let lhs = dedekind_fast(a as i64, b).unwrap() + dedekind_fast(b as i64, a).unwrap();
            let rhs = rat((a * a + b * b + 1) as i128, (12 * a * b) as i128) - rat(1, 4);
            assert_eq!(lhs, rhs, "a={a} b={b}");
        }
    }
}

#[test]
fn dedekind_mass_report() {
    // Σ*_{k<a} |s(k,a)| / (a log²a): reported, not asserted
    for a in [250u64, 500, 1000, 2000] {
        let mut mass = rat(0, 1);
        for k in 1..a {
            if fareycut::gcd(k, a).unwrap() != 1 {
                continue;
            }
            mass += dedekind_fast(k as i64, a).unwrap().abs();
        }
        let scaled =
            fareycut::arith::rational_to_f64(&mass) / (a as f64 * (a as f64).ln().powi(2));
        println!("dedekind mass at a={a}: {scaled:.6}");
    }
}

#[test]
fn farey_partition_reconstructs_full_total() {
    // [0, α) ∪ [α, 1−α] ∪ (1−α, 1] for α = v/w ≤ 1/2 with w ≤ Q
    for (q, alpha) in [
        (60u64, frac(1, 2)),
        (60, frac(1, 3)),
        (47, frac(2, 5)),
        (51, frac(3, 7)),
    ] {
        for stat in [Statistic::Ell, Statistic::RegularLen, Statistic::SigmaPm] {
            let lower = aggregate(
                &FareyCutSpec {
                    q_max: q,
                    alpha,
                    side: Side::Lower,
                },
                stat,
            );
            let upper = complement_aggregate(q, alpha, stat);
            let middle = cut_totals(q, &CutInterval::between(alpha, alpha.complement()))
                .integer_total(stat)
                + fareycut::farey::SweepTotals::from_point(q, alpha.complement())
                    .integer_total(stat);
            let full = cut_totals(q, &CutInterval::full()).integer_total(stat);
            let lhs = lower.total.to_rational()
                + rational(middle, 1)
                + upper.total.to_rational();
            assert_eq!(lhs, rational(full, 1), "q={q} α={alpha} {stat:?}");
        }
    }
}

#[test]
fn myerson_bridge_bounded_error() {
    // 12 Σ_{𝓕_α} s = Σ_{𝓕_α} ℓ − Σ_{𝓕ᶜ_α} ℓ + error, |error| ≤ 5 ♯𝓕_α
    for (q, alpha) in [(150u64, frac(1, 2)), (150, frac(1, 3)), (101, frac(2, 5))] {
        let lower = cut_totals(q, &CutInterval::lower(alpha));
        let comp = cut_totals(q, &CutInterval::upper_complement(alpha));
        let twelve_s = rat(12, 1) * lower.dedekind_total();
        let bridge = rational(lower.ell - comp.ell, 1);
        let err = twelve_s - bridge;
        assert!(
            err.abs() <= rational(5 * lower.count as i128, 1),
            "q={q} α={alpha} err={err}"
        );
    }
}

#[test]
fn enumeration_count_matches_sieve_to_5000() {
    let q = 5000u64;
    let sieve = SieveTables::new(q).unwrap();
    let swept = cut_totals(q, &CutInterval::full());
    assert_eq!(swept.count, sieve.farey_count(q));
}

#[test]
fn kappa_bounded_by_divisor_count() {
    let sieve = SieveTables::new(2000).unwrap();
    for alpha in [frac(1, 2), frac(1, 3), frac(2, 3), frac(2, 5), frac(3, 7), frac(1, 1)] {
        for q in 1..=2000u64 {
            let (_, kappa) = delta_kappa(q, alpha, &sieve);
            let d = rational(sieve.dcount[q as usize] as i128, 1);
            assert!(kappa.abs() <= d, "q={q} α={alpha} κ={kappa}");
        }
    }
}

#[test]
fn complement_prediction_differs_by_main_term() {
    // main terms of the complement cut sit exactly (1 − 1/w²) log Q lower
    for (alpha, q) in [(frac(1, 2), 400u64), (frac(2, 5), 900), (frac(3, 7), 2500)] {
        let lower = predict(Statistic::Ell, alpha, q, Side::Lower).unwrap();
        let comp = predict(Statistic::Ell, alpha, q, Side::UpperComplement).unwrap();
        let w = alpha.den() as f64;
        let expect = (1.0 - 1.0 / (w * w)) * (q as f64).ln();
        assert!(
            (lower.main_terms - comp.main_terms - expect).abs() < 1e-12,
            "α={alpha} q={q}"
        );
    }
}

#[test]
fn stream_agrees_with_brute_force_filter() {
    let q = 40u64;
    let all = support::farey_brute(q);
    for alpha in [frac(1, 2), frac(2, 5), frac(1, 1), frac(39, 40)] {
        let lower: Vec<ReducedFraction> =
            FareyStream::new(q, &CutInterval::lower(alpha)).collect();
        let expect: Vec<ReducedFraction> =
            all.iter().copied().filter(|x| *x < alpha).collect();
        assert_eq!(lower, expect, "lower cut at {alpha}");

        let comp: Vec<ReducedFraction> =
            FareyStream::new(q, &CutInterval::upper_complement(alpha)).collect();
        let c = alpha.complement();
        let expect: Vec<ReducedFraction> =
            all.iter().copied().filter(|x| *x > c).collect();
        assert_eq!(comp, expect, "complement cut at {alpha}");
    }
}

#[test]
fn aggregate_means_are_exact_ratios() {
    let r = aggregate(
        &FareyCutSpec {
            q_max: 120,
            alpha: frac(1, 2),
            side: Side::Lower,
        },
        Statistic::DedekindS,
    );
    let expect = r.total.to_rational() / rat(r.count as i128, 1);
    assert!((r.mean - fareycut::arith::rational_to_f64(&expect)).abs() < 1e-15);
    assert!(r.total.to_rational().numer().magnitude().bits() > 0 || r.total.to_rational().is_zero());
}
