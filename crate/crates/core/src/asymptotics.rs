//! Analytic constants and two-term predictions, and the experiments that
//! compare them against exact totals.
//!
//! Constants are computed to 12+ digits by truncated series with
//! Euler–Maclaurin tail corrections; every empirical/predicted comparison
//! happens in double precision, which is ample since all residual gates
//! sit at 1e-2 or above.

use std::sync::OnceLock;

use crate::arith::{rational, rational_to_f64, ExactRational, ReducedFraction, SieveTables};
use crate::contfrac::{ell_length, FracSummary};
use crate::counting::delta_kappa;
use crate::error::{domain, Error, Result};
use crate::farey::{aggregate, cut_totals, CutInterval, FareyCutSpec, Side, Statistic};

/// ζ(2), ζ′(2) and γ to at least 12 correct digits, with a note on how
/// each was obtained.
#[derive(Debug, Clone)]
pub struct ConstantSet {
    pub zeta2: f64,
    pub zeta_prime2: f64,
    pub euler_gamma: f64,
    pub notes: [&'static str; 3],
}

fn kahan_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for t in terms {
        let y = t - comp;
        let next = sum + y;
        comp = (next - sum) - y;
        sum = next;
    }
    sum
}

/// γ from the harmonic sum H_N with Euler–Maclaurin correction terms
/// through 1/N⁶; the truncation error is far below 1e-12 for N ≥ 100.
pub fn euler_gamma_series(n: u64) -> f64 {
    assert!(n >= 10);
    let h = kahan_sum((1..=n).rev().map(|k| 1.0 / k as f64));
    let nf = n as f64;
    h - nf.ln() - 1.0 / (2.0 * nf) + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4))
        + 1.0 / (252.0 * nf.powi(6))
}

/// ζ′(2) = −Σ_{k ≥ 2} log k / k², summed to N with the Euler–Maclaurin
/// tail ∫ + f/2 − f′/12 + f‴/720 for f(t) = log t / t².
pub fn zeta_prime2_series(n: u64) -> f64 {
    assert!(n >= 10);
    let head = kahan_sum((2..n).rev().map(|k| {
        let kf = k as f64;
        kf.ln() / (kf * kf)
    }));
    let nf = n as f64;
    let ln = nf.ln();
    let tail = (ln + 1.0) / nf + ln / (2.0 * nf * nf) + (2.0 * ln - 1.0) / (12.0 * nf.powi(3))
        + (26.0 - 24.0 * ln) / (720.0 * nf.powi(5));
    -(head + tail)
}

static CONSTANTS: OnceLock<ConstantSet> = OnceLock::new();

/// The shared constant set; computed once.
pub fn fundamental_constants() -> &'static ConstantSet {
    CONSTANTS.get_or_init(|| ConstantSet {
        zeta2: std::f64::consts::PI * std::f64::consts::PI / 6.0,
        zeta_prime2: zeta_prime2_series(20_000),
        euler_gamma: euler_gamma_series(20_000),
        notes: [
            "zeta2 = pi^2/6, closed form",
            "zeta_prime2 = -sum log n/n^2, Euler-Maclaurin tail, N = 20000",
            "euler_gamma from H_N - log N, Euler-Maclaurin tail, N = 20000",
        ],
    })
}

/// ζ(2, x) = Σ_{n ≥ 0} (n + x)^{-2} with absolute error below 1e-12:
/// 100 explicit terms plus the Euler–Maclaurin tail.
pub fn hurwitz_zeta2(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(domain("hurwitz zeta needs x > 0"));
    }
    const N: u64 = 100;
    let head = kahan_sum((0..N).rev().map(|n| {
        let t = n as f64 + x;
        1.0 / (t * t)
    }));
    let y = N as f64 + x;
    let tail = 1.0 / y + 1.0 / (2.0 * y * y) + 1.0 / (6.0 * y.powi(3)) - 1.0 / (30.0 * y.powi(5))
        + 1.0 / (42.0 * y.powi(7));
    Ok(head + tail)
}

/// F(α) = (1/(α w²)) Σ_{r=1}^{w−1} (1 − {αr}) ζ(2, r/w) for reduced
/// α = v/w; the fractional part {αr} is computed exactly as
/// (v·r mod w)/w. F(1) = 0 (empty sum).
pub fn f_alpha(alpha: ReducedFraction) -> Result<f64> {
    if alpha.is_zero() {
        return Err(domain("F is only defined on (0, 1]"));
    }
    let (v, w) = (alpha.num(), alpha.den());
    let mut sum = 0.0;
    for r in 1..w {
        let frac_num = (v as u128 * r as u128 % w as u128) as f64;
        let weight = (w as f64 - frac_num) / w as f64;
        sum += weight * hurwitz_zeta2(r as f64 / w as f64)?;
    }
    Ok(sum / (alpha.to_f64() * (w * w) as f64))
}

/// Coefficients (c₁, c₂) of the two-term law
/// mean ℓ over 𝓕_α(Q) ≈ c₁ (log Q)² + c₂ log Q for the lower cut at α.
pub fn ell_mean_coefficients(alpha: ReducedFraction) -> Result<(f64, f64)> {
    let c = fundamental_constants();
    let a = alpha.to_f64();
    let c1 = a / (2.0 * c.zeta2);
    let c2 = a / c.zeta2
        * (2.0 * c.euler_gamma - 2.0 * c.zeta_prime2 / c.zeta2 + f_alpha(alpha)? - 1.5);
    Ok((c1, c2))
}

/// (C₁, C₂) of the full-interval mean step-count law
/// mean ℓ over 𝓕(Q) ≈ C₁ (log Q)² + C₂ log Q + C₃.
pub fn step_count_mean_coefficients() -> (f64, f64) {
    let c = fundamental_constants();
    (
        1.0 / (2.0 * c.zeta2),
        (2.0 * c.euler_gamma - 1.5 - 2.0 * c.zeta_prime2 / c.zeta2) / c.zeta2,
    )
}

/// A two-term prediction for one cut statistic.
#[derive(Debug, Clone, Copy)]
pub struct Prediction {
    pub alpha: ReducedFraction,
    pub q_max: u64,
    pub statistic: Statistic,
    pub side: Side,
    pub main_terms: f64,
    /// Error scale of the statement: E(α) = ℓ(α) + (log w)² for the
    /// step-count means, 1 for the Dedekind mean.
    pub error_scale: f64,
}

/// E(α) = ℓ(α) + (log w)².
pub fn error_scale_ell(alpha: ReducedFraction) -> Result<f64> {
    let ell = ell_length(alpha)? as f64;
    let lw = (alpha.den() as f64).ln();
    Ok(ell + lw * lw)
}

/// Main terms of the mean of `stat` over the cut at α, normalised by
/// ♯𝓕(Q). Refuses when the hypotheses of the corresponding asymptotic
/// statement fail.
pub fn predict(
    stat: Statistic,
    alpha: ReducedFraction,
    q_max: u64,
    side: Side,
) -> Result<Prediction> {
    if alpha.is_zero() {
        return Err(domain("cut must be positive"));
    }
    let log_q = (q_max as f64).ln();
    match stat {
        Statistic::DedekindS => {
            if side != Side::Lower {
                return Err(Error::Hypothesis(
                    "the Dedekind-mean asymptotic is stated for the lower cut only".into(),
                ));
            }
            if alpha.cmp_frac(1, 2) == std::cmp::Ordering::Greater {
                return Err(Error::Hypothesis(
                    "the Dedekind-mean asymptotic needs a reduced cut in (0, 1/2]".into(),
                ));
            }
            let w = alpha.den() as f64;
            Ok(Prediction {
                alpha,
                q_max,
                statistic: stat,
                side,
                main_terms: (1.0 - 1.0 / (w * w)) / 12.0 * log_q,
                error_scale: 1.0,
            })
        }
        Statistic::Ell => {
            if (alpha.den() as u128).pow(2) >= q_max as u128 {
                return Err(Error::Hypothesis(
                    "the step-count asymptotic needs a cut denominator w < Q^(1/2)".into(),
                ));
            }
            let (c1, c2) = ell_mean_coefficients(alpha)?;
            let base = c1 * log_q * log_q + c2 * log_q;
            match side {
                Side::Lower => Ok(Prediction {
                    alpha,
                    q_max,
                    statistic: stat,
                    side,
                    main_terms: base,
                    error_scale: error_scale_ell(alpha)?,
                }),
                Side::UpperComplement => {
                    if alpha.is_one() {
                        return Err(Error::Hypothesis(
                            "the complement form of the step-count asymptotic needs α < 1".into(),
                        ));
                    }
                    let w = alpha.den() as f64;
                    Ok(Prediction {
                        alpha,
                        q_max,
                        statistic: stat,
                        side,
                        main_terms: base - (1.0 - 1.0 / (w * w)) * log_q,
                        error_scale: error_scale_ell(alpha.complement())?,
                    })
                }
            }
        }
        Statistic::RegularLen | Statistic::SigmaPm => Err(Error::Hypothesis(
            "no two-term prediction is wired for this statistic".into(),
        )),
    }
}

/// One grid point of an empirical-vs-predicted comparison.
#[derive(Debug, Clone, Copy)]
pub struct ResidualRow {
    pub q_max: u64,
    /// ♯𝓕(Q).
    pub count: u64,
    pub cut_count: u64,
    pub mean: f64,
    pub predicted: f64,
    pub residual: f64,
    pub error_scale: f64,
    pub residual_over_scale: f64,
}

/// Empirical means over a strictly increasing Q grid against the
/// two-term prediction.
pub fn residual_table(
    stat: Statistic,
    alpha: ReducedFraction,
    side: Side,
    grid: &[u64],
) -> Result<Vec<ResidualRow>> {
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.is_empty() {
        return Err(domain("grid must be strictly increasing and non-empty"));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &q in grid {
        let report = aggregate(
            &FareyCutSpec {
                q_max: q,
                alpha,
                side,
            },
            stat,
        );
        let pred = predict(stat, alpha, q, side)?;
        let residual = report.mean - pred.main_terms;
        rows.push(ResidualRow {
            q_max: q,
            count: report.count,
            cut_count: report.cut_count,
            mean: report.mean,
            predicted: pred.main_terms,
            residual,
            error_scale: pred.error_scale,
            residual_over_scale: residual / pred.error_scale,
        });
    }
    Ok(rows)
}

/// Least-squares slope of y against x.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// The normalised difference of step-count totals across a pair of cuts:
///   Δ(x, y) = (Σ_{𝓕_x(Q)} ℓ − Σ_{𝓕ᶜ_y(Q)} ℓ) / ♯𝓕(Q),
/// with the lower cut at `lower_cut` = x and the complement cut at
/// `complement_cut` = y.
#[derive(Debug, Clone)]
pub struct DeltaReport {
    pub q_max: u64,
    pub lower_cut: ReducedFraction,
    pub complement_cut: ReducedFraction,
    pub lower_total: i128,
    pub complement_total: i128,
    pub farey_count: u64,
    pub exact: ExactRational,
    pub value: f64,
}

/// Δ(lower_cut, complement_cut) at order Q, exactly.
pub fn delta_cuts(
    lower_cut: ReducedFraction,
    complement_cut: ReducedFraction,
    q_max: u64,
) -> DeltaReport {
    let lower = cut_totals(q_max, &CutInterval::lower(lower_cut));
    let comp = cut_totals(q_max, &CutInterval::upper_complement(complement_cut));
    let count = SieveTables::new(q_max)
        .expect("q_max ≥ 1")
        .farey_count(q_max);
    let exact = rational(lower.ell - comp.ell, count as i128);
    let value = rational_to_f64(&exact);
    DeltaReport {
        q_max,
        lower_cut,
        complement_cut,
        lower_total: lower.ell,
        complement_total: comp.ell,
        farey_count: count,
        exact,
        value,
    }
}

/// One grid point of the convergent-sandwich experiment at an irrational
/// cut.
#[derive(Debug, Clone)]
pub struct IrrationalRow {
    pub q_max: u64,
    /// Even-index convergent below the cut.
    pub beta: ReducedFraction,
    /// The next convergent, above the cut.
    pub beta_prime: ReducedFraction,
    /// Δ(β′, β).
    pub delta_upper: f64,
    /// Δ(β, β′).
    pub delta_lower: f64,
    /// 12 · mean of s over 𝓕_α(Q).
    pub twelve_mean_s: f64,
    /// (12 · mean s) / log Q; drifts towards 1 for typical cuts.
    pub ratio_to_log: f64,
    /// 5 · ♯𝓕_α(Q) / ♯𝓕(Q): the per-term slack of the bridge between
    /// Dedekind sums and step counts.
    pub slack: f64,
    /// Δ(β, β′) ≤ 12·mean_s + slack and 12·mean_s ≤ Δ(β′, β) + slack,
    /// both checked in exact arithmetic.
    pub sandwich_ok: bool,
}

/// All-ones digit list (the golden-ratio-type cut).
pub fn golden_ratio_digits(n: usize) -> Vec<u64> {
    vec![1; n]
}

/// Convergents p_k/q_k, k = 0 .. digits.len(), of [0; digits…].
fn convergents(digits: &[u64]) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::with_capacity(digits.len() + 1);
    let (mut p_prev, mut q_prev) = (1u64, 0u64);
    let (mut p, mut q) = (0u64, 1u64);
    out.push((p, q));
    for &a in digits {
        if a == 0 {
            return Err(domain("partial quotients must be positive"));
        }
        let p_next = a
            .checked_mul(p)
            .and_then(|t| t.checked_add(p_prev))
            .ok_or_else(|| domain("convergent numerators overflow u64"))?;
        let q_next = a
            .checked_mul(q)
            .and_then(|t| t.checked_add(q_prev))
            .ok_or_else(|| domain("convergent denominators overflow u64"))?;
        (p_prev, q_prev) = (p, q);
        (p, q) = (p_next, q_next);
        out.push((p, q));
    }
    Ok(out)
}

const GOLDEN: f64 = 1.618033988749895;

/// The convergent-sandwich experiment: for each Q in `grid`, pick the
/// sandwich convergents β = p_N/q_N (N even) and β′ = p_{N+1}/q_{N+1}
/// with φ^{N−1} < (f(Q) log Q)^{1/2} ≤ φ^N for f(Q) = (log Q)^{1/3},
/// and compare Δ(β′, β), Δ(β, β′) and 12·mean s over 𝓕_α(Q).
///
/// The cut at the irrational α itself is decided exactly through a proxy
/// convergent p_K/q_K with q_K > Q: every fraction of 𝓕(Q) lies on the
/// same side of the proxy as of α. A digit list that runs out before
/// q_K > Q is treated as the exact rational it evaluates to (so feeding
/// the expansion of a rational cut reproduces the plain rational
/// experiment, with β = β′ = α).
pub fn irrational_experiment(digits: &[u64], grid: &[u64]) -> Result<Vec<IrrationalRow>> {
    if digits.is_empty() {
        return Err(domain("need at least one partial quotient"));
    }
    let convs = convergents(digits)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &q_max in grid {
        if q_max < 2 {
            return Err(domain("grid points must be at least 2"));
        }
        let log_q = (q_max as f64).ln();
        let target = ((log_q.cbrt()) * log_q).sqrt();
        let last = convs.len() - 1;
        let (beta, beta_prime, cut) = if convs[last].1 <= q_max {
            // Digit list exhausted below the proxy threshold: the cut is
            // the exact rational the digits evaluate to.
            let exact = ReducedFraction::new(convs[last].0, convs[last].1)?;
            (exact, exact, exact)
        } else {
            // smallest even N ≥ 2 with φ^N ≥ target, clamped (in steps of
            // two, to keep β below the cut) to the available convergents
            let mut n = 2usize;
            while GOLDEN.powi(n as i32) < target {
                n += 1;
            }
            n += n % 2;
            while n + 1 > last {
                n -= 2;
            }
            let proxy = convs
                .iter()
                .find(|&&(_, qk)| qk > q_max)
                .copied()
                .expect("checked above");
            (
                ReducedFraction::new(convs[n].0, convs[n].1)?,
                ReducedFraction::new(convs[n + 1].0, convs[n + 1].1)?,
                ReducedFraction::new(proxy.0, proxy.1)?,
            )
        };

        let du = delta_cuts(beta_prime, beta, q_max);
        let dl = delta_cuts(beta, beta_prime, q_max);
        let s_tot = cut_totals(q_max, &CutInterval::lower(cut));
        let count = du.farey_count;
        let twelve_exact = rational(12, 1) * s_tot.dedekind_total()
            / rational(count as i128, 1);
        let slack_exact = rational(5 * s_tot.count as i128, count as i128);
        let sandwich_ok = dl.exact.clone() <= &twelve_exact + &slack_exact
            && twelve_exact.clone() <= &du.exact + &slack_exact;
        let twelve_mean_s = rational_to_f64(&twelve_exact);
        rows.push(IrrationalRow {
            q_max,
            beta,
            beta_prime,
            delta_upper: du.value,
            delta_lower: dl.value,
            twelve_mean_s,
            ratio_to_log: twelve_mean_s / log_q,
            slack: rational_to_f64(&slack_exact),
            sandwich_ok,
        });
    }
    Ok(rows)
}

/// Exact tail sums over 𝒮(g, Q) = {a/b reduced : 1 ≤ a, b ≤ Q,
/// a/b ≤ 1/g(Q)} with g = log.
#[derive(Debug, Clone)]
pub struct TailReport {
    pub q_max: u64,
    pub set_size: u64,
    pub farey_count: u64,
    /// Σ s(b, a) over the set.
    pub sum_s_b_a: ExactRational,
    /// Σ s(a, b) over the set.
    pub sum_s_a_b: ExactRational,
    /// (Σ s(a,b)) / ♯𝓕(Q) − (log Q)/12.
    pub normalized_residual: f64,
    /// |Σ s(b,a)| · g(Q)² / (Q² log² Q).
    pub bound_ratio: f64,
}

/// Tail experiment with g = log: both Dedekind orientations summed
/// exactly over the fractions below 1/log Q.
pub fn tail_experiment(q_max: u64) -> Result<TailReport> {
    if q_max < 3 {
        return Err(domain("tail experiment needs Q ≥ 3 so that log Q > 1"));
    }
    let g = (q_max as f64).ln();
    let mut bucket_ab = vec![0i128; q_max as usize + 1];
    let mut bucket_ba = vec![0i128; q_max as usize + 1];
    let mut set_size = 0u64;
    for b in 1..=q_max {
        let mut a_max = (b as f64 / g).floor() as u64;
        while a_max > 0 && a_max as f64 * g > b as f64 {
            a_max -= 1;
        }
        for a in 1..=a_max {
            if crate::arith::gcd_unchecked(a, b) != 1 {
                continue;
            }
            set_size += 1;
            bucket_ab[b as usize] += FracSummary::new(a, b).dedekind_numerator(a, b);
            // s(b, a) = s(b mod a, a); zero when a = 1
            if a > 1 {
                let r = b % a;
                bucket_ba[a as usize] += FracSummary::new(r, a).dedekind_numerator(r, a);
            }
        }
    }
    let sum_s_a_b = crate::farey::assemble_dedekind_buckets(&bucket_ab);
    let sum_s_b_a = crate::farey::assemble_dedekind_buckets(&bucket_ba);
    let count = SieveTables::new(q_max)?.farey_count(q_max);
    let normalized_residual =
        rational_to_f64(&(&sum_s_a_b / rational(count as i128, 1))) - g / 12.0;
    let q2 = (q_max * q_max) as f64;
    let bound_ratio = rational_to_f64(&sum_s_b_a).abs() * g * g / (q2 * g * g);
    Ok(TailReport {
        q_max,
        set_size,
        farey_count: count,
        sum_s_b_a,
        sum_s_a_b,
        normalized_residual,
        bound_ratio,
    })
}

/// One row of the harmonic-sum residual report.
#[derive(Debug, Clone)]
pub struct HarmonicRow {
    /// Which identity the row tests.
    pub id: &'static str,
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// |residual| scaled by the claimed error rate.
    pub scaled: f64,
    pub scale_desc: &'static str,
}

/// Exact-side sums of the φ- and κ-weighted harmonic identities against
/// their analytic right-hand sides, with residuals scaled by the claimed
/// error rates. Single sums run over q < x; double sums over k + q < x.
pub fn harmonic_residuals(x: u64, alpha: ReducedFraction) -> Result<Vec<HarmonicRow>> {
    if x < 10 {
        return Err(domain("harmonic residual report needs x ≥ 10"));
    }
    let sieve = SieveTables::new(x)?;
    let c = fundamental_constants();
    let xf = x as f64;
    let lx = xf.ln();
    let mut rows = Vec::new();

    let mut push = |id, lhs: f64, rhs: f64, scale: f64, desc| {
        rows.push(HarmonicRow {
            id,
            x: xf,
            lhs,
            rhs,
            residual: lhs - rhs,
            scaled: (lhs - rhs).abs() / scale,
            scale_desc: desc,
        });
    };

    // single sums over q < x
    let phi = |q: u64| sieve.phi[q as usize] as f64;
    let s1: f64 = (1..x).map(&phi).sum();
    push("phi-sum", s1, xf * xf / (2.0 * c.zeta2), xf * lx, "x log x");
    let s2 = kahan_sum((1..x).map(|q| phi(q) / q as f64));
    push("phi-over-q", s2, xf / c.zeta2, lx, "log x");
    let s3 = kahan_sum((1..x).map(|q| phi(q) / (q * q) as f64));
    push(
        "phi-over-q2",
        s3,
        (lx + c.euler_gamma - c.zeta_prime2 / c.zeta2) / c.zeta2,
        lx / xf,
        "log x / x",
    );
    let s4 = kahan_sum((1..x).map(|q| phi(q) * (q as f64).ln() / (q * q) as f64));
    push("phi-log-over-q2", s4, lx * lx / (2.0 * c.zeta2), 1.0, "1");

    // κ_α sum over q < x
    let s5 = kahan_sum((1..x).map(|q| {
        let (_, kappa) = delta_kappa(q, alpha, &sieve);
        rational_to_f64(&kappa) / (q * q) as f64
    }));
    let kappa_limit = alpha.to_f64() * f_alpha(alpha)? / c.zeta2;
    push("kappa-over-q2", s5, kappa_limit, lx / xf, "log x / x");

    // double sums over k + q < U = x; inner k ranges over 1 ..= U − q − 1
    let mut harmonic = vec![0.0f64; x as usize];
    for k in 1..x as usize {
        harmonic[k] = harmonic[k - 1] + 1.0 / k as f64;
    }
    let kmax = |q: u64| (x - q - 1) as usize;
    let d1 = kahan_sum((1..x - 1).map(|q| phi(q) / (q * q) as f64 * harmonic[kmax(q)]));
    push(
        "double-phi-kq2",
        d1,
        lx * lx / c.zeta2 + lx / c.zeta2 * (2.0 * c.euler_gamma - c.zeta_prime2 / c.zeta2),
        1.0,
        "1",
    );
    let d2 = kahan_sum((1..x - 1).map(|q| phi(q) / (q * q) as f64 * kmax(q) as f64));
    push("double-phi-q2", d2, xf * lx / c.zeta2, xf, "U");
    let d2b = kahan_sum((1..x - 1).map(|q| phi(q) / q as f64 * harmonic[kmax(q)]));
    push("double-phi-qk", d2b, xf * lx / c.zeta2, xf, "U");
    let d3 = kahan_sum((1..x - 1).map(|q| {
        let m = kmax(q) as f64;
        phi(q) / (q * q) as f64 * (m * (m + 1.0) / 2.0)
    }));
    push(
        "double-phi-k-q2",
        d3,
        xf * xf * lx / (2.0 * c.zeta2),
        xf * xf,
        "U^2",
    );
    let d3b = kahan_sum((1..x - 1).map(|q| phi(q) * harmonic[kmax(q)]));
    push(
        "double-phi-over-k",
        d3b,
        xf * xf * lx / (2.0 * c.zeta2),
        xf * xf,
        "U^2",
    );

    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn frac(n: u64, d: u64) -> ReducedFraction {
        ReducedFraction::new(n, d).unwrap()
    }

    #[test]
    fn constants_match_reference_digits() {
        let c = fundamental_constants();
        assert!((c.zeta2 - 1.644934066848).abs() < 1e-12);
        assert!((c.euler_gamma - 0.577215664902).abs() < 1e-12);
        assert!((c.zeta_prime2 - (-0.937548254316)).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_special_values() {
        let z = hurwitz_zeta2(1.0).unwrap();
        assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        let z = hurwitz_zeta2(0.5).unwrap();
        assert!((z - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-12);
        assert!(hurwitz_zeta2(0.0).is_err());
        // multiplication theorem at w = 4, against the direct double sum
        let w = 4u64;
        let sum: f64 = (1..=w)
            .map(|r| hurwitz_zeta2(r as f64 / w as f64).unwrap())
            .sum();
        assert!((sum - (w * w) as f64 * fundamental_constants().zeta2).abs() < 1e-10);
    }

    #[test]
    fn f_alpha_special_values() {
        assert_eq!(f_alpha(frac(1, 1)).unwrap(), 0.0);
        let f_half = f_alpha(frac(1, 2)).unwrap();
        assert!((f_half - std::f64::consts::PI.powi(2) / 8.0).abs() < 1e-10);
        let expect_third = (2.0 / 3.0 * hurwitz_zeta2(1.0 / 3.0).unwrap()
            + 1.0 / 3.0 * hurwitz_zeta2(2.0 / 3.0).unwrap())
            / 3.0;
        assert!((f_alpha(frac(1, 3)).unwrap() - expect_third).abs() < 1e-10);
    }

    #[test]
    fn predict_slopes() {
        let p = predict(Statistic::DedekindS, frac(1, 2), 100, Side::Lower).unwrap();
        assert!((p.main_terms / (100f64).ln() - 1.0 / 16.0).abs() < 1e-12);
        let p = predict(Statistic::DedekindS, frac(1, 3), 100, Side::Lower).unwrap();
        assert!((p.main_terms / (100f64).ln() - 2.0 / 27.0).abs() < 1e-12);
        assert!(predict(Statistic::DedekindS, frac(2, 3), 100, Side::Lower).is_err());
        assert!(predict(Statistic::Ell, frac(1, 2), 3, Side::Lower).is_err());
        assert!(predict(Statistic::SigmaPm, frac(1, 2), 100, Side::Lower).is_err());
    }

    #[test]
    fn full_interval_coefficients_agree() {
        let (c1, c2) = ell_mean_coefficients(frac(1, 1)).unwrap();
        let (z1, z2) = step_count_mean_coefficients();
        assert!((c1 - z1).abs() < 1e-12);
        assert!((c2 - z2).abs() < 1e-12);
    }

    #[test]
    fn delta_example_q3() {
        let d = delta_cuts(frac(1, 1), frac(1, 1), 3);
        assert_eq!((d.lower_total, d.complement_total, d.farey_count), (4, 4, 5));
        assert!(d.exact.is_zero());
    }

    #[test]
    fn tail_tiny_case() {
        // Q = 3: the set is {1/3, 1/2, 2/3} and both sums cancel exactly
        let t = tail_experiment(3).unwrap();
        assert_eq!(t.set_size, 3);
        assert!(t.sum_s_a_b.is_zero());
        assert!(t.sum_s_b_a.is_zero());
        assert!(tail_experiment(2).is_err());
    }

    #[test]
    fn slope_fit_recovers_line() {
        let pts: Vec<(f64, f64)> = (1..=10).map(|i| (i as f64, 3.5 * i as f64 - 2.0)).collect();
        assert!((least_squares_slope(&pts) - 3.5).abs() < 1e-12);
    }

    #[test]
    fn irrational_experiment_rational_sanity() {
        // the expansion of 1/2 reproduces the plain rational cut
        let rows = irrational_experiment(&[2], &[50]).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.beta, frac(1, 2));
        assert_eq!(row.beta_prime, frac(1, 2));
        let table = residual_table(Statistic::DedekindS, frac(1, 2), Side::Lower, &[50]).unwrap();
        assert!((row.twelve_mean_s / 12.0 - table[0].mean).abs() < 1e-12);
        assert!(row.sandwich_ok);
    }
}
