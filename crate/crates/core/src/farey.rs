//! Enumeration of Farey fractions of order Q, cut sets 𝓕_α(Q) = 𝓕(Q) ∩ [0, α)
//! and 𝓕ᶜ_α(Q) = 𝓕(Q) ∩ (1−α, 1], and exact aggregate statistics over them.
//!
//! Enumeration walks the classical two-neighbour recurrence, so a stream
//! needs O(1) state and never divides by a gcd. Aggregation splits the cut
//! interval into a fixed number of sub-intervals with exact rational
//! endpoints and merges per-chunk totals by exact integer addition, so the
//! result is bit-identical no matter how many workers run the chunks: the
//! chunk grid depends only on the request, never on the thread count.
//!
//! Totals are kept exactly. Integer statistics (ℓ, L, Σ±) accumulate in
//! 128-bit integers; the Dedekind statistic accumulates the integer
//! numerator of 24·w·s(v/w) in a per-denominator bucket, and the exact
//! rational total Σ_w bucket[w]/(24w) is assembled once at the end.

use crate::arith::{mod_inverse, rational, ExactRational, ReducedFraction, SieveTables};
use crate::contfrac::FracSummary;
use num_traits::Zero;

/// Which side of the cut a specification selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// 𝓕(Q) ∩ [0, α)
    Lower,
    /// 𝓕(Q) ∩ (1−α, 1]
    UpperComplement,
}

/// The statistic aggregated over a cut set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// Dedekind sum s(x), exact.
    DedekindS,
    /// ℓ(x): length of the minus continued fraction expansion.
    Ell,
    /// L(x): length of the regular continued fraction expansion.
    RegularLen,
    /// Σ±(x) = Σ_odd(x) − Σ_even(x).
    SigmaPm,
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::DedekindS => "s",
            Statistic::Ell => "ell",
            Statistic::RegularLen => "L",
            Statistic::SigmaPm => "sigma",
        }
    }
}

/// A cut request: order Q, cut point α and side.
#[derive(Debug, Clone, Copy)]
pub struct FareyCutSpec {
    pub q_max: u64,
    pub alpha: ReducedFraction,
    pub side: Side,
}

/// Half-open sweep range [lo, hi) over 𝓕(Q), with an optional exclusion
/// of an exact hit at `lo` (for the open left end of complement cuts).
/// `hi` may exceed 1; the element 1/1 is then included.
#[derive(Debug, Clone, Copy)]
pub struct CutInterval {
    lo: (u128, u128),
    hi: (u128, u128),
    skip_lo_element: bool,
}

impl CutInterval {
    /// 𝓕(Q) ∩ [0, α).
    pub fn lower(alpha: ReducedFraction) -> Self {
        CutInterval {
            lo: (0, 1),
            hi: (alpha.num() as u128, alpha.den() as u128),
            skip_lo_element: false,
        }
    }

    /// 𝓕(Q) ∩ (1−α, 1].
    pub fn upper_complement(alpha: ReducedFraction) -> Self {
        let c = alpha.complement();
        CutInterval {
            lo: (c.num() as u128, c.den() as u128),
            hi: (2, 1),
            skip_lo_element: true,
        }
    }

    /// All of 𝓕(Q), endpoints included.
    pub fn full() -> Self {
        CutInterval {
            lo: (0, 1),
            hi: (2, 1),
            skip_lo_element: false,
        }
    }

    /// 𝓕(Q) ∩ [lo, hi).
    pub fn between(lo: ReducedFraction, hi: ReducedFraction) -> Self {
        CutInterval {
            lo: (lo.num() as u128, lo.den() as u128),
            hi: (hi.num() as u128, hi.den() as u128),
            skip_lo_element: false,
        }
    }
}

#[inline]
fn frac_lt(v: u64, w: u64, bound: (u128, u128)) -> bool {
    (v as u128) * bound.1 < bound.0 * (w as u128)
}

#[inline]
fn frac_eq(v: u64, w: u64, bound: (u128, u128)) -> bool {
    (v as u128) * bound.1 == bound.0 * (w as u128)
}

#[inline]
fn bound_lt(a: (u128, u128), b: (u128, u128)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

/// Successor of the element a/b in 𝓕(Q): the unique c/d with
/// bc − ad = 1 and Q − b < d ≤ Q. None for 1/1.
pub(crate) fn element_successor(a: u64, b: u64, q: u64) -> Option<(u64, u64)> {
    debug_assert!(b >= 1 && b <= q && a <= b);
    if a == b {
        return None;
    }
    if b == 1 {
        return Some((1, q)); // successor of 0/1
    }
    // d ≡ −a⁻¹ (mod b), largest such d ≤ Q
    let inv = mod_inverse(a as i64, b).expect("farey element is reduced");
    let r = (b - inv) % b;
    let d = q - (q - r) % b;
    let c = (a as u128 * d as u128 + 1) / b as u128;
    Some((c as u64, d))
}

/// Predecessor of the element a/b in 𝓕(Q). None for 0/1.
pub(crate) fn element_predecessor(a: u64, b: u64, q: u64) -> Option<(u64, u64)> {
    debug_assert!(b >= 1 && b <= q && a <= b);
    if a == 0 {
        return None;
    }
    if b == 1 {
        return Some((q - 1, q)); // predecessor of 1/1
    }
    // d ≡ a⁻¹ (mod b), largest such d ≤ Q
    let r = mod_inverse(a as i64, b).expect("farey element is reduced") % b;
    let d = q - (q - r) % b;
    let c = (a as u128 * d as u128 - 1) / b as u128;
    Some((c as u64, d))
}

/// Largest element of 𝓕(Q) that is ≤ x/y, for 0 ≤ x/y ≤ 1 (x/y need not
/// be reduced). Accelerated Stern–Brocot descent: runs of mediant steps
/// in one direction are taken in a single division.
pub(crate) fn farey_floor(x: u128, y: u128, q: u64) -> (u64, u64) {
    debug_assert!(y > 0 && x <= y && q >= 1);
    if x == y {
        return (1, 1);
    }
    let q = q as u128;
    // invariant: a/b ≤ x/y < c/d, bc − ad = 1
    let (mut a, mut b, mut c, mut d) = (0u128, 1u128, 1u128, 1u128);
    loop {
        if x * b == y * a {
            return (a as u64, b as u64);
        }
        // move the lower end up: max k with (a + kc)/(b + kd) ≤ x/y
        let k = (x * b - y * a) / (y * c - x * d);
        let k_den = (q - b) / d;
        if k > k_den {
            return ((a + k_den * c) as u64, (b + k_den * d) as u64);
        }
        a += k * c;
        b += k * d;
        if x * b == y * a {
            return (a as u64, b as u64);
        }
        // move the upper end down: max k with (c + ka)/(d + kb) > x/y
        let k = (y * c - x * d - 1) / (x * b - y * a);
        let k_den = (q - d) / b;
        if k > k_den {
            return (a as u64, b as u64);
        }
        c += k * a;
        d += k * b;
    }
}

/// Walk 𝓕(Q) over `interval`, in increasing order, invoking `visit` with
/// each reduced (v, w) exactly once.
fn sweep_range(q: u64, interval: &CutInterval, visit: &mut impl FnMut(u64, u64)) {
    let CutInterval {
        lo,
        hi,
        skip_lo_element,
    } = *interval;
    if !bound_lt(lo, hi) || lo.0 > lo.1 {
        return; // empty, or entirely above 1
    }
    let (fa, fb) = farey_floor(lo.0, lo.1, q);
    let (mut cur, mut prev) = if frac_eq(fa, fb, lo) {
        ((fa, fb), element_predecessor(fa, fb, q))
    } else {
        // fa/fb < lo ≤ 1, so a successor exists
        (
            element_successor(fa, fb, q).expect("strictly below a bound ≤ 1"),
            Some((fa, fb)),
        )
    };
    if skip_lo_element && frac_eq(cur.0, cur.1, lo) {
        match element_successor(cur.0, cur.1, q) {
            None => return,
            Some(nxt) => {
                prev = Some(cur);
                cur = nxt;
            }
        }
    }
    while frac_lt(cur.0, cur.1, hi) {
        visit(cur.0, cur.1);
        if cur == (1, 1) {
            return;
        }
        let nxt = match prev {
            // next after 0/1
            None => (1, q),
            Some((pa, pb)) => {
                let k = (q + pb) / cur.1;
                (k * cur.0 - pa, k * cur.1 - pb)
            }
        };
        prev = Some(cur);
        cur = nxt;
    }
}

/// Exact totals of all supported statistics over one sweep.
#[derive(Debug, Clone)]
pub struct SweepTotals {
    /// Number of fractions visited.
    pub count: u64,
    /// Σ ℓ(x).
    pub ell: i128,
    /// Σ L(x).
    pub regular_len: i128,
    /// Σ Σ±(x).
    pub sigma_pm: i128,
    /// bucket[w] = Σ over visited v/w of the integer 24·w·s(v/w).
    s_buckets: Vec<i128>,
}

impl SweepTotals {
    fn empty(q_max: u64) -> Self {
        SweepTotals {
            count: 0,
            ell: 0,
            regular_len: 0,
            sigma_pm: 0,
            s_buckets: vec![0; q_max as usize + 1],
        }
    }

    /// Totals of the single point v/w (used for interval surgery).
    pub fn from_point(q_max: u64, x: ReducedFraction) -> Self {
        let mut t = SweepTotals::empty(q_max);
        t.visit(x.num(), x.den());
        t
    }

    fn visit(&mut self, v: u64, w: u64) {
        self.count += 1;
        if v == w {
            // x = 1: ℓ(1) = 0 and the remaining statistics vanish by the
            // aggregate convention.
            return;
        }
        let s = FracSummary::new(v, w);
        self.ell += s.ell() as i128;
        self.regular_len += s.len as i128;
        self.sigma_pm += s.sigma_pm() as i128;
        self.s_buckets[w as usize] += s.dedekind_numerator(v, w);
    }

    fn merge(mut self, other: SweepTotals) -> SweepTotals {
        self.count += other.count;
        self.ell += other.ell;
        self.regular_len += other.regular_len;
        self.sigma_pm += other.sigma_pm;
        for (b, o) in self.s_buckets.iter_mut().zip(other.s_buckets) {
            *b += o;
        }
        self
    }

    /// Σ s(x) as an exact rational, assembled from the integer buckets.
    pub fn dedekind_total(&self) -> ExactRational {
        assemble_dedekind_buckets(&self.s_buckets)
    }

    /// Integer total of a non-Dedekind statistic.
    pub fn integer_total(&self, stat: Statistic) -> i128 {
        match stat {
            Statistic::Ell => self.ell,
            Statistic::RegularLen => self.regular_len,
            Statistic::SigmaPm => self.sigma_pm,
            Statistic::DedekindS => panic!("dedekind total is rational; use dedekind_total()"),
        }
    }
}

/// Σ_w bucket[w] / (24w) as an exact rational. The terms are combined
/// pairwise, which keeps intermediate denominators balanced instead of
/// dragging one huge running denominator through every addition.
pub(crate) fn assemble_dedekind_buckets(buckets: &[i128]) -> ExactRational {
    let mut terms: Vec<ExactRational> = buckets
        .iter()
        .enumerate()
        .filter(|(_, &b)| b != 0)
        .map(|(w, &b)| rational(b, 24 * w as i128))
        .collect();
    if terms.is_empty() {
        return ExactRational::zero();
    }
    while terms.len() > 1 {
        terms = terms
            .chunks(2)
            .map(|c| {
                if c.len() == 2 {
                    &c[0] + &c[1]
                } else {
                    c[0].clone()
                }
            })
            .collect();
    }
    terms.pop().unwrap()
}

/// Number of sub-intervals a cut is split into. Fixed, so that results
/// and chunk boundaries never depend on the worker count.
pub const SWEEP_CHUNKS: u128 = 64;

fn chunk_interval(interval: &CutInterval, i: u128) -> CutInterval {
    let (ln, ld) = interval.lo;
    let (hn, hd) = interval.hi;
    let den = ld * hd * SWEEP_CHUNKS;
    let at = |j: u128| (ln * hd * (SWEEP_CHUNKS - j) + hn * ld * j, den);
    CutInterval {
        lo: at(i),
        hi: at(i + 1),
        skip_lo_element: interval.skip_lo_element && i == 0,
    }
}

// Per-fraction Dedekind numerators are below 2w² + 10w and at most φ(w)
// of them land in bucket[w], so |bucket[w]| < 2·q_max³ + O(q_max²). The
// guard keeps every accumulator at least 2³⁵ away from i128 overflow;
// sweeps beyond it are computationally out of reach anyway.
const SWEEP_Q_LIMIT: u64 = 1 << 30;

/// Sequential sweep of a cut, chunk by chunk.
pub fn cut_totals_seq(q_max: u64, interval: &CutInterval) -> SweepTotals {
    assert!(q_max <= SWEEP_Q_LIMIT, "sweep accumulators need Q ≤ 2^30");
    (0..SWEEP_CHUNKS)
        .map(|i| {
            let mut t = SweepTotals::empty(q_max);
            sweep_range(q_max, &chunk_interval(interval, i), &mut |v, w| t.visit(v, w));
            t
        })
        .fold(SweepTotals::empty(q_max), SweepTotals::merge)
}

/// Sweep of a cut; data-parallel over the chunk grid when the `parallel`
/// feature is enabled, with exact merges either way.
#[cfg(feature = "parallel")]
pub fn cut_totals(q_max: u64, interval: &CutInterval) -> SweepTotals {
    use rayon::prelude::*;
    assert!(q_max <= SWEEP_Q_LIMIT, "sweep accumulators need Q ≤ 2^30");
    (0..SWEEP_CHUNKS as u64)
        .into_par_iter()
        .map(|i| {
            let mut t = SweepTotals::empty(q_max);
            sweep_range(q_max, &chunk_interval(interval, i as u128), &mut |v, w| {
                t.visit(v, w)
            });
            t
        })
        .reduce(|| SweepTotals::empty(q_max), SweepTotals::merge)
}

#[cfg(not(feature = "parallel"))]
pub fn cut_totals(q_max: u64, interval: &CutInterval) -> SweepTotals {
    cut_totals_seq(q_max, interval)
}

/// Ordered stream over a cut: every reduced v/w with w ≤ Q in the chosen
/// interval, in increasing order, with O(1) state.
pub struct FareyStream {
    q: u64,
    hi: (u128, u128),
    cur: Option<(u64, u64)>,
    prev: Option<(u64, u64)>,
}

impl FareyStream {
    pub fn new(q_max: u64, interval: &CutInterval) -> Self {
        assert!(q_max >= 1);
        let CutInterval {
            lo,
            hi,
            skip_lo_element,
        } = *interval;
        if !bound_lt(lo, hi) || lo.0 > lo.1 {
            return FareyStream {
                q: q_max,
                hi,
                cur: None,
                prev: None,
            };
        }
        let (fa, fb) = farey_floor(lo.0, lo.1, q_max);
        let (mut cur, mut prev) = if frac_eq(fa, fb, lo) {
            (Some((fa, fb)), element_predecessor(fa, fb, q_max))
        } else {
            (element_successor(fa, fb, q_max), Some((fa, fb)))
        };
        if skip_lo_element {
            if let Some((v, w)) = cur {
                if frac_eq(v, w, lo) {
                    prev = Some((v, w));
                    cur = element_successor(v, w, q_max);
                }
            }
        }
        FareyStream {
            q: q_max,
            hi,
            cur,
            prev,
        }
    }
}

impl Iterator for FareyStream {
    type Item = ReducedFraction;

    fn next(&mut self) -> Option<ReducedFraction> {
        let (v, w) = self.cur?;
        if !frac_lt(v, w, self.hi) {
            self.cur = None;
            return None;
        }
        let nxt = if (v, w) == (1, 1) {
            None
        } else {
            match self.prev {
                None => Some((1, self.q)),
                Some((pa, pb)) => {
                    let k = (self.q + pb) / w;
                    Some((k * v - pa, k * w - pb))
                }
            }
        };
        self.prev = Some((v, w));
        self.cur = nxt;
        Some(ReducedFraction::new(v, w).expect("stream yields reduced fractions"))
    }
}

/// Stream over the set selected by `spec`.
pub fn farey_enumerate(spec: &FareyCutSpec) -> FareyStream {
    let interval = match spec.side {
        Side::Lower => CutInterval::lower(spec.alpha),
        Side::UpperComplement => CutInterval::upper_complement(spec.alpha),
    };
    FareyStream::new(spec.q_max, &interval)
}

/// Exact total of one statistic over a cut set.
#[derive(Debug, Clone)]
pub enum StatTotal {
    Integer(i128),
    Rational(ExactRational),
}

impl StatTotal {
    pub fn to_f64(&self) -> f64 {
        match self {
            StatTotal::Integer(n) => *n as f64,
            StatTotal::Rational(r) => crate::arith::rational_to_f64(r),
        }
    }

    pub fn to_rational(&self) -> ExactRational {
        match self {
            StatTotal::Integer(n) => rational(*n, 1),
            StatTotal::Rational(r) => r.clone(),
        }
    }
}

impl std::fmt::Display for StatTotal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StatTotal::Integer(n) => write!(f, "{n}"),
            StatTotal::Rational(r) => write!(f, "{r}"),
        }
    }
}

/// Aggregate of one statistic over one cut set: exact total, mean
/// normalised by ♯𝓕(Q), and prediction slots filled in by the caller.
#[derive(Debug, Clone)]
pub struct AverageReport {
    pub q_max: u64,
    pub alpha: ReducedFraction,
    pub side: Side,
    pub statistic: Statistic,
    /// ♯𝓕(Q) = 1 + Σ_{q ≤ Q} φ(q): the normaliser of every mean.
    pub count: u64,
    /// Number of fractions in the cut set itself.
    pub cut_count: u64,
    pub total: StatTotal,
    pub mean: f64,
    pub predicted: Option<f64>,
    pub residual: Option<f64>,
}

fn report_from_totals(spec: &FareyCutSpec, stat: Statistic, totals: &SweepTotals) -> AverageReport {
    let sieve = SieveTables::new(spec.q_max).expect("q_max ≥ 1");
    let count = sieve.farey_count(spec.q_max);
    let total = match stat {
        Statistic::DedekindS => StatTotal::Rational(totals.dedekind_total()),
        other => StatTotal::Integer(totals.integer_total(other)),
    };
    let mean = match &total {
        StatTotal::Integer(n) => *n as f64 / count as f64,
        StatTotal::Rational(r) => crate::arith::rational_to_f64(&(r / rational(count as i128, 1))),
    };
    AverageReport {
        q_max: spec.q_max,
        alpha: spec.alpha,
        side: spec.side,
        statistic: stat,
        count,
        cut_count: totals.count,
        total,
        mean,
        predicted: None,
        residual: None,
    }
}

/// Exact aggregate of `stat` over the cut selected by `spec`.
pub fn aggregate(spec: &FareyCutSpec, stat: Statistic) -> AverageReport {
    assert!(spec.q_max >= 1);
    let interval = match spec.side {
        Side::Lower => CutInterval::lower(spec.alpha),
        Side::UpperComplement => CutInterval::upper_complement(spec.alpha),
    };
    let totals = cut_totals(spec.q_max, &interval);
    report_from_totals(spec, stat, &totals)
}

/// Exact aggregate over the complement cut 𝓕(Q) ∩ (1−α, 1].
pub fn complement_aggregate(q_max: u64, alpha: ReducedFraction, stat: Statistic) -> AverageReport {
    aggregate(
        &FareyCutSpec {
            q_max,
            alpha,
            side: Side::UpperComplement,
        },
        stat,
    )
}
