//! Regular and minus (by-excess) continued fraction expansions, their
//! length and partial-quotient statistics, and the closed-form evaluation
//! of Dedekind sums from the regular expansion.
//!
//! Conventions. A rational x ∈ [0,1) has a unique regular expansion
//! [0; a₁, …, aₙ] once the final digit is required to satisfy aₙ ≠ 1; the
//! floor-based Euclid loop produces exactly that form, and we write
//! L(x) = n for its length. The by-excess algorithm produces the minus
//! expansion x = 1 − 1/(b₁ − 1/(b₂ − … − 1/bₘ)) with every bᵢ ≥ 2 and
//! length ℓ(x) = m; the empty expansion encodes x = 1. For aggregate sums
//! the conventions ℓ(0) = L(0) = 0 make both lengths total functions on
//! [0, 1].

use num_traits::One;

use crate::arith::{rational, ExactRational, ReducedFraction};
use crate::error::{domain, Result};

/// Regular continued fraction digits [0; a₁, …, aₙ] of a rational in
/// [0, 1); empty for 0. The final digit is never 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularCF {
    pub digits: Vec<u64>,
}

impl RegularCF {
    /// The number of partial quotients, written L(x).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Minus continued fraction digits ⟨1; b₁, …, bₘ⟩, all bᵢ ≥ 2; empty
/// encodes x = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinusCF {
    pub digits: Vec<u64>,
}

impl MinusCF {
    /// The number of partial quotients, written ℓ(x).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Partial-quotient statistics of the regular expansion of x ∈ (0, 1):
/// Σ_odd, Σ_even, their difference Σ±, the length L(x) and the correction
/// term ε(x) = Σ_odd(x) − ℓ(x) ∈ {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CFStats {
    pub sigma_odd: u64,
    pub sigma_even: u64,
    pub sigma_pm: i64,
    pub len: u32,
    pub eps: u8,
}

/// One-pass summary of the regular expansion of v/w (reduced, v < w or
/// v/w = 0/1), carrying everything the bulk statistics need: no digit
/// vector is materialised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FracSummary {
    /// L(x): number of regular partial quotients.
    pub len: u32,
    /// Sum of odd-indexed partial quotients a₁ + a₃ + …
    pub sigma_odd: u64,
    /// Sum of even-indexed partial quotients a₂ + a₄ + …
    pub sigma_even: u64,
    /// Denominator of the previous convergent, i.e. the continuant
    /// K(a₁, …, aₙ₋₁); the reversed evaluation [0; aₙ, …, a₁] equals
    /// prev_den / w by the continuant mirror symmetry.
    pub prev_den: u64,
}

impl FracSummary {
    /// Single Euclid pass over the reduced fraction v/w.
    pub fn new(v: u64, w: u64) -> FracSummary {
        debug_assert!(w >= 1 && v < w || (v == 0 && w == 1));
        let mut num = v;
        let mut den = w;
        let mut len = 0u32;
        let mut sums = [0u64, 0u64]; // [even-index, odd-index], 1-based digits
        let mut q_prev = 0u64; // q_{i-2}
        let mut q_cur = 1u64; // q_{i-1}
        while num != 0 {
            let a = den / num;
            let r = den % num;
            len += 1;
            sums[(len & 1) as usize] += a;
            let q_next = a * q_cur + q_prev;
            q_prev = q_cur;
            q_cur = q_next;
            den = num;
            num = r;
        }
        debug_assert!(len == 0 || q_cur == w);
        FracSummary {
            len,
            sigma_odd: sums[1],
            sigma_even: sums[0],
            prev_den: if len == 0 { 0 } else { q_prev },
        }
    }

    pub fn sigma_pm(&self) -> i64 {
        self.sigma_odd as i64 - self.sigma_even as i64
    }

    /// ε(x) = Σ_odd(x) − ℓ(x); under the aₙ ≠ 1 convention this is the
    /// parity of L(x).
    pub fn eps(&self) -> u8 {
        (self.len & 1) as u8
    }

    /// ℓ(x): length of the minus expansion, recovered from the regular
    /// one without running the by-excess algorithm.
    pub fn ell(&self) -> u64 {
        self.sigma_odd - self.eps() as u64
    }

    /// Integer c with s(v/w) = c / (24 w), from the closed form
    /// s(x) = ((−1)ⁿ − 1)/8 + (x − (−1)ⁿ [0; aₙ, …, a₁] + Σ±(x)) / 12.
    pub fn dedekind_numerator(&self, v: u64, w: u64) -> i128 {
        let sign: i128 = if self.len.is_multiple_of(2) { 1 } else { -1 };
        let w = w as i128;
        3 * w * (sign - 1) + 2 * (v as i128 - sign * self.prev_den as i128)
            + 2 * w * self.sigma_pm() as i128
    }
}

/// Regular continued fraction of x ∈ [0, 1) with the aₙ ≠ 1 convention.
pub fn regular_cf(x: ReducedFraction) -> Result<RegularCF> {
    if x.is_one() {
        return Err(domain("regular expansion is only defined on [0, 1)"));
    }
    let mut num = x.num();
    let mut den = x.den();
    let mut digits = Vec::new();
    while num != 0 {
        digits.push(den / num);
        (num, den) = (den % num, num);
    }
    debug_assert!(digits.last() != Some(&1));
    Ok(RegularCF { digits })
}

/// Exact value of [0; d₁, …, dₙ], or of the reversed list [0; dₙ, …, d₁]
/// when `reversed` is set. The empty list evaluates to 0.
pub fn eval_regular_cf(digits: &[u64], reversed: bool) -> Result<ExactRational> {
    if digits.contains(&0) {
        return Err(domain("regular partial quotients must be positive"));
    }
    let fold = |acc: ExactRational, &d: &u64| -> ExactRational {
        (rational(d as i128, 1) + acc).recip()
    };
    let zero = rational(0, 1);
    let value = if reversed {
        digits.iter().fold(zero, fold)
    } else {
        digits.iter().rev().fold(zero, fold)
    };
    Ok(value)
}

/// Minus (by-excess) continued fraction of x ∈ (0, 1]: repeatedly take
/// ceilings, bᵢ = ⌈yᵢ⌉ with y₁ = w/(w−v) and y_{i+1} = 1/(bᵢ − yᵢ),
/// stopping when yᵢ is an integer. x = 1 yields the empty expansion.
pub fn minus_cf(x: ReducedFraction) -> Result<MinusCF> {
    if x.is_zero() {
        return Err(domain("minus expansion is only defined on (0, 1]"));
    }
    let mut digits = Vec::new();
    // y = num/den, starting from w/(w−v); den strictly decreases.
    let mut num = x.den();
    let mut den = x.den() - x.num();
    while den != 0 {
        if num.is_multiple_of(den) {
            digits.push(num / den);
            break;
        }
        let b = num / den + 1;
        digits.push(b);
        (num, den) = (den, b * den - num);
    }
    debug_assert!(digits.iter().all(|&b| b >= 2));
    Ok(MinusCF { digits })
}

/// Exact value 1 − 1/(b₁ − 1/(… − 1/bₘ)) of a minus digit list; the
/// empty list evaluates to 1.
pub fn eval_minus_cf(digits: &[u64]) -> Result<ExactRational> {
    if digits.iter().any(|&d| d < 2) {
        return Err(domain("minus partial quotients must be at least 2"));
    }
    let mut tail: Option<ExactRational> = None;
    for &b in digits.iter().rev() {
        let b = rational(b as i128, 1);
        tail = Some(match tail {
            None => b,
            Some(t) => b - t.recip(),
        });
    }
    Ok(match tail {
        None => ExactRational::one(),
        Some(t) => ExactRational::one() - t.recip(),
    })
}

/// ℓ(x) for x ∈ (0, 1], in time proportional to the regular expansion
/// length: ℓ(x) = Σ_odd(x) − ε(x) with ε the parity of L(x).
pub fn ell_length(x: ReducedFraction) -> Result<u64> {
    if x.is_zero() {
        return Err(domain("ℓ is only defined on (0, 1]"));
    }
    if x.is_one() {
        return Ok(0);
    }
    Ok(FracSummary::new(x.num(), x.den()).ell())
}

/// Partial-quotient statistics of x ∈ (0, 1). Asserts the defining
/// relations ε(x) = Σ_odd(x) − ℓ(x) ∈ {0, 1} and ℓ(1−x) = Σ_even(x) + ε(x).
pub fn cf_statistics(x: ReducedFraction) -> Result<CFStats> {
    if x.is_zero() || x.is_one() {
        return Err(domain("statistics are only defined on (0, 1)"));
    }
    let s = FracSummary::new(x.num(), x.den());
    let eps = s.sigma_odd - s.ell();
    assert!(eps <= 1, "ε(x) outside {{0, 1}} for x = {x}");
    let ell_rev = ell_length(x.complement())?;
    assert_eq!(
        ell_rev,
        s.sigma_even + eps,
        "ℓ(1−x) ≠ Σ_even(x) + ε(x) for x = {x}"
    );
    Ok(CFStats {
        sigma_odd: s.sigma_odd,
        sigma_even: s.sigma_even,
        sigma_pm: s.sigma_pm(),
        len: s.len,
        eps: eps as u8,
    })
}

/// Dedekind sum s(x) of x ∈ [0, 1) by the continued-fraction closed form,
/// exactly; s(0) = 0.
pub fn hickerson_sum(x: ReducedFraction) -> Result<ExactRational> {
    if x.is_one() {
        return Err(domain("closed form expects x in [0, 1)"));
    }
    let s = FracSummary::new(x.num(), x.den());
    Ok(rational(
        s.dedekind_numerator(x.num(), x.den()),
        24 * x.den() as i128,
    ))
}
