//! A desk-scale laboratory for exact experiments with Dedekind sums,
//! regular and by-excess continued fractions, and Farey-cut averages.
//!
//! The crate computes everything it can exactly — integer counts, rational
//! Dedekind sums, identity checks — and reserves floating point for the
//! analytic constants and asymptotic predictions that are compared against
//! those exact totals.
//!
//! Organisation:
//! - [`arith`]: gcd, least-positive modular inverses, linear sieves,
//!   arbitrary-precision rationals.
//! - [`contfrac`]: regular and minus continued fractions, length and
//!   partial-quotient statistics, Dedekind sums from digit data.
//! - [`dedekind`]: the sawtooth oracle and the reciprocity recursion.
//! - [`farey`]: cut-set enumeration and exact data-parallel aggregation.
//! - [`counting`]: solution counters for the Diophantine systems behind
//!   the step-count asymptotics, and the exact lemma-level identities.
//! - [`asymptotics`]: high-precision constants, two-term predictions and
//!   residual experiments.
//!
//! The `parallel` feature (on by default) runs the bulk sweeps on a rayon
//! pool; without it every code path falls back to the equivalent
//! sequential sweep with bit-identical results.

pub mod arith;
pub mod asymptotics;
pub mod contfrac;
pub mod counting;
pub mod dedekind;
pub mod error;
pub mod farey;

pub use arith::{gcd, mod_inverse, ExactRational, ReducedFraction, SieveTables};
pub use asymptotics::{
    delta_cuts, f_alpha, fundamental_constants, harmonic_residuals, hurwitz_zeta2,
    irrational_experiment, predict, residual_table, tail_experiment, ConstantSet, Prediction,
    ResidualRow, TailReport,
};
pub use contfrac::{
    cf_statistics, ell_length, eval_minus_cf, eval_regular_cf, hickerson_sum, minus_cf,
    regular_cf, CFStats, FracSummary, MinusCF, RegularCF,
};
pub use counting::{
    count_n, count_r, count_r_cases, count_t, delta_kappa, inversion_equiv, moebius_cut_identity,
    pomi_deviation, CaseSplit, CountMethod, InversionCheck, PomiReport, PomiTail, SystemCount,
};
pub use dedekind::{dedekind_fast, dedekind_naive};
pub use error::{Error, Result};
pub use farey::{
    aggregate, complement_aggregate, farey_enumerate, AverageReport, CutInterval, FareyCutSpec,
    FareyStream, Side, StatTotal, Statistic, SweepTotals,
};
