//! Elementary number theory over machine and arbitrary-precision integers.

mod arith;
mod continued;
mod divisors;
mod gamma;
mod interval;
mod totient;

pub use arith::{ext_gcd, floor_div, ceil_div, gcd_i64, isqrt_u128, lcm_log_bound, lcm_range, prime_count, LcmLogBound};
pub use continued::{continued_fraction, convergent_matrix, ContinuedFractionExpansion};
pub use divisors::{factorize, factorize_u64, signed_divisors, FactorBudget, SignedDivisorList};
pub use gamma::{GammaPreset, QuotientStream};
pub use interval::RationalInterval;
pub(crate) use arith::exact_ln;
pub(crate) use divisors::expand_divisors;
pub(crate) use interval::{cmp_ratio, ratio_to_f64};
pub use totient::{totient_sum_ratio, TotientSum, TotientTable, TOTIENT_LIMIT};

/// Exact rational carrier (lowest terms, positive denominator).
pub type ExactRational = num_rational::BigRational;

/// `6/π²`, the limit of `(1/log N) Σ_{p≤N} φ(p)/p²`.
pub const SIX_OVER_PI_SQUARED: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
