//! Exact-arithmetic laboratory for resonant frequency interactions on tori.
//!
//! The crate counts resonant lattice tuples, evaluates space-time Lebesgue
//! norms of the free Schrödinger evolution of the wave packets
//! `φ_{m,N}(x) = N^{-d/2} Σ_{k ∈ Z_N^d} e^{imk·x}` as exact tuple counts,
//! computes the first Picard iterate of the mass-critical NLS in closed form,
//! runs the Diophantine witness search for irrational tori `R²/(2πZ × 2πγZ)`
//! and builds the divisor-based constructions for the Airy equation.
//!
//! Modules, bottom up:
//!
//! * [`numtheory`]: totients, lcm, signed divisors, continued fractions and
//!   certified rational enclosures.
//! * [`lattice`]: brute force, direction based and meet-in-the-middle counters
//!   for every resonant set.
//! * [`strichartz`]: `L⁴`/`L⁶` norms over a full time period.
//! * [`picard`]: oscillatory integrals and the first Picard iterate.
//! * [`irrational`]: witnesses, phase classification and the split estimate.
//! * [`airy`]: cubic resonance counting and the lcm construction.

pub mod airy;
mod error;
pub mod irrational;
pub mod lattice;
pub mod numtheory;
pub mod picard;
pub mod strichartz;

pub use error::{Error, Result};
