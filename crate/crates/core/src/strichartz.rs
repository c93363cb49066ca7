//! Space-time norms of the free evolution of `φ_{m,N}` over a full period.
//!
//! With `f(x) = Σ a_k e^{ik·x}` and `‖f‖²_{L²(T^d)} = (2π)^d Σ |a_k|²`, the
//! `2r`-th power of `‖e^{itΔ}φ_{m,N}‖_{L^{2r}(T × T^d)}` is
//! `(2π)^{1+d} a^{2r}` times the number of resonant `2r`-tuples.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::lattice::{resonant_tuple_count, FrequencyBox};
use crate::{Error, Result};

/// The data `φ_{m,N}(x) = N^{-d/2} Σ_{k ∈ Z_N^d} e^{imk·x}`.
///
/// At `N = 0` the normalization is taken as 1, so `φ_{m,0} = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WavePacketSpec {
    dim: usize,
    m: u32,
    n: u32,
}

impl WavePacketSpec {
    pub fn new(dim: usize, m: u32, n: u32) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Dimension(dim));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("spacing m must be positive".into()));
        }
        if dim == 3 && m != 1 {
            return Err(Error::InvalidArgument("the 3d packet is only defined for m = 1".into()));
        }
        Ok(WavePacketSpec { dim, m, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn frequency_box(&self) -> FrequencyBox {
        FrequencyBox::new(self.dim, self.n).expect("dimension checked")
    }

    /// `N^{-d/2}` (1 at `N = 0`).
    pub fn amplitude(&self) -> f64 {
        if self.n == 0 {
            1.0
        } else {
            (self.n as f64).powf(-(self.dim as f64) / 2.0)
        }
    }

    /// `Σ |a_k|² = (2N+1)^d / N^d`, exactly.
    pub fn coefficient_mass(&self) -> BigRational {
        let card = BigInt::from(2 * self.n as u64 + 1).pow(self.dim as u32);
        if self.n == 0 {
            return BigRational::from_integer(card);
        }
        BigRational::new(card, BigInt::from(self.n).pow(self.dim as u32))
    }

    /// `‖φ_{m,N}‖²_{L²} = (2π)^d (2N+1)^d / N^d`, independent of `m`.
    pub fn l2_norm_squared(&self) -> f64 {
        let mass = self.coefficient_mass();
        (2.0 * PI).powi(self.dim as i32) * crate::numtheory::ratio_to_f64(&mass)
    }
}

impl fmt::Display for WavePacketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi(d={}, m={}, N={})", self.dim, self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormExponent {
    /// `L⁴(T × T²)`.
    L4T2,
    /// `L⁶(T × T)`.
    L6T1,
    /// `L⁴(T × T³)`.
    L4T3,
}

impl NormExponent {
    pub fn name(&self) -> &'static str {
        match self {
            NormExponent::L4T2 => "L4_T2",
            NormExponent::L6T1 => "L6_T1",
            NormExponent::L4T3 => "L4_T3",
        }
    }

    fn dim(&self) -> usize {
        match self {
            NormExponent::L4T2 => 2,
            NormExponent::L6T1 => 1,
            NormExponent::L4T3 => 3,
        }
    }

    fn arity(&self) -> usize {
        match self {
            NormExponent::L6T1 => 3,
            _ => 2,
        }
    }

    fn limit(&self) -> u32 {
        match self {
            NormExponent::L4T2 => 64,
            NormExponent::L6T1 => 200,
            NormExponent::L4T3 => 16,
        }
    }
}

impl fmt::Display for NormExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormReport {
    pub exponent: NormExponent,
    pub n: u32,
    pub m: u32,
    pub resonant_tuple_count: u128,
    /// The norm raised to the power of the exponent.
    pub norm_powered: f64,
    /// `norm_powered / log N`; absent for `N ≤ 1`.
    pub ratio_to_log: Option<f64>,
}

impl NormReport {
    /// `norm_powered / N`, the quantity bounded in the 3d check.
    pub fn norm_over_n(&self) -> Option<f64> {
        (self.n > 0).then(|| self.norm_powered / self.n as f64)
    }
}

fn norm_report(exponent: NormExponent, n: u32, m: u32) -> Result<NormReport> {
    if n > exponent.limit() {
        return Err(Error::limit("N", n, exponent.limit()));
    }
    let spec = WavePacketSpec::new(exponent.dim(), m, n)?;
    let count = resonant_tuple_count(spec.frequency_box(), exponent.arity())?;
    let amp_power = spec.amplitude().powi(2 * exponent.arity() as i32);
    let norm_powered = (2.0 * PI).powi(1 + exponent.dim() as i32) * amp_power * count as f64;
    let ratio_to_log = (n > 1).then(|| norm_powered / (n as f64).ln());
    Ok(NormReport {
        exponent,
        n,
        m,
        resonant_tuple_count: count,
        norm_powered,
        ratio_to_log,
    })
}

/// `‖e^{itΔ}φ_{m,N}‖⁴_{L⁴(T×T²)} = (2π)³ N⁻⁴ · #{resonant quadruples}`.
///
/// Full-period integration sends every frequency `m·k` and phase `m²|k|²`
/// through an injective rescaling, so the count does not depend on `m`.
pub fn l4_norm_2d(n: u32, m: u32) -> Result<NormReport> {
    norm_report(NormExponent::L4T2, n, m)
}

/// `‖e^{it∂ₓ²}φ_{m,N}‖⁶_{L⁶(T×T)} = (2π)² N⁻³ · #{resonant sextuples}`.
pub fn l6_norm_1d(n: u32, m: u32) -> Result<NormReport> {
    norm_report(NormExponent::L6T1, n, m)
}

/// `‖e^{itΔ}φ_{1,N}‖⁴_{L⁴(T×T³)} = (2π)⁴ N⁻⁶ Σ_{k₄} |Γ″(k₄)|`.
pub fn l4_norm_3d(n: u32) -> Result<NormReport> {
    norm_report(NormExponent::L4T3, n, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Resonant tuples of the `m`-scaled frequencies, enumerated directly.
    fn brute(dim: usize, n: i64, m: i64, arity: usize) -> u128 {
        let pts = FrequencyBox::new(dim, n as u32).unwrap().points();
        let scaled: Vec<[i64; 3]> = pts.iter().map(|p| [m * p[0], m * p[1], m * p[2]]).collect();
        let key = |idx: &[usize]| {
            let mut lin = [0i64; 3];
            let mut quad = 0;
            for &i in idx {
                for c in 0..3 {
                    lin[c] += scaled[i][c];
                    quad += scaled[i][c] * scaled[i][c];
                }
            }
            (lin, quad)
        };
        let mut halves = std::collections::HashMap::new();
        let len = scaled.len();
        let mut idx = vec![0usize; arity];
        loop {
            *halves.entry(key(&idx)).or_insert(0u128) += 1;
            let mut pos = 0;
            while pos < arity {
                idx[pos] += 1;
                if idx[pos] < len {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == arity {
                break;
            }
        }
        halves.values().map(|c| c * c).sum()
    }

    #[test]
    fn trivial_sizes() {
        for r in [l4_norm_2d(0, 1), l6_norm_1d(0, 1), l4_norm_3d(0)] {
            let r = r.unwrap();
            assert_eq!(r.resonant_tuple_count, 1);
            assert!(r.ratio_to_log.is_none());
        }
        let r = l4_norm_2d(1, 1).unwrap();
        assert_eq!(r.resonant_tuple_count, brute(2, 1, 1, 2));
        let expect = (2.0 * PI).powi(3) * r.resonant_tuple_count as f64;
        assert!((r.norm_powered - expect).abs() <= 1e-12 * expect);
    }

    #[test]
    fn counts_match_brute_force_for_every_m() {
        for n in 0..=5u32 {
            for m in 1..=3u32 {
                assert_eq!(l4_norm_2d(n, m).unwrap().resonant_tuple_count, brute(2, n as i64, m as i64, 2));
                assert_eq!(l6_norm_1d(n, m).unwrap().resonant_tuple_count, brute(1, n as i64, m as i64, 3));
            }
        }
        for n in 0..=2u32 {
            assert_eq!(l4_norm_3d(n).unwrap().resonant_tuple_count, brute(3, n as i64, 1, 2));
        }
    }

    #[test]
    fn parseval_mass() {
        for dim in 1..=3usize {
            for n in 0..=8u32 {
                let m = if dim == 3 { 1 } else { 2 };
                let spec = WavePacketSpec::new(dim, m, n).unwrap();
                let amp2 = if n == 0 {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::new(1.into(), BigInt::from(n).pow(dim as u32))
                };
                let mut mass = BigRational::from_integer(0.into());
                for _ in spec.frequency_box().points() {
                    mass += &amp2;
                }
                assert_eq!(spec.coefficient_mass(), mass);
                let expect = (2.0 * PI).powi(dim as i32) * ((2 * n + 1) as f64).powi(dim as i32)
                    / if n == 0 { 1.0 } else { (n as f64).powi(dim as i32) };
                assert!((spec.l2_norm_squared() - expect).abs() < 1e-12 * expect);
            }
        }
    }

    #[test]
    fn guards() {
        assert!(l4_norm_2d(65, 1).unwrap_err().is_budget());
        assert!(l6_norm_1d(201, 1).unwrap_err().is_budget());
        assert!(l4_norm_3d(17).unwrap_err().is_budget());
        assert!(WavePacketSpec::new(3, 2, 4).is_err());
        assert!(WavePacketSpec::new(2, 0, 4).is_err());
    }
}
