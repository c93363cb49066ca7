//! The first Picard iterate `A[φ_{m,N}](t)` of the mass-critical NLS in
//! Fourier space.
//!
//! For the frequency `mk`, dropping the unimodular free-evolution factor
//! `e^{−im²|k|²t}`,
//!
//! `Â(t, mk) = c·a^{1+4/d} Σ_{tuples} ∫₀ᵗ e^{−iΦt′} dt′`, `c = −iμ`, `μ = 1`,
//!
//! where `a = N^{−d/2}` and `Φ = m²(Σ ±|k_i|² − |k|²)` over the cubic
//! (d = 2) or quintic (d = 1) interactions `Σ ±k_i = k`.

mod engine;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::lattice::QuinticTally;
use crate::strichartz::WavePacketSpec;
use crate::{Error, Result};

pub(crate) use engine::CubicEngine;
use engine::QuinticEngine;

/// `c = −iμ` with `μ = +1`.
pub const PICARD_CONSTANT: Complex64 = Complex64::new(0.0, -1.0);

/// Radius guards for full coefficient tables.
pub const PICARD_LIMIT_2D: u32 = 48;
pub const PICARD_LIMIT_1D: u32 = 32;

/// Below this `|Φ|` the closed form is replaced by its second-order series.
const SERIES_THRESHOLD: f64 = 1e-12;

/// `∫₀ᵗ e^{−iΦt′} dt′ = (1 − e^{−iΦt})/(iΦ)`, written as
/// `sin(Φt)/Φ − 2i·sin²(Φt/2)/Φ` to avoid cancellation.
pub fn oscillatory_integral(phi: f64, t: f64) -> Complex64 {
    if phi.abs() < SERIES_THRESHOLD {
        return Complex64::new(t, -phi * t * t / 2.0);
    }
    let half = (phi * t / 2.0).sin();
    Complex64::new((phi * t).sin() / phi, -2.0 * half * half / phi)
}

/// True when `m²t/(2π)` is a positive integer up to `10⁻¹²`, so every
/// non-resonant integral vanishes.
pub fn is_resonant_time(m: u32, t: f64) -> bool {
    let cycles = (m as f64).powi(2) * t / (2.0 * PI);
    cycles >= 0.5 && (cycles - cycles.round()).abs() <= 1e-12
}

/// `Â[φ](t, ·)` on its support, keyed by the actual frequency `m·k`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub spec: WavePacketSpec,
    pub time: f64,
    entries: BTreeMap<Vec<i64>, Complex64>,
}

impl CoefficientTable {
    pub fn get(&self, frequency: &[i64]) -> Option<Complex64> {
        self.entries.get(frequency).copied()
    }

    /// Coefficient at `m·k` for the lattice anchor `k`.
    pub fn at_anchor(&self, k: &[i64]) -> Option<Complex64> {
        let m = self.spec.m() as i64;
        let f: Vec<i64> = k.iter().map(|c| c * m).collect();
        self.get(&f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(2π)^{d/2} (Σ |Â|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let mass: f64 = self.entries.values().map(|c| c.norm_sqr()).sum();
        (2.0 * PI).powf(self.spec.dim() as f64 / 2.0) * mass.sqrt()
    }
}

/// `a^{1+4/d}`: `N⁻³` in 2d, `N^{−5/2}` in 1d (1 at `N = 0`).
pub(crate) fn normalization(spec: &WavePacketSpec) -> f64 {
    spec.amplitude().powi(if spec.dim() == 2 { 3 } else { 5 })
}

fn check_spec(spec: &WavePacketSpec, t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("time {t} must be finite and nonnegative")));
    }
    match spec.dim() {
        2 if spec.n() > PICARD_LIMIT_2D => Err(Error::limit("N", spec.n(), PICARD_LIMIT_2D)),
        1 if spec.n() > PICARD_LIMIT_1D => Err(Error::limit("N", spec.n(), PICARD_LIMIT_1D)),
        1 | 2 => Ok(()),
        d => Err(Error::Dimension(d)),
    }
}

fn anchors_2d(radius: i64) -> Vec<[i64; 2]> {
    let mut v = Vec::with_capacity(((2 * radius + 1) * (2 * radius + 1)) as usize);
    for x in -radius..=radius {
        for y in -radius..=radius {
            v.push([x, y]);
        }
    }
    v
}

/// Shared 2d assembly: resonant part from the histogram merge, non-resonant
/// part from the phase table. Also used by the irrational-torus split.
pub(crate) fn cubic_coefficients(engine: &CubicEngine, anchors: &[[i64; 2]], lambda: f64, t: f64) -> Vec<(Complex64, Complex64)> {
    let nonres = engine.nonresonant_sums(anchors, lambda, t);
    anchors
        .iter()
        .zip(nonres)
        .map(|(k, nr)| (engine.resonant_sum(*k, 0.0, t), nr))
        .collect()
}

/// Every coefficient of `A[φ_{m,N}](t)`, by summing the closed-form
/// oscillatory integral over all interactions.
pub fn picard_coefficients(spec: &WavePacketSpec, t: f64) -> Result<CoefficientTable> {
    check_spec(spec, t)?;
    let n = spec.n() as i64;
    let m = spec.m() as i64;
    let lambda = (m * m) as f64;
    let scale = PICARD_CONSTANT * normalization(spec);
    let mut entries = BTreeMap::new();
    if spec.dim() == 2 {
        let engine = CubicEngine::new(spec.n());
        let anchors = anchors_2d(3 * n);
        for (k, (res, nonres)) in anchors.iter().zip(cubic_coefficients(&engine, &anchors, lambda, t)) {
            entries.insert(vec![m * k[0], m * k[1]], scale * (res + nonres));
        }
    } else {
        let engine = QuinticEngine::new(spec.n())?;
        let anchors: Vec<i64> = (-5 * n..=5 * n).collect();
        let nonres = engine.nonresonant_sums(&anchors, lambda, t);
        for (&k, nr) in anchors.iter().zip(nonres) {
            let res = Complex64::new(t * engine.gamma(k) as f64, 0.0);
            entries.insert(vec![m * k], scale * (res + nr));
        }
    }
    Ok(CoefficientTable {
        spec: *spec,
        time: t,
        entries,
    })
}

/// `Σ_k |Γ(k)|²` (2d) or `Σ_k |Γ′(k)|²` (1d) over anchors with sup-norm ≤ `radius`.
fn gamma_square_sum(dim: usize, n: u32, radius: i64) -> Result<f64> {
    if dim == 2 {
        let engine = CubicEngine::new(n);
        Ok(anchors_2d(radius).iter().map(|&k| (engine.gamma(k) as f64).powi(2)).sum())
    } else {
        let tally = QuinticTally::new(n)?;
        Ok((-radius..=radius).map(|k| (tally.gamma_prime(k) as f64).powi(2)).sum())
    }
}

/// `‖A[φ_{m,N}](t)‖_{L²(T^d)}`. At times with `m²t ∈ 2πZ` the non-resonant
/// integrals vanish and the closed form `(2π)^{d/2} a^{1+4/d} t (Σ |Γ(k)|²)^{1/2}`
/// is used; otherwise the full coefficient table.
pub fn picard_l2_norm(spec: &WavePacketSpec, t: f64) -> Result<f64> {
    check_spec(spec, t)?;
    if is_resonant_time(spec.m(), t) {
        let support = if spec.dim() == 2 { 3 } else { 5 } * spec.n() as i64;
        let squares = gamma_square_sum(spec.dim(), spec.n(), support)?;
        return Ok((2.0 * PI).powf(spec.dim() as f64 / 2.0) * normalization(spec) * t * squares.sqrt());
    }
    Ok(picard_coefficients(spec, t)?.l2_norm())
}

/// `(2π)^{d/2}·a^{1+4/d}·(2π/m²)·(Σ_{k ∈ Z_{N/2}^d} |Γ(k)|²)^{1/2}`: the part of
/// `‖A[φ_{m,N}](2π/m²)‖` carried by the central anchors, hence a lower bound.
pub fn lower_bound_certificate(dim: usize, n: u32, m: u32) -> Result<f64> {
    let spec = WavePacketSpec::new(dim, m, n)?;
    let t = 2.0 * PI / (m as f64).powi(2);
    check_spec(&spec, t)?;
    let squares = gamma_square_sum(dim, n, n as i64 / 2)?;
    Ok((2.0 * PI).powf(dim as f64 / 2.0) * normalization(&spec) * t * squares.sqrt())
}
