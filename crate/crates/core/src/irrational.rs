//! General tori `T²_γ = R²/(2πZ × 2πγZ)`: Diophantine witnesses
//! `|q² − p²/γ²| < 1/N²`, phase classification and the split of the first
//! Picard iterate into resonant and non-resonant parts.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::{cmp_ratio, convergent_matrix, ratio_to_f64, GammaPreset, QuotientStream, RationalInterval};
use crate::picard::{cubic_coefficients, normalization, oscillatory_integral, CubicEngine, PICARD_CONSTANT};
use crate::strichartz::WavePacketSpec;
use crate::{Error, Result};

/// Largest radius accepted by [`picard_split`].
pub const SPLIT_LIMIT: u32 = 32;

/// Rational lower approximation of `π/3`: below it, `cos(Φt′) ≥ 1/2` on `[0, t]`.
const PI_OVER_THREE_LO: (i64, i64) = (1047, 1000);

/// The torus `T²_γ`, whose dual lattice is `Z × γ⁻¹Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSpec {
    gamma: GammaPreset,
}

impl TorusSpec {
    pub fn new(gamma: GammaPreset) -> Result<Self> {
        gamma.validate_positive()?;
        Ok(TorusSpec { gamma })
    }

    pub fn gamma(&self) -> &GammaPreset {
        &self.gamma
    }

    pub fn dual_lattice(&self) -> String {
        format!("Z x (1/gamma)Z, gamma = {}", self.gamma)
    }
}

/// `(p, q)` with `|D| < 1/N²` and `q > N`, where `D = q² − p²/γ²` is
/// enclosed by exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationWitness {
    pub gamma: GammaPreset,
    pub n: u32,
    pub p: BigUint,
    pub q: BigUint,
    /// Enclosure of the signed defect `q² − p²/γ²`.
    pub defect: RationalInterval,
    /// Index of the convergent `p_n/q_n`, when the witness came from one.
    pub convergent_index: Option<usize>,
}

impl ApproximationWitness {
    pub fn defect_abs_hi(&self) -> BigRational {
        self.defect.abs_hi()
    }

    /// Midpoint of the defect enclosure as a double.
    pub fn defect_f64(&self) -> f64 {
        self.defect.midpoint_f64()
    }

    pub fn q_bits(&self) -> u64 {
        self.q.bits()
    }

    fn threshold(n: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(n as u64 * n as u64))
    }

    /// `|D| < 1/N²` certified and `q > N`.
    pub fn is_valid(&self) -> bool {
        cmp_ratio(&self.defect_abs_hi(), &Self::threshold(self.n)) == Ordering::Less && self.q > BigUint::from(self.n)
    }
}

fn not_found(n: u32, depth: usize, lo: f64, hi: f64) -> Error {
    Error::WitnessNotFound {
        n,
        depth,
        best_defect_lo: lo,
        best_defect_hi: hi,
    }
}

/// Searches the convergents `p_k/q_k`, `k < depth`, of `γ` for a witness.
/// Rational `γ = a/b` gives `p = (N+1)a`, `q = (N+1)b` with defect 0.
pub fn find_dc_witness(gamma: &GammaPreset, n: u32, depth: usize) -> Result<ApproximationWitness> {
    gamma.validate_positive()?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if let Some(r) = gamma.rational_value() {
        let scale = BigInt::from(n as u64 + 1);
        let p = (r.numer() * &scale).to_biguint().expect("positive");
        let q = (r.denom() * &scale).to_biguint().expect("positive");
        return Ok(ApproximationWitness {
            gamma: gamma.clone(),
            n,
            p,
            q,
            defect: RationalInterval::from_integer(0),
            convergent_index: None,
        });
    }
    match gamma {
        GammaPreset::Sqrt(d) => sqrt_witness(gamma, *d, n, depth),
        GammaPreset::E => e_witness(gamma, n, depth),
        _ => unreachable!("remaining presets are rational"),
    }
}

/// `D = (d q² − p²)/d` is exact for `γ = √d`.
fn sqrt_witness(gamma: &GammaPreset, d: u64, n: u32, depth: usize) -> Result<ApproximationWitness> {
    let threshold = ApproximationWitness::threshold(n);
    let dd = BigInt::from(d);
    let (mut p_prev, mut p) = (BigInt::one(), gamma.integer_part());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut quotients = gamma.quotients();
    let mut best: Option<BigRational> = None;
    // |dq² − p²| is periodic along the convergents of √d, with period ending
    // at the quotient 2a₀. Two periods past q > N (for the sign) see every
    // value again, so the search can stop there.
    let period_end = 2 * gamma.integer_part();
    let mut periods = 0;
    for index in 0..depth {
        if periods >= 2 {
            break;
        }
        let defect = BigRational::new(&dd * &q * &q - &p * &p, dd.clone());
        if cmp_ratio(&defect.abs(), &threshold) == Ordering::Less && q > BigInt::from(n) {
            return Ok(ApproximationWitness {
                gamma: gamma.clone(),
                n,
                p: p.to_biguint().expect("positive"),
                q: q.to_biguint().expect("positive"),
                defect: RationalInterval::point(defect),
                convergent_index: Some(index),
            });
        }
        if best.as_ref().is_none_or(|b| cmp_ratio(&defect.abs(), b) == Ordering::Less) {
            best = Some(defect.abs());
        }
        let a = BigInt::from(quotients.next().expect("surd expansions are infinite"));
        if a == period_end && q > BigInt::from(n) {
            periods += 1;
        }
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let b = best.map(|b| ratio_to_f64(&b)).unwrap_or(f64::INFINITY);
    Err(not_found(n, depth, b, b))
}

/// For `γ = e` the quotients are known in closed form. With `s = (−1)^k`,
/// `γ_{k+1}` the complete quotient and `ρ = q_{k−1}/q_k`,
/// `q_kγ − p_k = s/(q_k(γ_{k+1} + ρ))`, hence
/// `D = 2s/(γ(γ_{k+1} + ρ)) − (q_kγ − p_k)²/γ²`. Both `γ_{k+1}` and `ρ` are
/// bracketed by short continued fractions, so only the candidate's
/// `(p_k, q_k)` need the full binary-splitting product.
fn e_witness(gamma: &GammaPreset, n: u32, depth: usize) -> Result<ApproximationWitness> {
    let threshold = ApproximationWitness::threshold(n);
    let target = 1.0 / (n as f64 * n as f64);
    let e = std::f64::consts::E;
    let quotient = |i: usize| if i == 0 { 2 } else { QuotientStream::e_quotient(i as u64) };
    let mut best = (f64::INFINITY, f64::INFINITY);
    for k in 0..depth {
        // |D| ≈ 2/(e(γ_{k+1} + ρ)), bracketed as in `e_defect`
        let a_next = quotient(k + 1) as f64;
        let after = quotient(k + 2) as f64;
        let (rho_lo, rho_hi) = if k == 0 {
            (0.0, 0.0)
        } else {
            let ak = quotient(k) as f64;
            (1.0 / (ak + 1.0), 1.0 / ak)
        };
        let lo = 2.0 / (e * (a_next + 1.0 / after + rho_hi)) * (1.0 - 1e-9);
        let hi = 2.0 / (e * (a_next + 1.0 / (after + 1.0) + rho_lo)) * (1.0 + 1e-9);
        if hi < best.1 {
            best = (lo, hi);
        }
        if lo >= target {
            continue;
        }
        let quotients: Vec<u64> = (0..=k).map(quotient).collect();
        let m = convergent_matrix(&quotients);
        let (p, q, q_prev) = (m[0].clone(), m[2].clone(), m[3].clone());
        if q <= BigUint::from(n) {
            continue;
        }
        let defect = e_defect(gamma, k, &q, &q_prev, &quotient);
        let witness = ApproximationWitness {
            gamma: gamma.clone(),
            n,
            p,
            q,
            defect,
            convergent_index: Some(k),
        };
        if cmp_ratio(&witness.defect_abs_hi(), &threshold) == Ordering::Less {
            return Ok(witness);
        }
    }
    Err(not_found(n, depth, best.0, best.1))
}

fn frac(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn e_defect(gamma: &GammaPreset, k: usize, q: &BigUint, q_prev: &BigUint, quotient: &dyn Fn(usize) -> u64) -> RationalInterval {
    let a1 = quotient(k + 1);
    let a2 = quotient(k + 2);
    // γ_{k+1} = a1 + 1/γ_{k+2}, γ_{k+2} ∈ (a2, a2 + 1)
    let complete = RationalInterval::new(
        BigRational::from_integer(a1.into()) + frac(1, a2 + 1),
        BigRational::from_integer(a1.into()) + frac(1, a2),
    );
    // ρ = q_{k−1}/q_k = 1/(a_k + q_{k−2}/q_{k−1}) ∈ [1/(a_k + 1), 1/a_k]
    let rho = if k == 0 {
        RationalInterval::from_integer(0)
    } else {
        let ak = quotient(k);
        RationalInterval::new(frac(1, ak + 1), frac(1, ak))
    };
    debug_assert!(q_prev < q || k == 0);
    let g = gamma.enclosure(96);
    let s: i64 = if k % 2 == 0 { 1 } else { -1 };
    let denom = &g * &(&complete + &rho);
    let main = denom
        .recip()
        .expect("positive denominator")
        .scale(&BigRational::from_integer((2 * s).into()));
    // 0 ≤ (q γ − p)²/γ² ≤ 1/q² ≤ 4^{1 − bits(q)}
    let shift = (2 * (q.bits() - 1)).min(512) as usize;
    let tail = BigRational::new(BigInt::one(), BigInt::one() << shift);
    RationalInterval::new(main.lo() - tail, main.hi().clone())
}

/// Which side of the gap a phase falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseRegime {
    /// `|Φ| ≤ 12`.
    Resonant,
    /// `|Φ| ≥ N² − 12`.
    NonResonant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseValue {
    pub enclosure: RationalInterval,
    pub midpoint: f64,
    pub regime: PhaseRegime,
}

/// `Φ = q²R − D·Y` from the quadratic resonance `R = |k₁|² − |k₂|² + |k₃|² − |k|²`
/// and its vertical part `Y = k₁ᵧ² − k₂ᵧ² + k₃ᵧ² − kᵧ²`.
pub fn phase_from_parts(r: i64, y: i64, witness: &ApproximationWitness) -> Result<PhaseValue> {
    let q2 = BigInt::from(witness.q.clone()).pow(2);
    let base = RationalInterval::from_integer(q2 * r);
    let enclosure = &base - &witness.defect.scale(&BigRational::from_integer(y.into()));
    let n = witness.n as i64;
    let regime = if cmp_ratio(&enclosure.abs_hi(), &BigRational::from_integer(12.into())) != Ordering::Greater {
        PhaseRegime::Resonant
    } else if cmp_ratio(&enclosure.abs_lo(), &BigRational::from_integer((n * n - 12).into())) != Ordering::Less {
        PhaseRegime::NonResonant
    } else {
        return Err(Error::Precision(format!(
            "phase enclosure [{:.6e}, {:.6e}] straddles the resonance gap",
            enclosure.lo_f64(),
            enclosure.hi_f64()
        )));
    };
    Ok(PhaseValue {
        midpoint: enclosure.midpoint_f64(),
        enclosure,
        regime,
    })
}

/// `Φ` for the interaction `k₁ − k₂ + k₃ = k` on the rescaled lattice.
pub fn phase_value(k1: [i64; 2], k2: [i64; 2], k3: [i64; 2], k: [i64; 2], witness: &ApproximationWitness) -> Result<PhaseValue> {
    if (0..2).any(|i| k1[i] - k2[i] + k3[i] != k[i]) {
        return Err(Error::InvalidArgument("k1 - k2 + k3 must equal k".into()));
    }
    let sq = |v: [i64; 2]| v[0] * v[0] + v[1] * v[1];
    let r = sq(k1) - sq(k2) + sq(k3) - sq(k);
    let y = k1[1] * k1[1] - k2[1] * k2[1] + k3[1] * k3[1] - k[1] * k[1];
    phase_from_parts(r, y, witness)
}

/// Per-anchor resonant / non-resonant decomposition of `Â[φ_N](t, (qkₓ, (p/γ)kᵧ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSplit {
    pub anchor: [i64; 2],
    /// `Â_res = c N⁻³ Σ_{res} ∫₀ᵗ e^{−iΦt′} dt′`.
    pub resonant_sum: Complex64,
    /// `Â_nonres`, evaluated only when the defect is exactly zero.
    pub nonresonant_sum: Option<Complex64>,
    /// `Â_res + Â_nonres` in the same arithmetic as the rational-torus table.
    pub coefficient: Option<Complex64>,
    pub resonant_count: u128,
    pub nonresonant_count: u128,
    /// Upper bound on `|Φ|` over resonant tuples.
    pub max_resonant_phase: f64,
    /// Lower bound on `|Φ|` over non-resonant tuples (saturates at `f64::MAX`).
    pub min_nonresonant_phase: f64,
    /// `N⁻³ · nonresonant_count · 2/min_nonresonant_phase ≥ |Â_nonres|`.
    pub nonresonant_bound: f64,
    /// `N⁻³ Σ_{R ≠ 0} min(t, 2/(q²|R| − |D|·Y_max)) ≥ |Â_nonres|`, summed tuple by tuple.
    pub nonresonant_tuple_bound: f64,
    /// `t·max_resonant_phase ≤ π/3`, so every resonant integral has real part `≥ t/2`.
    pub resonant_real_certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitReport {
    pub witness: ApproximationWitness,
    pub n: u32,
    pub t: f64,
    pub anchors: Vec<PhaseSplit>,
    /// `2π√γ (Σ_k max(0, N⁻³(t/2)|Γ(k)| − tuple_bound_k)²)^{1/2}` over `k ∈ Z_{N/2}²`.
    pub l2_lower_bound: f64,
    /// `l2_lower_bound / (t log N)`.
    pub constant: f64,
}

/// Splits the first Picard iterate on `T²_γ` at time `t` for every anchor in
/// `Z_{N/2}²` and assembles the certified `L²` lower bound.
pub fn picard_split(gamma: &GammaPreset, n: u32, t: f64, depth: usize) -> Result<SplitReport> {
    if n == 0 || n > SPLIT_LIMIT {
        return Err(Error::limit("N", n, SPLIT_LIMIT));
    }
    if !(t > 0.0 && t <= 0.1) {
        return Err(Error::InvalidArgument(format!("t = {t} outside (0, 0.1]")));
    }
    let witness = find_dc_witness(gamma, n, depth)?;
    let engine = CubicEngine::new(n);
    let half = n as i64 / 2;
    let mut anchors = Vec::new();
    for x in -half..=half {
        for y in -half..=half {
            anchors.push([x, y]);
        }
    }
    // the packet sits on (q·k₁, p·k₂); for p = q it is φ_{q,N} of the square torus
    let norm = normalization(&WavePacketSpec::new(2, 1, n)?);
    let scale = PICARD_CONSTANT * norm;
    let exact_zero = witness.defect.is_point() && witness.defect.lo().is_zero();
    let q2 = BigInt::from(witness.q.clone()).pow(2);
    let q2_f64 = q2.to_f64().unwrap_or(f64::INFINITY);
    let d_abs_hi = witness.defect_abs_hi();
    let d_mid = witness.defect_f64();

    let rational: Option<Vec<(Complex64, Complex64)>> =
        exact_zero.then(|| cubic_coefficients(&engine, &anchors, q2_f64, t));

    // every tuple has |Y| ≤ y_all, so a non-resonant one has |Φ| ≥ q²|R| − slack
    let y_all = (0..=3 * n as i64)
        .flat_map(|j| engine.hist(j).iter().map(|e| e.0.abs()))
        .max()
        .unwrap_or(0);
    let slack = ratio_to_f64(&(&d_abs_hi * BigInt::from(y_all))).next_up();
    let tuple_bounds: Vec<f64> = engine.convolve(&anchors, |r| {
        if r == 0 {
            return 0.0;
        }
        let phase = (q2_f64 * r.unsigned_abs() as f64 - slack) * (1.0 - 1e-12);
        if phase > 0.0 { (2.0 / phase).min(t) } else { t }
    });

    let pi3 = BigRational::new(PI_OVER_THREE_LO.0.into(), PI_OVER_THREE_LO.1.into());
    let t_exact = BigRational::from_float(t).ok_or_else(|| Error::InvalidArgument("t".into()))?;
    let mut splits = Vec::with_capacity(anchors.len());
    let mut lower_sq = 0.0;
    for (i, &k) in anchors.iter().enumerate() {
        let pairs = engine.resonant_pairs(k);
        let resonant_count: u128 = pairs.iter().map(|p| p.1).sum();
        let total: u128 = engine.hist(k[0]).iter().map(|e| e.1 as u128).sum::<u128>()
            * engine.hist(k[1]).iter().map(|e| e.1 as u128).sum::<u128>();
        let nonresonant_count = total - resonant_count;

        // resonant tuples: Φ = D·ωₓ with ωᵧ = −ωₓ
        let res_omega = pairs.iter().map(|p| p.0.abs()).max().unwrap_or(0);
        let max_res = &d_abs_hi * BigInt::from(res_omega);
        let resonant_real_certified = cmp_ratio(&(&max_res * &t_exact), &pi3) != Ordering::Greater;
        // non-resonant tuples: |R| ≥ 2 since every ω = −2(a − j)(c − j) is even
        let y_max = engine.hist(k[1]).iter().map(|e| e.0.abs()).max().unwrap_or(0);
        let min_nonres = BigRational::from_integer(&q2 * 2) - &d_abs_hi * BigInt::from(y_max);
        let max_resonant_phase = if max_res.is_zero() { 0.0 } else { ratio_to_f64(&max_res).next_up() };
        let min_nonresonant_phase = ratio_to_f64(&min_nonres).next_down().max(0.0);

        let raw_res = match &rational {
            Some(v) => v[i].0,
            None => pairs
                .iter()
                .map(|&(a, c)| oscillatory_integral(d_mid * a as f64, t) * c as f64)
                .sum(),
        };
        let raw_nonres = rational.as_ref().map(|v| v[i].1);
        let nonresonant_bound = if nonresonant_count == 0 {
            0.0
        } else {
            norm * nonresonant_count as f64 * 2.0 / min_nonresonant_phase
        };
        let certified = if resonant_real_certified {
            norm * (t / 2.0) * resonant_count as f64
        } else {
            0.0
        };
        let nonresonant_tuple_bound = norm * tuple_bounds[i] * (1.0 + 1e-9);
        lower_sq += (certified - nonresonant_tuple_bound).max(0.0).powi(2);
        splits.push(PhaseSplit {
            anchor: k,
            resonant_sum: scale * raw_res,
            nonresonant_sum: raw_nonres.map(|nr| scale * nr),
            coefficient: raw_nonres.map(|nr| scale * (raw_res + nr)),
            resonant_count,
            nonresonant_count,
            max_resonant_phase,
            min_nonresonant_phase,
            nonresonant_bound,
            nonresonant_tuple_bound,
            resonant_real_certified,
        });
    }
    let gamma_lo = gamma.enclosure(64).lo_f64().next_down();
    let l2_lower_bound = 2.0 * PI * gamma_lo.sqrt() * lower_sq.sqrt();
    let constant = l2_lower_bound / (t * (n as f64).ln());
    Ok(SplitReport {
        witness,
        n,
        t,
        anchors: splits,
        l2_lower_bound,
        constant,
    })
}
