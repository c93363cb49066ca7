//! Ordered triples `k₁ + k₂ + k₃ = k`, `k₁³ + k₂³ + k₃³ = n` in `[−N, N]³`.
//!
//! With `a_j = k − k_j` one has `a₁ + a₂ + a₃ = 2k` and
//! `a₁a₂a₃ = (k³ − n)/3 = P`, so every member comes from a signed divisor
//! `a₁ | P` and a root pair of `x² − (2k − a₁)x + P/a₁`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::numtheory::{cmp_ratio, exact_ln, expand_divisors, factorize, lcm_log_bound, FactorBudget, LcmLogBound};
use crate::{Error, Result};

/// Largest box radius for the brute-force route.
pub const BRUTE_LIMIT: u32 = 10_000;
/// Largest `m` accepted by [`build_airy_witness`].
pub const WITNESS_LIMIT: u32 = 200;
/// Largest radius accepted by [`conditional_l6_scan`].
pub const SCAN_LIMIT: u32 = 200;
/// Divisor lists longer than this are replaced by a scan of the window `[k − N, k + N]`.
const DIVISOR_LIST_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AiryAnchor {
    n: BigInt,
    k: BigInt,
    radius: u32,
}

impl AiryAnchor {
    pub fn new(n: impl Into<BigInt>, k: impl Into<BigInt>, radius: u32) -> Result<Self> {
        if radius == 0 {
            return Err(Error::InvalidArgument("box radius must be positive".into()));
        }
        Ok(AiryAnchor {
            n: n.into(),
            k: k.into(),
            radius,
        })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// `(k³ − n)/3`, or `None` when `3 ∤ k³ − n`.
    pub fn product(&self) -> Option<BigInt> {
        let diff = self.k.pow(3) - &self.n;
        let (q, r) = diff.div_rem(&BigInt::from(3));
        r.is_zero().then_some(q)
    }

    fn in_box(&self, x: &BigInt) -> bool {
        x.abs() <= BigInt::from(self.radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryMethod {
    Brute,
    Divisor,
}

impl AiryMethod {
    pub fn name(self) -> &'static str {
        match self {
            AiryMethod::Brute => "brute",
            AiryMethod::Divisor => "divisor",
        }
    }
}

impl FromStr for AiryMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(AiryMethod::Brute),
            "divisor" => Ok(AiryMethod::Divisor),
            other => Err(Error::InvalidArgument(format!("unknown Airy method `{other}`"))),
        }
    }
}

pub type Triple = [BigInt; 3];

/// Every ordered member of `Γ_Airy(n, k)`, sorted.
pub fn airy_members(anchor: &AiryAnchor, method: AiryMethod, budget: FactorBudget) -> Result<Vec<Triple>> {
    let mut out = match method {
        AiryMethod::Brute => brute_members(anchor)?,
        AiryMethod::Divisor => divisor_members(anchor, budget)?,
    };
    out.sort();
    Ok(out)
}

/// `#Γ_Airy(n, k)` over ordered triples.
pub fn count_airy(anchor: &AiryAnchor, method: AiryMethod, budget: FactorBudget) -> Result<u128> {
    Ok(airy_members(anchor, method, budget)?.len() as u128)
}

fn brute_members(anchor: &AiryAnchor) -> Result<Vec<Triple>> {
    if anchor.radius > BRUTE_LIMIT {
        return Err(Error::limit("box radius", anchor.radius, BRUTE_LIMIT));
    }
    let n = anchor.radius as i128;
    let (Some(k), Some(target)) = (anchor.k.to_i128(), anchor.n.to_i128()) else {
        return Ok(Vec::new());
    };
    if k.abs() > 3 * n {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<Triple>> = (-n..=n)
        .into_par_iter()
        .map(|k1| {
            let mut row = Vec::new();
            for k2 in (k - k1 - n).max(-n)..=(k - k1 + n).min(n) {
                let k3 = k - k1 - k2;
                if k1.pow(3) + k2.pow(3) + k3.pow(3) == target {
                    row.push([k1.into(), k2.into(), k3.into()]);
                }
            }
            row
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

fn divisor_members(anchor: &AiryAnchor, budget: FactorBudget) -> Result<Vec<Triple>> {
    let Some(p) = anchor.product() else {
        return Ok(Vec::new());
    };
    let k = &anchor.k;
    if p.is_zero() {
        // some k_j = k, and the other two then cancel
        if !anchor.in_box(k) {
            return Ok(Vec::new());
        }
        let n = anchor.radius as i64;
        let mut set = BTreeSet::new();
        for a in -n..=n {
            let (a, b) = (BigInt::from(a), BigInt::from(-a));
            set.insert([k.clone(), a.clone(), b.clone()]);
            set.insert([a.clone(), k.clone(), b.clone()]);
            set.insert([a, b, k.clone()]);
        }
        return Ok(set.into_iter().collect());
    }
    let window = 2 * anchor.radius as u128 + 1;
    let first: Vec<BigInt> = match first_divisors(&p, window, budget) {
        Ok(Some(list)) => list,
        Ok(None) => window_divisors(anchor, &p),
        Err(Error::FactorizationBudget { .. }) if window <= DIVISOR_LIST_LIMIT => window_divisors(anchor, &p),
        Err(e) => return Err(e),
    };
    let two_k = k * 2;
    let mut out = Vec::new();
    for d1 in first {
        let k1 = k - &d1;
        if !anchor.in_box(&k1) {
            continue;
        }
        let s: BigInt = &two_k - &d1;
        let q = &p / &d1;
        let disc: BigInt = &s * &s - &q * 4;
        if disc.is_negative() {
            continue;
        }
        let r: BigInt = Roots::sqrt(&disc);
        if &r * &r != disc || Integer::is_odd(&(&s + &r)) {
            continue;
        }
        let mut roots = vec![(&s + &r) / 2];
        if !r.is_zero() {
            roots.push((&s - &r) / 2);
        }
        for d2 in roots {
            let d3 = &s - &d2;
            let (k2, k3) = (k - &d2, k - &d3);
            if anchor.in_box(&k2) && anchor.in_box(&k3) {
                out.push([k1.clone(), k2, k3]);
            }
        }
    }
    Ok(out)
}

/// All signed divisors of `p`, or `None` when the list would outgrow the window scan.
fn first_divisors(p: &BigInt, window: u128, budget: FactorBudget) -> Result<Option<Vec<BigInt>>> {
    let factors = factorize(p.magnitude(), budget)?;
    let count = factors
        .iter()
        .try_fold(2u128, |acc, (_, e)| acc.checked_mul(*e as u128 + 1))
        .unwrap_or(u128::MAX);
    if count > DIVISOR_LIST_LIMIT.max(window) {
        return Ok(None);
    }
    let positive = expand_divisors(&factors);
    Ok(Some(
        positive
            .into_iter()
            .flat_map(|d| {
                let d = BigInt::from(d);
                [-d.clone(), d]
            })
            .collect(),
    ))
}

/// Divisors `a₁ = k − k₁` of `p` with `k₁` in the box, by direct trial.
fn window_divisors(anchor: &AiryAnchor, p: &BigInt) -> Vec<BigInt> {
    let n = anchor.radius as i64;
    (-n..=n)
        .map(|k1| &anchor.k - k1)
        .filter(|d| !d.is_zero() && (p % d).is_zero())
        .collect()
}

/// The witness family for `Γ_Airy(3M³, 3M)`, `M = lcm(1, …, m+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AiryWitness {
    pub m: u32,
    pub lcm: BigUint,
    pub k: BigInt,
    pub n: BigInt,
    /// `triples[x − 1]` is the member built from `x`.
    pub triples: Vec<Triple>,
    /// `max |entry|`, the smallest box holding every triple.
    pub n_min: BigUint,
    pub lcm_bound: LcmLogBound,
}

impl AiryWitness {
    pub fn unordered_count(&self) -> usize {
        self.triples.len()
    }

    pub fn ordered_count(&self) -> u128 {
        self.triples.iter().map(|t| permutation_count(t) as u128).sum()
    }

    /// `m / log N_min`.
    pub fn growth_ratio(&self) -> f64 {
        self.m as f64 / exact_ln(&self.n_min).unwrap_or(f64::NAN)
    }

    pub fn anchor(&self) -> Result<AiryAnchor> {
        let radius = self
            .n_min
            .to_u32()
            .ok_or_else(|| Error::limit("witness box radius", u128::MAX, u32::MAX))?;
        AiryAnchor::new(self.n.clone(), self.k.clone(), radius)
    }
}

/// Distinct orderings of a triple.
pub fn permutation_count(t: &Triple) -> u32 {
    match (t[0] == t[1], t[1] == t[2], t[0] == t[2]) {
        (true, true, _) => 1,
        (false, false, false) => 6,
        _ => 3,
    }
}

fn canonical(t: &Triple) -> Triple {
    let mut s = t.clone();
    s.sort();
    s
}

/// Builds and verifies the `m` witness triples. Entry `x` is
/// `((3 − 2(x+1)²/x)M, (3 + 2x²/(x+1))M, (3 + 2/(x(x+1)))M)`.
pub fn build_airy_witness(m: u32) -> Result<AiryWitness> {
    if m == 0 || m > WITNESS_LIMIT {
        return Err(Error::limit("m", m, WITNESS_LIMIT));
    }
    let lcm_bound = lcm_log_bound(m);
    let lcm = lcm_bound.lcm.clone();
    let big_m = BigInt::from(lcm.clone());
    let k: BigInt = &big_m * 3;
    let n = big_m.pow(3) * 3;
    let exact = |num: BigInt, den: &BigInt| -> Result<BigInt> {
        let (q, r) = num.div_rem(den);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidArgument(format!("witness entry {num}/{den} is not integral")))
        }
    };
    let mut triples = Vec::with_capacity(m as usize);
    let mut seen = BTreeSet::new();
    for x in 1..=m as u64 {
        let (xb, x1) = (BigInt::from(x), BigInt::from(x + 1));
        // the fractions (x+1)²/x, x²/(x+1) and 1/(x(x+1)) are in lowest terms
        if !x1.pow(2).gcd(&xb).is_one() || !xb.pow(2).gcd(&x1).is_one() {
            return Err(Error::InvalidArgument(format!("fractions at x = {x} are not reduced")));
        }
        let t: Triple = [
            &big_m * 3 - exact(x1.pow(2) * &big_m * 2, &xb)?,
            &big_m * 3 + exact(xb.pow(2) * &big_m * 2, &x1)?,
            &big_m * 3 + exact(&big_m * 2, &(&xb * &x1))?,
        ];
        let sum: BigInt = t.iter().sum();
        let cubes: BigInt = t.iter().map(|v| v.pow(3)).sum();
        let identity = k.pow(3) - &n == t.iter().fold(BigInt::from(3), |acc, v| acc * (&k - v));
        if sum != k || cubes != n || !identity {
            return Err(Error::InvalidArgument(format!("witness triple at x = {x} fails verification")));
        }
        if !seen.insert(canonical(&t)) {
            return Err(Error::InvalidArgument(format!("witness triple at x = {x} repeats")));
        }
        triples.push(t);
    }
    let n_min = triples
        .iter()
        .flat_map(|t| t.iter().map(|v| v.magnitude().clone()))
        .max()
        .expect("m ≥ 1");
    Ok(AiryWitness {
        m,
        lcm,
        k,
        n,
        triples,
        n_min,
        lcm_bound,
    })
}

/// The gap `|k_max| ≥ g|k_med|`, `|k_med| ≥ g|k_min|`, `|k_max| ≥ g|k_min|³`
/// on absolute values.
pub fn satisfies_gap(t: &Triple, gap: &BigRational) -> bool {
    let mut a: Vec<BigRational> = t.iter().map(|v| BigRational::from_integer(v.abs())).collect();
    a.sort_by(cmp_ratio);
    let (min, med, max) = (&a[0], &a[1], &a[2]);
    let ge = |x: &BigRational, y: BigRational| cmp_ratio(x, &y) != Ordering::Less;
    ge(max, gap * med) && ge(med, gap * min) && ge(max, gap * min.pow(3))
}

fn gap_ratio(gap_factor: f64) -> Result<BigRational> {
    if !(gap_factor >= 2.0) || !gap_factor.is_finite() {
        return Err(Error::InvalidArgument(format!("gap factor {gap_factor} must be at least 2")));
    }
    Ok(BigRational::from_float(gap_factor).expect("finite"))
}

/// `#Γ′_Airy(n, k)`: members of `Γ_Airy(n, k)` obeying the gap condition.
pub fn count_airy_restricted(anchor: &AiryAnchor, gap_factor: f64, method: AiryMethod, budget: FactorBudget) -> Result<u128> {
    let gap = gap_ratio(gap_factor)?;
    Ok(airy_members(anchor, method, budget)?
        .iter()
        .filter(|t| satisfies_gap(t, &gap))
        .count() as u128)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedScan {
    pub radius: u32,
    pub gap_factor: f64,
    pub samples: usize,
    pub seed: u64,
    pub max_count: u128,
    pub argmax: (i64, i64),
    /// `histogram[c]` anchors had restricted count `c`.
    pub histogram: Vec<usize>,
}

/// Restricted counts at random reachable anchors: a triple is drawn uniformly
/// from the box and `(n, k)` is its cube sum and sum, redrawn while `n = k³`.
pub fn restricted_scan(radius: u32, gap_factor: f64, samples: usize, seed: u64) -> Result<RestrictedScan> {
    if radius == 0 || radius > BRUTE_LIMIT {
        return Err(Error::limit("box radius", radius, BRUTE_LIMIT));
    }
    let gap = gap_ratio(gap_factor)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = radius as i64;
    let mut anchors = Vec::with_capacity(samples);
    while anchors.len() < samples {
        let t: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-r..=r));
        let k = t.iter().sum::<i64>();
        let n = t.iter().map(|v| v.pow(3)).sum::<i64>();
        if n != k.pow(3) {
            anchors.push((n, k));
        }
    }
    let counts: Vec<u128> = anchors
        .par_iter()
        .map(|&(n, k)| {
            let a = AiryAnchor::new(n, k, radius)?;
            Ok(airy_members(&a, AiryMethod::Divisor, FactorBudget::default())?
                .iter()
                .filter(|t| satisfies_gap(t, &gap))
                .count() as u128)
        })
        .collect::<Result<_>>()?;
    let (mut max_count, mut argmax) = (0, anchors[0]);
    let mut histogram = Vec::new();
    for (&c, &a) in counts.iter().zip(&anchors) {
        if c > max_count {
            (max_count, argmax) = (c, a);
        }
        if histogram.len() <= c as usize {
            histogram.resize(c as usize + 1, 0);
        }
        histogram[c as usize] += 1;
    }
    Ok(RestrictedScan {
        radius,
        gap_factor,
        samples,
        seed,
        max_count,
        argmax,
        histogram,
    })
}

/// One row of [`conditional_l6_scan`], for `k ≥ 0` (`(n, k) → (−n, −k)` is a symmetry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L6ScanRow {
    pub k: i64,
    /// `#Γ_Airy(k³/9, k)` by the divisor method, when `3 | k` and `k ≠ 0`.
    pub cube_ninth: Option<u128>,
    /// `max_n #Γ_Airy(n, k)` over `n ∉ {k³, k³/9}`, with the maximizing `n`.
    pub generic_max: u128,
    pub generic_argmax: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L6Scan {
    pub radius: u32,
    pub rows: Vec<L6ScanRow>,
    pub cube_ninth_max: u128,
    pub cube_ninth_argmax: Option<(i64, i64)>,
    pub generic_max: u128,
    pub generic_argmax: Option<(i64, i64)>,
}

/// Scans `|k| ≤ 3N` for the largest `#Γ_Airy(k³/9, k)` and the largest
/// `#Γ_Airy(n, k)` with `n ∉ {k³, k³/9}`. The generic branch tallies cube
/// sums per `k`; its argmax and the whole `k³/9` branch go through the divisor route.
pub fn conditional_l6_scan(radius: u32) -> Result<L6Scan> {
    if radius == 0 || radius > SCAN_LIMIT {
        return Err(Error::limit("box radius", radius, SCAN_LIMIT));
    }
    let r = radius as i64;
    let rows: Vec<L6ScanRow> = (0..=3 * r)
        .into_par_iter()
        .map(|k| {
            let mut sums = Vec::with_capacity(((2 * r + 1) * (2 * r + 1)) as usize);
            for k1 in -r..=r {
                for k2 in (k - k1 - r).max(-r)..=(k - k1 + r).min(r) {
                    let k3 = k - k1 - k2;
                    sums.push(k1.pow(3) + k2.pow(3) + k3.pow(3));
                }
            }
            sums.sort_unstable();
            // at k = 0 the value k³/9 coincides with the degenerate k³
            let ninth = (k != 0 && k % 3 == 0).then(|| k.pow(3) / 9);
            let (mut best, mut best_n) = (0u128, None);
            let mut ninth_tally = 0u128;
            for run in sums.chunk_by(|a, b| a == b) {
                let (n, c) = (run[0], run.len() as u128);
                if Some(n) == ninth {
                    ninth_tally = c;
                } else if n != k.pow(3) && c > best {
                    (best, best_n) = (c, Some(n));
                }
            }
            let cube_ninth = match ninth {
                Some(n) => {
                    let a = AiryAnchor::new(n, k, radius)?;
                    let c = count_airy(&a, AiryMethod::Divisor, FactorBudget::default())?;
                    if c != ninth_tally {
                        return Err(Error::InvalidArgument(format!("divisor and tally disagree at k = {k}")));
                    }
                    Some(c)
                }
                None => None,
            };
            Ok(L6ScanRow {
                k,
                cube_ninth,
                generic_max: best,
                generic_argmax: best_n,
            })
        })
        .collect::<Result<_>>()?;
    let mut scan = L6Scan {
        radius,
        rows,
        cube_ninth_max: 0,
        cube_ninth_argmax: None,
        generic_max: 0,
        generic_argmax: None,
    };
    for row in &scan.rows {
        if let Some(c) = row.cube_ninth {
            if c > scan.cube_ninth_max {
                scan.cube_ninth_max = c;
                scan.cube_ninth_argmax = Some((row.k.pow(3) / 9, row.k));
            }
        }
        if row.generic_max > scan.generic_max {
            scan.generic_max = row.generic_max;
            scan.generic_argmax = row.generic_argmax.map(|n| (n, row.k));
        }
    }
    if let Some((n, k)) = scan.generic_argmax {
        let c = count_airy(&AiryAnchor::new(n, k, radius)?, AiryMethod::Divisor, FactorBudget::default())?;
        if c != scan.generic_max {
            return Err(Error::InvalidArgument(format!("divisor and tally disagree at ({n}, {k})")));
        }
    }
    Ok(scan)
}
