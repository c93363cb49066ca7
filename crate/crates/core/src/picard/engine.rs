//! Tuple sums `Σ ∫₀ᵗ e^{−iΦt′} dt′` grouped by coordinate phases.
//!
//! In two dimensions a cubic interaction `k₁ − k₂ + k₃ = k` splits into
//! independent coordinate triples, and the phase is `λₓωₓ + λᵧωᵧ` with
//! `ω = a² − b² + c² − j²` for the triple `(a, b, c)` summing to `j`. The
//! histograms `h_j(ω)` therefore determine every coefficient.

use std::ops::{AddAssign, Mul};

use num_complex::Complex64;
use rayon::prelude::*;

use super::oscillatory_integral;
use crate::lattice::QuinticTally;
use crate::Result;

pub(crate) struct CubicEngine {
    /// `h_j` for `j ∈ [0, 3N]` (the histograms are even in `j`), sorted by `ω`.
    hists: Vec<Vec<(i64, u64)>>,
    omega_max: i64,
}

impl CubicEngine {
    pub(crate) fn new(n: u32) -> Self {
        let n = n as i64;
        let hists: Vec<Vec<(i64, u64)>> = (0..=3 * n)
            .into_par_iter()
            .map(|j| {
                let mut map = std::collections::BTreeMap::new();
                for a in -n..=n {
                    for c in (j - a - n).max(-n)..=(j - a + n).min(n) {
                        // b = a + c − j lies in the box by the range of c
                        let b = a + c - j;
                        *map.entry(a * a - b * b + c * c - j * j).or_insert(0u64) += 1;
                    }
                }
                map.into_iter().collect()
            })
            .collect();
        let omega_max = hists
            .iter()
            .flat_map(|h| h.iter().map(|(w, _)| w.abs()))
            .max()
            .unwrap_or(0);
        CubicEngine { hists, omega_max }
    }

    pub(crate) fn hist(&self, j: i64) -> &[(i64, u64)] {
        &self.hists[j.unsigned_abs() as usize]
    }

    /// `|Γ(k)| = Σ_a hₓ(a) hᵧ(−a)`.
    pub(crate) fn gamma(&self, k: [i64; 2]) -> u128 {
        let hx = self.hist(k[0]);
        let hy = self.hist(k[1]);
        let mut total = 0u128;
        let mut j = hy.len();
        for &(a, ca) in hx {
            while j > 0 && -hy[j - 1].0 < a {
                j -= 1;
            }
            if j > 0 && -hy[j - 1].0 == a {
                total += ca as u128 * hy[j - 1].1 as u128;
            }
        }
        total
    }

    /// Resonant pairs `(a, −a)` with multiplicities `hₓ(a) hᵧ(−a)`.
    pub(crate) fn resonant_pairs(&self, k: [i64; 2]) -> Vec<(i64, u128)> {
        let hy = self.hist(k[1]);
        self.hist(k[0])
            .iter()
            .filter_map(|&(a, ca)| {
                hy.binary_search_by_key(&-a, |e| e.0)
                    .ok()
                    .map(|i| (a, ca as u128 * hy[i].1 as u128))
            })
            .collect()
    }

    /// `Σ_{ωₓ + ωᵧ = 0} ∫₀ᵗ e^{−i·defect·ωₓ·t′} dt′`; exactly `t·|Γ(k)|` when `defect = 0`.
    pub(crate) fn resonant_sum(&self, k: [i64; 2], defect: f64, t: f64) -> Complex64 {
        if defect == 0.0 {
            return Complex64::new(t * self.gamma(k) as f64, 0.0);
        }
        self.resonant_pairs(k)
            .into_iter()
            .map(|(a, c)| oscillatory_integral(defect * a as f64, t) * c as f64)
            .sum()
    }

    /// Non-resonant sums for `λₓ = λᵧ = λ`: `Σ_{s ≠ 0} W_k(s) ∫₀ᵗ e^{−iλst′} dt′`.
    pub(crate) fn nonresonant_sums(&self, anchors: &[[i64; 2]], lambda: f64, t: f64) -> Vec<Complex64> {
        self.convolve(anchors, |s| {
            if s == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                oscillatory_integral(lambda * s as f64, t)
            }
        })
    }

    /// `Σ_{a, b} hₓ(a) hᵧ(b) f(a + b)`, evaluated as `Σ_a hₓ(a) G_{kᵧ}(a)` with
    /// `G_{kᵧ}(a) = Σ_b hᵧ(b) f(a + b)`.
    pub(crate) fn convolve<T, F>(&self, anchors: &[[i64; 2]], f: F) -> Vec<T>
    where
        T: Copy + Default + Send + Sync + AddAssign + Mul<f64, Output = T>,
        F: Fn(i64) -> T,
    {
        let wmax = self.omega_max;
        let table: Vec<T> = (-2 * wmax..=2 * wmax).map(f).collect();
        let value = |s: i64| table[(s + 2 * wmax) as usize];

        let mut xs: Vec<usize> = anchors.iter().map(|k| k[0].unsigned_abs() as usize).collect();
        xs.sort_unstable();
        xs.dedup();
        let mut union: Vec<i64> = xs.iter().flat_map(|&j| self.hists[j].iter().map(|e| e.0)).collect();
        union.sort_unstable();
        union.dedup();
        let mut position = vec![usize::MAX; (2 * wmax + 1) as usize];
        for (i, &a) in union.iter().enumerate() {
            position[(a + wmax) as usize] = i;
        }

        let mut ys: Vec<usize> = anchors.iter().map(|k| k[1].unsigned_abs() as usize).collect();
        ys.sort_unstable();
        ys.dedup();
        let g_rows: Vec<Vec<T>> = ys
            .par_iter()
            .map(|&jy| {
                let hy = &self.hists[jy];
                union
                    .iter()
                    .map(|&a| {
                        let mut acc = T::default();
                        for &(b, cb) in hy {
                            acc += value(a + b) * cb as f64;
                        }
                        acc
                    })
                    .collect()
            })
            .collect();

        anchors
            .par_iter()
            .map(|k| {
                let row = &g_rows[ys.binary_search(&(k[1].unsigned_abs() as usize)).expect("row built")];
                let mut acc = T::default();
                for &(a, ca) in &self.hists[k[0].unsigned_abs() as usize] {
                    acc += row[position[(a + wmax) as usize]] * ca as f64;
                }
                acc
            })
            .collect()
    }
}

/// One-dimensional quintic interactions through the quadruple tally `T(L, Q)`:
/// the phase of `(k₁, …, k₅)` is `λ·(Q + k₅² − k²)`.
pub(crate) struct QuinticEngine {
    tally: QuinticTally,
}

impl QuinticEngine {
    pub(crate) fn new(n: u32) -> Result<Self> {
        Ok(QuinticEngine {
            tally: QuinticTally::new(n)?,
        })
    }

    pub(crate) fn gamma(&self, k: i64) -> u128 {
        self.tally.gamma_prime(k)
    }

    pub(crate) fn nonresonant_sums(&self, anchors: &[i64], lambda: f64, t: f64) -> Vec<Complex64> {
        let n = self.tally.radius() as i64;
        let qmax = 2 * n * n;
        let omega_max = qmax + n * n + 25 * n * n;
        let table: Vec<Complex64> = (-omega_max..=omega_max)
            .map(|s| {
                if s == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    oscillatory_integral(lambda * s as f64, t)
                }
            })
            .collect();
        anchors
            .par_iter()
            .map(|&k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for k5 in -n..=n {
                    let shift = k5 * k5 - k * k;
                    for q in -qmax..=qmax {
                        let c = self.tally.get(k - k5, q);
                        if c != 0 {
                            acc += table[(q + shift + omega_max) as usize] * c as f64;
                        }
                    }
                }
                acc
            })
            .collect()
    }
}
