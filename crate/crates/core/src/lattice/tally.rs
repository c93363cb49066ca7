use std::collections::HashMap;

use rayon::prelude::*;

use super::{par_sum, FrequencyBox};
use crate::{Error, Result};

/// Key of a half-tuple `(k₁, …, k_r)`: `(Σ k_i, Σ |k_i|²)`, padded to 3 coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TallyKey {
    pub linear: [i64; 3],
    pub quadratic: i64,
}

/// Upper bound on the number of half-tuples a materialized tally may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TallyBudget {
    pub max_half_tuples: u128,
}

impl Default for TallyBudget {
    fn default() -> Self {
        TallyBudget {
            max_half_tuples: 1 << 25,
        }
    }
}

/// Multiplicities of half-tuple keys over `(Z_N^d)^arity`.
#[derive(Debug, Clone)]
pub struct TallyTable {
    frequency_box: FrequencyBox,
    arity: usize,
    entries: HashMap<TallyKey, u64>,
}

impl TallyTable {
    pub fn frequency_box(&self) -> FrequencyBox {
        self.frequency_box
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, key: &TallyKey) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn sorted_entries(&self) -> Vec<(TallyKey, u64)> {
        let mut v: Vec<_> = self.entries.iter().map(|(k, c)| (*k, *c)).collect();
        v.sort_unstable();
        v
    }

    /// `Σ value`, which equals `|box|^arity`.
    pub fn total(&self) -> u128 {
        self.entries.values().map(|&c| c as u128).sum()
    }

    /// `Σ value²`: the number of resonant `2·arity`-tuples.
    pub fn sum_of_squares(&self) -> Result<u128> {
        self.entries.values().try_fold(0u128, |acc, &c| {
            acc.checked_add((c as u128) * (c as u128)).ok_or(Error::Overflow)
        })
    }
}

fn key_of(points: &[[i64; 3]]) -> TallyKey {
    let mut linear = [0i64; 3];
    let mut quadratic = 0;
    for p in points {
        for i in 0..3 {
            linear[i] += p[i];
            quadratic += p[i] * p[i];
        }
    }
    TallyKey { linear, quadratic }
}

/// Materialized tally of all half-tuples of the given arity (1 to 3).
pub fn tuple_tally(frequency_box: FrequencyBox, arity: usize, budget: TallyBudget) -> Result<TallyTable> {
    if !(1..=3).contains(&arity) {
        return Err(Error::InvalidArgument(format!("tally arity {arity} not in 1..=3")));
    }
    let half_tuples = frequency_box.cardinality().pow(arity as u32);
    if half_tuples > budget.max_half_tuples {
        return Err(Error::limit("half-tuples", half_tuples, budget.max_half_tuples));
    }
    let points = frequency_box.points();
    let entries = points
        .par_iter()
        .fold(HashMap::new, |mut map: HashMap<TallyKey, u64>, &first| {
            match arity {
                1 => *map.entry(key_of(&[first])).or_insert(0) += 1,
                2 => {
                    for &p in &points {
                        *map.entry(key_of(&[first, p])).or_insert(0) += 1;
                    }
                }
                _ => {
                    for &p in &points {
                        for &q in &points {
                            *map.entry(key_of(&[first, p, q])).or_insert(0) += 1;
                        }
                    }
                }
            }
            map
        })
        .reduce(HashMap::new, |mut a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, std::mem::take(&mut a)) };
            for (k, c) in small {
                *big.entry(k).or_insert(0) += c;
            }
            big
        });
    Ok(TallyTable {
        frequency_box,
        arity,
        entries,
    })
}

/// Number of distinct images of `s` under coordinate permutations and sign flips,
/// for a canonical `s` (nonnegative, nonincreasing in its first `dim` entries).
fn orbit_size(s: &[i64]) -> u128 {
    let dim = s.len() as u32;
    let mut perms: u128 = (1..=dim as u128).product();
    let mut i = 0;
    while i < s.len() {
        let mut j = i;
        while j < s.len() && s[j] == s[i] {
            j += 1;
        }
        perms /= (1..=(j - i) as u128).product::<u128>();
        i = j;
    }
    let nonzero = s.iter().filter(|&&c| c != 0).count() as u32;
    perms << nonzero
}

/// Canonical sums `2N ≥ s₁ ≥ s₂ ≥ s₃ ≥ 0` in the first `dim` coordinates.
fn canonical_sums(dim: usize, max: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in 0..=max {
        let bmax = if dim >= 2 { a } else { 0 };
        for b in 0..=bmax {
            let cmax = if dim >= 3 { b } else { 0 };
            for c in 0..=cmax {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Resonant `2·arity`-tuples `Σ ±k_i = 0`, `Σ ±|k_i|² = 0` (alternating signs)
/// counted by grouping half-tuples on their linear sum and squaring the
/// multiplicities of the quadratic sum. Arity 2 (any dimension) and arity 3
/// in one dimension stream with dense histograms; other shapes fall back to
/// the materialized tally under the default budget.
pub fn resonant_tuple_count(frequency_box: FrequencyBox, arity: usize) -> Result<u128> {
    match (frequency_box.dim(), arity) {
        (_, 1) => Ok(frequency_box.cardinality()),
        (dim, 2) => Ok(pair_stream(frequency_box.n(), dim)?),
        (1, 3) => triple_stream(frequency_box.n()),
        _ => tuple_tally(frequency_box, arity, TallyBudget::default())?.sum_of_squares(),
    }
}

/// Per linear sum `s`: `k₁ ∈ box ∩ (s − box)` keyed by `|2k₁ − s|²`, which
/// fixes `|k₁|² + |s − k₁|²`. The count depends only on the orbit of `s`.
fn pair_stream(n: i64, dim: usize) -> Result<u128> {
    let sums = canonical_sums(dim, 2 * n);
    let hist_len = (dim as i64 * 4 * n * n + 1) as usize;
    sums.par_iter()
        .map_init(
            || vec![0u64; hist_len],
            |hist, s| {
                let s = *s;
                let range = |i: usize| if i < dim { (s[i] - n, n) } else { (0, 0) };
                let (x0, x1) = range(0);
                let (y0, y1) = range(1);
                let (z0, z1) = range(2);
                for x in x0..=x1 {
                    let dx = 2 * x - s[0];
                    let kx = dx * dx;
                    for y in y0..=y1 {
                        let dy = 2 * y - s[1];
                        let kxy = kx + dy * dy;
                        for z in z0..=z1 {
                            let dz = 2 * z - s[2];
                            hist[(kxy + dz * dz) as usize] += 1;
                        }
                    }
                }
                let top: i64 = (0..dim).map(|i| (2 * n - s[i]).pow(2)).sum();
                let mut acc = 0u128;
                for c in &mut hist[..=top as usize] {
                    acc += (*c as u128) * (*c as u128);
                    *c = 0;
                }
                acc.checked_mul(orbit_size(&s[..dim])).ok_or(Error::Overflow)
            },
        )
        .try_reduce(|| 0, |a, b| a.checked_add(b).ok_or(Error::Overflow))
}

/// One-dimensional triples grouped by `s = a + b + c`, keyed by `a² + b² + c²`.
fn triple_stream(n: i64) -> Result<u128> {
    let hist_len = (3 * n * n + 1) as usize;
    par_sum(0, 3 * n, |s| {
        let mut hist = vec![0u64; hist_len];
        for a in -n..=n {
            let b0 = (-n).max(s - a - n);
            let b1 = n.min(s - a + n);
            for b in b0..=b1 {
                let c = s - a - b;
                hist[(a * a + b * b + c * c) as usize] += 1;
            }
        }
        let acc: u128 = hist.iter().map(|&c| (c as u128) * (c as u128)).sum();
        Ok(if s == 0 { acc } else { 2 * acc })
    })
}
