//! Resonant lattice-tuple counting on the frequency cubes `Z_N^d`.
//!
//! Every set comes with a brute-force enumerator that serves as the oracle
//! for the faster routes (line/plane counting, meet-in-the-middle tallies).

mod gamma2d;
mod gamma3d;
mod geometry;
mod quintic;
mod tally;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::{Error, Result};

pub use gamma2d::{count_gamma_2d, count_orthogonal_pairs, fast_orthogonal_count, gamma_2d_from_tally, OrthogonalDecomposition};
pub use gamma3d::{count_gamma_dprime_3d, direction_sum_3d, gamma_dprime_3d_from_tally, DirectionSum, PlaneTerm, DIRECTION_SUM_LIMIT};
pub use geometry::{count_line_points, count_plane_points, Rect};
pub use quintic::{count_gamma_prime_1d, QuinticTally};
pub use tally::{resonant_tuple_count, tuple_tally, TallyBudget, TallyKey, TallyTable};

/// The cube `Z_N^d = {k ∈ Z^d : |k_j| ≤ N}` for `d ∈ {1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrequencyBox {
    dim: usize,
    radius: u32,
}

impl FrequencyBox {
    pub fn new(dim: usize, radius: u32) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Dimension(dim));
        }
        Ok(FrequencyBox { dim, radius })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub(crate) fn n(&self) -> i64 {
        self.radius as i64
    }

    pub fn side(&self) -> u64 {
        2 * self.radius as u64 + 1
    }

    pub fn cardinality(&self) -> u128 {
        (self.side() as u128).pow(self.dim as u32)
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        k.len() == self.dim && k.iter().all(|c| c.abs() <= self.n())
    }

    /// All members, padded to three coordinates, in lexicographic order.
    pub fn points(&self) -> Vec<[i64; 3]> {
        let n = self.n();
        let span = |i: usize| if i < self.dim { -n..=n } else { 0..=0 };
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        for x in span(0) {
            for y in span(1) {
                for z in span(2) {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }

    /// Fails unless `k` lies in `Z_{scale·N}^d`.
    pub(crate) fn check_anchor(&self, k: &[i64], scale: i64) -> Result<()> {
        let limit = scale * self.n();
        if k.len() != self.dim {
            return Err(Error::Dimension(k.len()));
        }
        if k.iter().any(|c| c.abs() > limit) {
            return Err(Error::AnchorOutOfRange {
                anchor: k.to_vec(),
                dim: self.dim,
                limit,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FrequencyBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}^{}", self.radius, self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    Gamma2d,
    GammaPrime1d,
    GammaDoublePrime3d,
    OrthogonalPairs2d,
    OrthogonalPairs3d,
}

impl SetKind {
    pub fn name(&self) -> &'static str {
        match self {
            SetKind::Gamma2d => "gamma2d",
            SetKind::GammaPrime1d => "gamma_prime1d",
            SetKind::GammaDoublePrime3d => "gamma_dprime3d",
            SetKind::OrthogonalPairs2d => "orthogonal_pairs2d",
            SetKind::OrthogonalPairs3d => "orthogonal_pairs3d",
        }
    }
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Brute,
    Fast,
    MeetInMiddle,
}

impl CountMethod {
    pub fn name(&self) -> &'static str {
        match self {
            CountMethod::Brute => "brute",
            CountMethod::Fast => "fast",
            CountMethod::MeetInMiddle => "mitm",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(CountMethod::Brute),
            "fast" => Ok(CountMethod::Fast),
            "mitm" => Ok(CountMethod::MeetInMiddle),
            other => Err(Error::InvalidArgument(format!("unknown counting method `{other}`"))),
        }
    }
}

/// An exact count together with what was counted and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceCount {
    pub kind: SetKind,
    pub frequency_box: FrequencyBox,
    pub anchor: Option<Vec<i64>>,
    pub count: u128,
    pub method: CountMethod,
}

impl ResonanceCount {
    /// `count / (N² log N)`; NaN for `N ≤ 1`.
    pub fn ratio_to_n2_log_n(&self) -> f64 {
        let n = self.frequency_box.radius() as f64;
        self.count as f64 / (n * n * n.ln())
    }
}

/// Checked parallel sum of `f(i)` over `lo..=hi`.
pub(crate) fn par_sum<F>(lo: i64, hi: i64, f: F) -> Result<u128>
where
    F: Fn(i64) -> Result<u128> + Sync + Send,
{
    if lo > hi {
        return Ok(0);
    }
    (lo..=hi)
        .into_par_iter()
        .map(f)
        .try_reduce(|| 0, |a, b| a.checked_add(b).ok_or(Error::Overflow))
}
