use super::geometry::{LineSolver, Rect};
use super::tally::{tuple_tally, TallyBudget, TallyKey, TallyTable};
use super::{par_sum, CountMethod, FrequencyBox, ResonanceCount, SetKind};
use crate::numtheory::TotientTable;
use crate::{Error, Result};

fn require_dim(b: &FrequencyBox, dim: usize) -> Result<()> {
    if b.dim() != dim {
        return Err(Error::Dimension(b.dim()));
    }
    Ok(())
}

/// `|Γ(k)|`: ordered `(k₁, k₂, k₃) ∈ (Z_N²)³` with `k₁ − k₂ + k₃ = k` and
/// `|k₁|² − |k₂|² + |k₃|² = |k|²`. Requires `k ∈ Z_{3N}²`.
pub fn count_gamma_2d(b: FrequencyBox, k: [i64; 2], method: CountMethod) -> Result<ResonanceCount> {
    require_dim(&b, 2)?;
    b.check_anchor(&k, 3)?;
    let n = b.n();
    let count = match method {
        CountMethod::Brute => gamma_2d_brute(n, k)?,
        CountMethod::Fast => gamma_2d_fast_rows(n, k, -n - k[0], n - k[0])?,
        CountMethod::MeetInMiddle => {
            let table = tuple_tally(b, 2, TallyBudget::default())?;
            return gamma_2d_from_tally(&table, k);
        }
    };
    Ok(ResonanceCount {
        kind: SetKind::Gamma2d,
        frequency_box: b,
        anchor: Some(k.to_vec()),
        count,
        method,
    })
}

fn gamma_2d_brute(n: i64, k: [i64; 2]) -> Result<u128> {
    par_sum(-n, n, |x1| {
        let mut c = 0u128;
        for y1 in -n..=n {
            for x3 in -n..=n {
                let x2 = x1 + x3 - k[0];
                if x2.abs() > n {
                    continue;
                }
                for y3 in -n..=n {
                    let y2 = y1 + y3 - k[1];
                    if y2.abs() > n {
                        continue;
                    }
                    if x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2 + x3 * x3 + y3 * y3 == k[0] * k[0] + k[1] * k[1] {
                        c += 1;
                    }
                }
            }
        }
        Ok(c)
    })
}

/// Rectangle form: `u = k₁ − k`, `v = k₃ − k` with `u·v = 0` and
/// `k + u, k + v, k + u + v` in the box. For each `u` with first
/// coordinate in `ux0..=ux1`, the admissible `v` form a line through the
/// origin clipped to a rectangle.
pub(crate) fn gamma_2d_fast_rows(n: i64, k: [i64; 2], ux0: i64, ux1: i64) -> Result<u128> {
    let ux0 = ux0.max(-n - k[0]);
    let ux1 = ux1.min(n - k[0]);
    par_sum(ux0, ux1, |ux| {
        let mut c = 0u128;
        for uy in (-n - k[1])..=(n - k[1]) {
            let rect = Rect {
                x0: (-n - k[0]).max(-n - k[0] - ux),
                x1: (n - k[0]).min(n - k[0] - ux),
                y0: (-n - k[1]).max(-n - k[1] - uy),
                y1: (n - k[1]).min(n - k[1] - uy),
            };
            c += LineSolver::new(ux, uy).count(0, &rect) as u128;
        }
        Ok(c)
    })
}

/// `|Γ(k)| = Σ_{k₂} T(k + k₂, |k|² + |k₂|²)` from an arity-2 tally of `Z_N²`.
pub fn gamma_2d_from_tally(table: &TallyTable, k: [i64; 2]) -> Result<ResonanceCount> {
    let b = table.frequency_box();
    require_dim(&b, 2)?;
    if table.arity() != 2 {
        return Err(Error::InvalidArgument("Γ(k) needs a pair tally".into()));
    }
    b.check_anchor(&k, 3)?;
    let n = b.n();
    let k2 = k[0] * k[0] + k[1] * k[1];
    let mut count = 0u128;
    for x in -n..=n {
        for y in -n..=n {
            let key = TallyKey {
                linear: [k[0] + x, k[1] + y, 0],
                quadratic: k2 + x * x + y * y,
            };
            count += table.get(&key) as u128;
        }
    }
    Ok(ResonanceCount {
        kind: SetKind::Gamma2d,
        frequency_box: b,
        anchor: Some(k.to_vec()),
        count,
        method: CountMethod::MeetInMiddle,
    })
}

/// Ordered pairs `(k₁, k₃)` in `Z_N^d` (d = 2 or 3) with `k₁·k₃ = 0`, zero
/// vectors included. `Brute` scans all pairs; `Fast` counts, for each `k₁`,
/// the lattice points of the orthogonal line or plane inside the box.
pub fn count_orthogonal_pairs(b: FrequencyBox, method: CountMethod) -> Result<ResonanceCount> {
    let n = b.n();
    let (kind, count) = match (b.dim(), method) {
        (2, CountMethod::Brute) => (
            SetKind::OrthogonalPairs2d,
            par_sum(-n, n, |x1| {
                let mut c = 0u128;
                for y1 in -n..=n {
                    for x3 in -n..=n {
                        for y3 in -n..=n {
                            if x1 * x3 + y1 * y3 == 0 {
                                c += 1;
                            }
                        }
                    }
                }
                Ok(c)
            })?,
        ),
        (2, CountMethod::Fast) => {
            let square = Rect {
                x0: -n,
                x1: n,
                y0: -n,
                y1: n,
            };
            (
                SetKind::OrthogonalPairs2d,
                par_sum(-n, n, |x1| {
                    Ok((-n..=n).map(|y1| LineSolver::new(x1, y1).count(0, &square) as u128).sum())
                })?,
            )
        }
        (3, CountMethod::Brute) => {
            let pts = b.points();
            (
                SetKind::OrthogonalPairs3d,
                par_sum(0, pts.len() as i64 - 1, |i| {
                    let p = pts[i as usize];
                    Ok(pts.iter().filter(|q| p[0] * q[0] + p[1] * q[1] + p[2] * q[2] == 0).count() as u128)
                })?,
            )
        }
        (3, CountMethod::Fast) => {
            let pts = b.points();
            (
                SetKind::OrthogonalPairs3d,
                par_sum(0, pts.len() as i64 - 1, |i| {
                    Ok(super::count_plane_points(pts[i as usize], [-n; 3], [n; 3]) as u128)
                })?,
            )
        }
        (2 | 3, CountMethod::MeetInMiddle) => {
            return Err(Error::UnsupportedMethod {
                method: "mitm",
                set: "orthogonal pairs",
            })
        }
        (d, _) => return Err(Error::Dimension(d)),
    };
    Ok(ResonanceCount {
        kind,
        frequency_box: b,
        anchor: None,
        count,
        method,
    })
}

/// Exact direction decomposition of the planar orthogonal-pair count:
/// `total = (2N+1)² [k₁ = 0] + ((2N+1)² − 1) [k₁ ≠ 0, k₃ = 0] + 16·core`,
/// with `core = Σ_{p ≤ N} [N/p]² φ(p)` the open-quadrant sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalDecomposition {
    pub n: u32,
    pub zero_first: u128,
    pub zero_second: u128,
    pub quadrant_core: u128,
    pub total: u128,
}

impl OrthogonalDecomposition {
    /// `core / (N² log N)`.
    pub fn core_ratio(&self) -> f64 {
        let n = self.n as f64;
        self.quadrant_core as f64 / (n * n * n.ln())
    }

    pub fn as_count(&self) -> ResonanceCount {
        ResonanceCount {
            kind: SetKind::OrthogonalPairs2d,
            frequency_box: FrequencyBox::new(2, self.n).expect("dimension 2"),
            anchor: None,
            count: self.total,
            method: CountMethod::Fast,
        }
    }
}

/// Nonzero orthogonal pairs split by the primitive direction `(a, b)` of
/// `k₁`, `p = max(|a|, |b|)`: the two axis directions give `8N²`, each open
/// quadrant contributes `2Σ_p [N/p]² φ(p) − N²` directions weighted by
/// `2[N/p]` partners, hence `16·core` overall.
pub fn fast_orthogonal_count(n: u32) -> Result<OrthogonalDecomposition> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let phi = TotientTable::new(n as usize)?;
    let nn = n as u128;
    let quadrant_core: u128 = phi
        .iter()
        .map(|(p, f)| {
            let q = nn / p as u128;
            q * q * f as u128
        })
        .sum();
    let side = 2 * nn + 1;
    let zero_first = side * side;
    let zero_second = side * side - 1;
    let total = zero_first + zero_second + 16 * quadrant_core;
    Ok(OrthogonalDecomposition {
        n,
        zero_first,
        zero_second,
        quadrant_core,
        total,
    })
}
