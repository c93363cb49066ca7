use super::geometry::count_plane_points;
use super::tally::{tuple_tally, TallyBudget, TallyKey, TallyTable};
use super::{par_sum, CountMethod, FrequencyBox, ResonanceCount, SetKind};
use crate::numtheory::gcd_i64;
use crate::{Error, Result};

/// Radius guards for `|Γ″(k)|` by method.
const BRUTE_LIMIT: u32 = 24;
const FAST_LIMIT: u32 = 64;

/// Cap on `N` for [`direction_sum_3d`].
pub const DIRECTION_SUM_LIMIT: u32 = 512;

/// `|Γ″(k)|`: ordered `(k₁, k₂, k₃) ∈ (Z_N³)³` with `k₁ − k₂ + k₃ = k` and
/// `|k₁|² − |k₂|² + |k₃|² = |k|²`. Requires `k ∈ Z_{3N}³`.
///
/// `Fast` counts, for each `u = k₁ − k`, the points of the plane `u·v = 0`
/// in the box where `k + v` and `k + u + v` both lie in `Z_N³`.
pub fn count_gamma_dprime_3d(b: FrequencyBox, k: [i64; 3], method: CountMethod) -> Result<ResonanceCount> {
    if b.dim() != 3 {
        return Err(Error::Dimension(b.dim()));
    }
    b.check_anchor(&k, 3)?;
    let limit = match method {
        CountMethod::Fast => FAST_LIMIT,
        _ => BRUTE_LIMIT,
    };
    if b.radius() > limit {
        return Err(Error::limit("N", b.radius(), limit));
    }
    let n = b.n();
    let count = match method {
        CountMethod::Brute => brute(n, k)?,
        CountMethod::Fast => fast(n, k)?,
        CountMethod::MeetInMiddle => {
            let table = tuple_tally(b, 2, TallyBudget::default())?;
            return gamma_dprime_3d_from_tally(&table, k);
        }
    };
    Ok(ResonanceCount {
        kind: SetKind::GammaDoublePrime3d,
        frequency_box: b,
        anchor: Some(k.to_vec()),
        count,
        method,
    })
}

/// `|Γ″(k)|` from a prebuilt pair tally over `Z_N³`: `k₂ = k₁ + k₃ − k`
/// turns both constraints into a lookup of `(k + k₂, |k|² + |k₂|²)`.
pub fn gamma_dprime_3d_from_tally(table: &TallyTable, k: [i64; 3]) -> Result<ResonanceCount> {
    let b = table.frequency_box();
    if b.dim() != 3 {
        return Err(Error::Dimension(b.dim()));
    }
    if table.arity() != 2 {
        return Err(Error::InvalidArgument("Γ″(k) needs a pair tally".into()));
    }
    b.check_anchor(&k, 3)?;
    let k2 = k.iter().map(|c| c * c).sum::<i64>();
    let mut count = 0u128;
    for p in b.points() {
        let key = TallyKey {
            linear: [k[0] + p[0], k[1] + p[1], k[2] + p[2]],
            quadratic: k2 + p.iter().map(|c| c * c).sum::<i64>(),
        };
        count += table.get(&key) as u128;
    }
    Ok(ResonanceCount {
        kind: SetKind::GammaDoublePrime3d,
        frequency_box: b,
        anchor: Some(k.to_vec()),
        count,
        method: CountMethod::MeetInMiddle,
    })
}

fn brute(n: i64, k: [i64; 3]) -> Result<u128> {
    let kk = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    par_sum(-n, n, |x1| {
        let mut c = 0u128;
        for y1 in -n..=n {
            for z1 in -n..=n {
                let q1 = x1 * x1 + y1 * y1 + z1 * z1;
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
                        for z3 in -n..=n {
                            let z2 = z1 + z3 - k[2];
                            if z2.abs() > n {
                                continue;
                            }
                            if q1 - x2 * x2 - y2 * y2 - z2 * z2 + x3 * x3 + y3 * y3 + z3 * z3 == kk {
                                c += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(c)
    })
}

fn fast(n: i64, k: [i64; 3]) -> Result<u128> {
    par_sum(-n - k[0], n - k[0], |ux| {
        let mut c = 0u128;
        for uy in (-n - k[1])..=(n - k[1]) {
            for uz in (-n - k[2])..=(n - k[2]) {
                let u = [ux, uy, uz];
                let mut lo = [0; 3];
                let mut hi = [0; 3];
                for i in 0..3 {
                    lo[i] = (-n - k[i]).max(-n - k[i] - u[i]);
                    hi[i] = (n - k[i]).min(n - k[i] - u[i]);
                }
                c += count_plane_points(u, lo, hi) as u128;
            }
        }
        Ok(c)
    })
}

/// One term of the direction certificate: normal `(a, b, c)` and its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneTerm {
    pub normal: [u32; 3],
    /// `[N/a]`.
    pub multiplier: u64,
    /// `#{x ∈ Z_N³ : a x₁ + b x₂ + c x₃ = 0}`.
    pub plane_points: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSum {
    pub n: u32,
    pub sum: u128,
    pub terms: Vec<PlaneTerm>,
}

impl DirectionSum {
    /// `sum / N⁴`.
    pub fn ratio(&self) -> f64 {
        self.sum as f64 / (self.n as f64).powi(4)
    }
}

/// `Σ [N/a]·#(P_{(a,b,c)} ∩ Z_N³)` over primitive `0 < c ≤ b ≤ a ≤ N`, where
/// `P_{(a,b,c)}` is the plane through the origin with that normal.
pub fn direction_sum_3d(n: u32) -> Result<DirectionSum> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if n > DIRECTION_SUM_LIMIT {
        return Err(Error::limit("N", n, DIRECTION_SUM_LIMIT));
    }
    use rayon::prelude::*;
    let nn = n as i64;
    let per_a: Vec<Vec<PlaneTerm>> = (1..=nn)
        .into_par_iter()
        .map(|a| {
            let mut terms = Vec::new();
            for b in 1..=a {
                let gab = gcd_i64(a, b);
                for c in 1..=b {
                    if gcd_i64(gab, c) != 1 {
                        continue;
                    }
                    terms.push(PlaneTerm {
                        normal: [a as u32, b as u32, c as u32],
                        multiplier: (nn / a) as u64,
                        plane_points: count_plane_points([a, b, c], [-nn; 3], [nn; 3]),
                    });
                }
            }
            terms
        })
        .collect();
    let terms: Vec<PlaneTerm> = per_a.into_iter().flatten().collect();
    let mut sum = 0u128;
    for t in &terms {
        sum = sum
            .checked_add(t.multiplier as u128 * t.plane_points as u128)
            .ok_or(Error::Overflow)?;
    }
    Ok(DirectionSum { n, sum, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(n: u32) -> FrequencyBox {
        FrequencyBox::new(3, n).unwrap()
    }

    #[test]
    fn trivial_and_cross_checked() {
        for m in [CountMethod::Brute, CountMethod::Fast, CountMethod::MeetInMiddle] {
            assert_eq!(count_gamma_dprime_3d(bx(0), [0, 0, 0], m).unwrap().count, 1);
        }
        for n in 1..=3u32 {
            let r = 3 * n as i64;
            for k in [[0, 0, 0], [1, 0, -1], [r, -r, 0], [2, 2, 2]] {
                let brute = count_gamma_dprime_3d(bx(n), k, CountMethod::Brute).unwrap().count;
                let fast = count_gamma_dprime_3d(bx(n), k, CountMethod::Fast).unwrap().count;
                let mitm = count_gamma_dprime_3d(bx(n), k, CountMethod::MeetInMiddle).unwrap().count;
                assert_eq!((fast, mitm), (brute, brute), "N={n} k={k:?}");
            }
        }
    }

    #[test]
    fn guards() {
        assert!(count_gamma_dprime_3d(bx(65), [0, 0, 0], CountMethod::Fast).unwrap_err().is_budget());
        assert!(count_gamma_dprime_3d(bx(25), [0, 0, 0], CountMethod::Brute).unwrap_err().is_budget());
        assert!(count_gamma_dprime_3d(bx(10), [0, 0, 0], CountMethod::MeetInMiddle).unwrap_err().is_budget());
        assert!(direction_sum_3d(513).unwrap_err().is_budget());
    }

    fn brute_direction_sum(n: i64) -> u128 {
        let mut s = 0u128;
        for a in 1..=n {
            for b in 1..=a {
                for c in 1..=b {
                    if gcd_i64(gcd_i64(a, b), c) != 1 {
                        continue;
                    }
                    let mut pts = 0u128;
                    for x in -n..=n {
                        for y in -n..=n {
                            for z in -n..=n {
                                if a * x + b * y + c * z == 0 {
                                    pts += 1;
                                }
                            }
                        }
                    }
                    s += (n / a) as u128 * pts;
                }
            }
        }
        s
    }

    #[test]
    fn direction_sum_small() {
        let one = direction_sum_3d(1).unwrap();
        assert_eq!(one.terms.len(), 1);
        assert_eq!(one.terms[0].plane_points, 7);
        assert_eq!(one.sum, 7);
        for n in 2..=6 {
            assert_eq!(direction_sum_3d(n).unwrap().sum, brute_direction_sum(n as i64), "N={n}");
        }
    }
}
