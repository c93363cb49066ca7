use super::{par_sum, CountMethod, FrequencyBox, ResonanceCount, SetKind};
use crate::{Error, Result};

/// Radius cap for the dense quintic table.
const TABLE_LIMIT: u32 = 64;

/// `T(L, Q)`: ordered quadruples `(k₁, k₂, k₃, k₄) ∈ Z_N⁴` with
/// `k₁ − k₂ + k₃ − k₄ = L` and `k₁² − k₂² + k₃² − k₄² = Q`, stored densely for
/// `|L| ≤ 4N`, `|Q| ≤ 2N²`. Built as the self-convolution of the pair table
/// `P(l, q) = #{(a, b) : a − b = l, a² − b² = q}`.
#[derive(Debug, Clone)]
pub struct QuinticTally {
    n: i64,
    width: usize,
    table: Vec<u64>,
}

impl QuinticTally {
    pub fn new(n: u32) -> Result<Self> {
        if n > TABLE_LIMIT {
            return Err(Error::limit("N", n, TABLE_LIMIT));
        }
        let n = n as i64;
        let mut pairs: std::collections::BTreeMap<(i64, i64), u64> = Default::default();
        for a in -n..=n {
            for b in -n..=n {
                *pairs.entry((a - b, a * a - b * b)).or_insert(0) += 1;
            }
        }
        let pairs: Vec<((i64, i64), u64)> = pairs.into_iter().collect();
        let width = (4 * n * n + 1) as usize;
        let rows = (8 * n + 1) as usize;
        let mut table = vec![0u64; rows * width];
        for &((l1, q1), c1) in &pairs {
            for &((l2, q2), c2) in &pairs {
                let row = (l1 + l2 + 4 * n) as usize;
                let col = (q1 + q2 + 2 * n * n) as usize;
                table[row * width + col] += c1 * c2;
            }
        }
        Ok(QuinticTally { n, width, table })
    }

    pub fn radius(&self) -> u32 {
        self.n as u32
    }

    /// `T(L, Q)`, zero outside the stored range.
    pub fn get(&self, l: i64, q: i64) -> u64 {
        let n = self.n;
        if l.abs() > 4 * n || q.abs() > 2 * n * n {
            return 0;
        }
        self.table[(l + 4 * n) as usize * self.width + (q + 2 * n * n) as usize]
    }

    /// `|Γ′(k)| = Σ_{k₅} T(k − k₅, k² − k₅²)`.
    pub fn gamma_prime(&self, k: i64) -> u128 {
        (-self.n..=self.n)
            .map(|k5| self.get(k - k5, k * k - k5 * k5) as u128)
            .sum()
    }
}

/// `|Γ′(k)|`: ordered `(k₁, …, k₅) ∈ Z_N⁵` with `k₁ − k₂ + k₃ − k₄ + k₅ = k`
/// and `k₁² − k₂² + k₃² − k₄² + k₅² = k²`. Requires `|k| ≤ 5N`.
pub fn count_gamma_prime_1d(b: FrequencyBox, k: i64, method: CountMethod) -> Result<ResonanceCount> {
    if b.dim() != 1 {
        return Err(Error::Dimension(b.dim()));
    }
    b.check_anchor(&[k], 5)?;
    let n = b.n();
    let count = match method {
        CountMethod::Brute => brute(n, k)?,
        CountMethod::MeetInMiddle => QuinticTally::new(b.radius())?.gamma_prime(k),
        CountMethod::Fast => {
            return Err(Error::UnsupportedMethod {
                method: "fast",
                set: "Γ′(k)",
            })
        }
    };
    Ok(ResonanceCount {
        kind: SetKind::GammaPrime1d,
        frequency_box: b,
        anchor: Some(vec![k]),
        count,
        method,
    })
}

fn brute(n: i64, k: i64) -> Result<u128> {
    par_sum(-n, n, |k1| {
        let mut c = 0u128;
        for k2 in -n..=n {
            for k3 in -n..=n {
                for k4 in -n..=n {
                    let k5 = k - (k1 - k2 + k3 - k4);
                    if k5.abs() <= n && k1 * k1 - k2 * k2 + k3 * k3 - k4 * k4 + k5 * k5 == k * k {
                        c += 1;
                    }
                }
            }
        }
        Ok(c)
    })
}
