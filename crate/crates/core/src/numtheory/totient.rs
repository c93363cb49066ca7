use crate::{Error, Result};

use super::SIX_OVER_PI_SQUARED;

/// Largest table the sieve will build.
pub const TOTIENT_LIMIT: usize = 100_000_000;

/// Euler's totient `φ(p)` for every `1 ≤ p ≤ limit`, built by a linear sieve.
#[derive(Debug, Clone)]
pub struct TotientTable {
    // values[0] is unused and holds 0.
    values: Vec<u32>,
}

impl TotientTable {
    pub fn new(limit: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidArgument("totient table limit must be positive".into()));
        }
        if limit > TOTIENT_LIMIT {
            return Err(Error::limit("totient limit", limit as u128, TOTIENT_LIMIT as u128));
        }
        let mut phi = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        phi[1] = 1;
        for i in 2..=limit {
            if phi[i] == 0 {
                phi[i] = (i - 1) as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                let ip = i * p;
                if ip > limit {
                    break;
                }
                if i % p == 0 {
                    phi[ip] = phi[i] * p as u32;
                    break;
                }
                phi[ip] = phi[i] * (p as u32 - 1);
            }
        }
        Ok(Self { values: phi })
    }

    pub fn limit(&self) -> usize {
        self.values.len() - 1
    }

    /// `φ(n)`; panics when `n` is 0 or beyond the limit.
    pub fn get(&self, n: usize) -> u32 {
        assert!(n >= 1 && n <= self.limit(), "totient index {n} out of range");
        self.values[n]
    }

    /// `(n, φ(n))` for `n = 1..=limit`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, u32)> + ExactSizeIterator + '_ {
        self.values.iter().copied().enumerate().skip(1)
    }
}

/// `Σ_{p ≤ N} φ(p)/p²` and its ratio to `log N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotientSum {
    pub n: usize,
    pub sum: f64,
    pub ratio: f64,
}

impl TotientSum {
    /// `Σ_{p≤N} φ(p)/p² > (6/π²)·log(N+1)`.
    pub fn lower_chain_holds(&self) -> bool {
        self.sum > SIX_OVER_PI_SQUARED * ((self.n + 1) as f64).ln()
    }
}

pub fn totient_sum_ratio(n: usize) -> Result<TotientSum> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("totient sum needs N ≥ 2, got {n}")));
    }
    let table = TotientTable::new(n)?;
    // small terms first
    let sum = table
        .iter()
        .rev()
        .map(|(p, phi)| phi as f64 / (p as f64 * p as f64))
        .sum::<f64>();
    Ok(TotientSum {
        n,
        sum,
        ratio: sum / (n as f64).ln(),
    })
}
