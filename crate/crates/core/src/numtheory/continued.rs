use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gamma::GammaPreset;
use crate::{Error, Result};

/// Quotients and convergents of `γ = [a₀; a₁, a₂, …]` up to a fixed depth.
///
/// The depth counts terms including `a₀`, so depth `n` yields the
/// convergents `p₀/q₀, …, p_{n−1}/q_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFractionExpansion {
    integer_part: BigInt,
    quotients: Vec<BigUint>,
    convergents: Vec<(BigInt, BigUint)>,
    lookahead: Option<BigUint>,
    terminated: bool,
}

impl ContinuedFractionExpansion {
    pub fn integer_part(&self) -> &BigInt {
        &self.integer_part
    }

    /// `a₁, a₂, …` (the integer part is not repeated here).
    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    /// `(p_n, q_n)` for `n = 0, 1, …`.
    pub fn convergents(&self) -> &[(BigInt, BigUint)] {
        &self.convergents
    }

    pub fn depth(&self) -> usize {
        self.convergents.len()
    }

    /// True when the expansion of a rational ended exactly at this depth.
    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// The quotient following the last one returned, if it exists.
    pub fn next_quotient(&self) -> Option<&BigUint> {
        self.lookahead.as_ref()
    }

    /// `a_{n+1}` for convergent `n`.
    pub fn quotient_after(&self, n: usize) -> Option<&BigUint> {
        if n < self.quotients.len() {
            Some(&self.quotients[n])
        } else if n == self.quotients.len() {
            self.lookahead.as_ref()
        } else {
            None
        }
    }

    pub fn convergent(&self, n: usize) -> BigRational {
        let (p, q) = &self.convergents[n];
        BigRational::new(p.clone(), BigInt::from(q.clone()))
    }

    /// Value of the finite continued fraction `[a₀; a₁, …, a_{depth−1}]`.
    pub fn value(&self) -> BigRational {
        self.convergent(self.depth() - 1)
    }

    /// Checks `1/(q_n² a_{n+1}) > |γ − p_n/q_n| > 1/(q_n²(a_{n+1}+2))` at
    /// convergent `n` by exact comparison. `None` when `a_{n+1}` is unknown.
    pub fn sandwich_holds(&self, gamma: &GammaPreset, n: usize) -> Option<bool> {
        let a = self.quotient_after(n)?;
        let x = self.convergent(n);
        let q2 = BigInt::from(self.convergents[n].1.clone()).pow(2);
        let upper = BigRational::new(BigInt::one(), &q2 * BigInt::from(a.clone()));
        let lower = BigRational::new(BigInt::one(), &q2 * (BigInt::from(a.clone()) + 2));
        let below_upper = gamma.cmp_rational(&(&x - &upper)) == Ordering::Greater
            && gamma.cmp_rational(&(&x + &upper)) == Ordering::Less;
        let above_lower = gamma.cmp_rational(&(&x + &lower)) == Ordering::Greater
            || gamma.cmp_rational(&(&x - &lower)) == Ordering::Less;
        Some(below_upper && above_lower)
    }
}

/// Expands `γ` to `depth` terms. A rational that ends sooner is an error;
/// one that ends exactly at `depth` is flagged as terminated.
pub fn continued_fraction(gamma: &GammaPreset, depth: usize) -> Result<ContinuedFractionExpansion> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    gamma.validate_positive()?;
    let integer_part = gamma.integer_part();
    let mut stream = gamma.quotients();
    let quotients: Vec<BigUint> = stream.by_ref().take(depth - 1).collect();
    if quotients.len() < depth - 1 {
        return Err(Error::DepthUnreachable {
            requested: depth,
            available: quotients.len() + 1,
        });
    }
    let lookahead = stream.next();
    let terminated = lookahead.is_none();

    let mut convergents = Vec::with_capacity(depth);
    let (mut p_prev, mut p) = (BigInt::one(), integer_part.clone());
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    convergents.push((p.clone(), q.clone()));
    for a in &quotients {
        let a_int = BigInt::from(a.clone());
        let p_next = &a_int * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        debug_assert!(p.gcd(&BigInt::from(q.clone())).is_one());
        convergents.push((p.clone(), q.clone()));
    }

    Ok(ContinuedFractionExpansion {
        integer_part,
        quotients,
        convergents,
        lookahead,
        terminated,
    })
}

type Mat = [BigUint; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

fn product(quotients: &[u64]) -> Mat {
    if quotients.len() <= 48 {
        let mut m: Mat = [BigUint::one(), BigUint::zero(), BigUint::zero(), BigUint::one()];
        for &a in quotients {
            // [[x, y], [z, w]] · [[a, 1], [1, 0]] = [[xa + y, x], [za + w, z]]
            let [x, y, z, w] = m;
            m = [&x * a + y, x, &z * a + w, z];
        }
        return m;
    }
    let mid = quotients.len() / 2;
    mat_mul(&product(&quotients[..mid]), &product(&quotients[mid..]))
}

/// `Π [[a_i, 1], [1, 0]]` as `[p_n, p_{n−1}, q_n, q_{n−1}]`, by binary splitting.
///
/// With `quotients = [a₀, a₁, …, a_n]` the entries are the last two convergents.
pub fn convergent_matrix(quotients: &[u64]) -> [BigUint; 4] {
    product(quotients)
}
