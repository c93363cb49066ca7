use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Work allowance for factorization, counted in modular multiplications
/// (trial divisions count as one each). Deterministic, unlike a wall clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub max_steps: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            max_steps: 50_000_000,
        }
    }
}

struct Meter {
    left: u64,
}

impl Meter {
    fn spend(&mut self, n: u64) -> bool {
        if self.left < n {
            self.left = 0;
            false
        } else {
            self.left -= n;
            true
        }
    }
}

const TRIAL_LIMIT: u64 = 1 << 16;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic for every `u64`.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test to the first twelve prime bases.
fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Pollard–Brent on a composite `u64`.
fn brent_u64(n: u64, meter: &mut Meter) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
        let mut g = 1;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = m.min(r - k);
                if !meter.spend(2 * steps) {
                    return None;
                }
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn brent_big(n: &BigUint, meter: &mut Meter) -> Option<BigUint> {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return Some(two);
    }
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut y, mut r, mut q, m) = (two.clone(), 1u64, BigUint::one(), 64u64);
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = m.min(r - k);
                if !meter.spend(2 * steps) {
                    return None;
                }
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn split_big(n: BigUint, meter: &mut Meter, out: &mut Vec<BigUint>) -> bool {
    if n.is_one() {
        return true;
    }
    if let Some(small) = n.to_u64() {
        return split_u64(small, meter, out);
    }
    if is_probable_prime(&n) {
        out.push(n);
        return true;
    }
    match brent_big(&n, meter) {
        Some(d) => {
            let rest = &n / &d;
            split_big(d, meter, out) && split_big(rest, meter, out)
        }
        None => false,
    }
}

fn split_u64_raw(n: u64, meter: &mut Meter, out: &mut Vec<u64>) -> bool {
    if n == 1 {
        return true;
    }
    if is_prime_u64(n) {
        out.push(n);
        return true;
    }
    match brent_u64(n, meter) {
        Some(d) => split_u64_raw(d, meter, out) && split_u64_raw(n / d, meter, out),
        None => false,
    }
}

fn split_u64(n: u64, meter: &mut Meter, out: &mut Vec<BigUint>) -> bool {
    let mut primes = Vec::new();
    let ok = split_u64_raw(n, meter, &mut primes);
    out.extend(primes.into_iter().map(BigUint::from));
    ok
}

fn collect<T: Ord + Clone>(mut primes: Vec<T>) -> Vec<(T, u32)> {
    primes.sort();
    let mut out: Vec<(T, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Prime factorization `n = Π p^e` with ascending primes; `n = 1` gives `[]`.
pub fn factorize_u64(n: u64, budget: FactorBudget) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut meter = Meter {
        left: budget.max_steps,
    };
    let mut primes = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5] {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    let mut p = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while p < TRIAL_LIMIT && p * p <= rest {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
        p += wheel[i];
        i = (i + 1) % 8;
    }
    meter.spend(p / 4);
    if !split_u64_raw(rest, &mut meter, &mut primes) {
        return Err(Error::FactorizationBudget {
            target: n.to_string(),
        });
    }
    Ok(collect(primes))
}

/// Prime factorization of an arbitrary-precision integer: trial division,
/// then Miller–Rabin and Pollard–Brent on the cofactor, within `budget`.
pub fn factorize(n: &BigUint, budget: FactorBudget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small, budget)?
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect());
    }
    let mut meter = Meter {
        left: budget.max_steps,
    };
    let mut primes = Vec::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            primes.push(bp.clone());
            rest = q;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    meter.spend(p / 2);
    if !split_big(rest, &mut meter, &mut primes) {
        return Err(Error::FactorizationBudget {
            target: n.to_string(),
        });
    }
    Ok(collect(primes))
}

/// All signed divisors of a nonzero integer, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDivisorList {
    target: BigInt,
    divisors: Vec<BigInt>,
}

impl SignedDivisorList {
    pub fn target(&self) -> &BigInt {
        &self.target
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Positive half, ascending.
    pub fn positive(&self) -> &[BigInt] {
        &self.divisors[self.divisors.len() / 2..]
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }
}

pub(crate) fn expand_divisors(factors: &[(BigUint, u32)]) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let base = divs.len();
        let mut power = BigUint::one();
        for _ in 0..*e {
            power *= p;
            for i in 0..base {
                let d = &divs[i] * &power;
                divs.push(d);
            }
        }
    }
    divs.sort();
    divs
}

pub fn signed_divisors(p: &BigInt, budget: FactorBudget) -> Result<SignedDivisorList> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("signed divisors of 0".into()));
    }
    let factors = factorize(p.magnitude(), budget)?;
    let positive = expand_divisors(&factors);
    let mut divisors: Vec<BigInt> = positive
        .iter()
        .rev()
        .map(|d| BigInt::from_biguint(Sign::Minus, d.clone()))
        .collect();
    divisors.extend(positive.into_iter().map(BigInt::from));
    Ok(SignedDivisorList {
        target: p.clone(),
        divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_divisors(n: i64) -> Vec<i64> {
        let mut v: Vec<i64> = (1..=n.abs()).filter(|d| n % d == 0).flat_map(|d| [d, -d]).collect();
        v.sort();
        v
    }

    fn as_i64(list: &SignedDivisorList) -> Vec<i64> {
        list.divisors().iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_targets() {
        let b = FactorBudget::default();
        assert_eq!(as_i64(&signed_divisors(&1.into(), b).unwrap()), vec![-1, 1]);
        assert_eq!(as_i64(&signed_divisors(&6.into(), b).unwrap()), vec![-6, -3, -2, -1, 1, 2, 3, 6]);
        let l = signed_divisors(&648.into(), b).unwrap();
        assert_eq!(l.len(), 40);
        assert_eq!(as_i64(&l), trial_divisors(648));
        assert_eq!(l.positive().len(), 20);
        for n in [-1i64, -12, 97, 360, -5040, 9973 * 2] {
            assert_eq!(as_i64(&signed_divisors(&n.into(), b).unwrap()), trial_divisors(n), "{n}");
        }
        assert!(signed_divisors(&0.into(), b).is_err());
    }

    #[test]
    fn factors_semiprimes_and_powers() {
        let b = FactorBudget::default();
        let p = 1_000_000_007u64;
        let q = 998_244_353u64;
        assert_eq!(factorize_u64(p * q, b).unwrap(), vec![(q, 1), (p, 1)]);
        assert_eq!(factorize_u64(1 << 40, b).unwrap(), vec![(2, 40)]);
        let big = BigUint::from(p) * BigUint::from(q) * BigUint::from(4_294_967_311u64);
        let f = factorize(&big, b).unwrap();
        assert_eq!(f.len(), 3);
        let back: BigUint = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(back, big);
    }

    #[test]
    fn budget_is_enforced() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(1_000_000_009u64);
        let r = BigUint::from(4_294_967_311u64);
        let s = BigUint::from(4_294_967_357u64);
        let n = &p * &q * r * s;
        let tight = FactorBudget { max_steps: 1_000 };
        assert!(matches!(factorize(&n, tight), Err(Error::FactorizationBudget { .. })));
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &prime) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), prime, "{n}");
        }
    }
}
