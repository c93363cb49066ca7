use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Returns `(g, s, t)` with `a·s + b·t = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

pub fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

pub fn isqrt_u128(n: u128) -> u128 {
    n.isqrt()
}

/// `lcm(1, 2, …, m+1)`.
pub fn lcm_range(m: u32) -> BigUint {
    let mut acc = BigUint::one();
    for j in 1..=(m as u64 + 1) {
        acc = acc.lcm(&BigUint::from(j));
    }
    acc
}

/// Number of primes `≤ n`.
pub fn prime_count(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().filter(|&&p| p).count() as u64
}

/// The bound `log lcm(1..m+1) ≤ π(m+1)·log(m+1)`, decided exactly as
/// `lcm(1..m+1) ≤ (m+1)^{π(m+1)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LcmLogBound {
    pub m: u32,
    pub lcm: BigUint,
    pub prime_count: u64,
    pub log_lcm: f64,
    pub log_bound: f64,
    pub holds: bool,
}

pub fn lcm_log_bound(m: u32) -> LcmLogBound {
    let lcm = lcm_range(m);
    let top = m as u64 + 1;
    let pi = prime_count(top);
    let power: BigUint = BigUint::from(top).pow(pi);
    let log_lcm = exact_ln(&lcm).expect("lcm is positive");
    LcmLogBound {
        m,
        holds: lcm <= power,
        lcm,
        prime_count: pi,
        log_lcm,
        log_bound: pi as f64 * (top as f64).ln(),
    }
}

/// Natural log of a big integer to double precision.
pub(crate) fn exact_ln(x: &BigUint) -> Option<f64> {
    use num_traits::ToPrimitive;
    if x.bits() == 0 {
        return None;
    }
    let shift = x.bits().saturating_sub(64);
    let top = (x >> shift).to_f64()?;
    Some(top.ln() + shift as f64 * std::f64::consts::LN_2)
}
