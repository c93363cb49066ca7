use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{cmp_ratio, RationalInterval};
use crate::{Error, Result};

/// The representable classes of a positive real `γ`.
///
/// Textual grammar: `rat:<p>/<q>`, `sqrt:<d>`, `e`, and `cf:<a1>,<a2>,…`
/// optionally preceded by `int:<n>;` for the integer part (default 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaPreset {
    Rational(BigRational),
    /// `√d`; a perfect square `d` behaves as the integer `√d`.
    Sqrt(u64),
    /// Euler's number, through its quotient pattern `[2; 1, 2, 1, 1, 4, 1, 1, 6, …]`.
    E,
    /// The finite continued fraction `[integer_part; quotients…]`.
    Quotients {
        integer_part: BigInt,
        quotients: Vec<BigUint>,
    },
}

impl GammaPreset {
    pub fn rational(p: i64, q: i64) -> Self {
        GammaPreset::Rational(BigRational::new(p.into(), q.into()))
    }

    /// Exact value when `γ` is rational.
    pub fn rational_value(&self) -> Option<BigRational> {
        match self {
            GammaPreset::Rational(r) => Some(r.clone()),
            GammaPreset::Sqrt(d) => {
                let s = d.sqrt();
                (s * s == *d).then(|| BigRational::from_integer(s.into()))
            }
            GammaPreset::E => None,
            GammaPreset::Quotients {
                integer_part,
                quotients,
            } => {
                let mut value = BigRational::zero();
                for a in quotients.iter().rev() {
                    let a = BigRational::from_integer(BigInt::from(a.clone()));
                    value = if value.is_zero() { a } else { a + value.recip() };
                }
                let base = BigRational::from_integer(integer_part.clone());
                Some(if value.is_zero() {
                    base
                } else {
                    base + value.recip()
                })
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.rational_value().is_some()
    }

    /// Exact `γ²` when it is rational (rationals and square roots).
    pub fn square_value(&self) -> Option<BigRational> {
        match self {
            GammaPreset::Sqrt(d) => Some(BigRational::from_integer((*d).into())),
            other => other.rational_value().map(|r| &r * &r),
        }
    }

    /// `[γ]`.
    pub fn integer_part(&self) -> BigInt {
        match self {
            GammaPreset::Rational(r) => r.floor().to_integer(),
            GammaPreset::Sqrt(d) => d.sqrt().into(),
            GammaPreset::E => 2.into(),
            GammaPreset::Quotients { integer_part, .. } => integer_part.clone(),
        }
    }

    pub fn validate_positive(&self) -> Result<()> {
        let positive = match self {
            GammaPreset::Rational(r) => r.is_positive(),
            GammaPreset::Sqrt(d) => *d > 0,
            GammaPreset::E => true,
            GammaPreset::Quotients { .. } => self.rational_value().is_some_and(|v| v.is_positive()),
        };
        if positive {
            Ok(())
        } else {
            Err(Error::InvalidPreset(format!("{self} is not positive")))
        }
    }

    /// Partial quotients `a₁, a₂, …` after the integer part.
    pub fn quotients(&self) -> QuotientStream {
        let state = match self {
            GammaPreset::Rational(r) => {
                let a0 = r.floor().to_integer();
                let rem = r.numer() - &a0 * r.denom();
                State::Euclid {
                    num: r.denom().clone(),
                    den: rem,
                }
            }
            GammaPreset::Sqrt(d) => {
                let a0 = d.sqrt();
                if a0 * a0 == *d {
                    State::Done
                } else {
                    State::Surd {
                        d: *d as u128,
                        a0: a0 as u128,
                        m: 0,
                        q: 1,
                        a: a0 as u128,
                    }
                }
            }
            GammaPreset::E => State::E { index: 0 },
            GammaPreset::Quotients { quotients, .. } => State::List {
                items: quotients.clone(),
                pos: 0,
            },
        };
        QuotientStream { state }
    }

    /// Rational enclosure of `γ` with width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> RationalInterval {
        if let Some(v) = self.rational_value() {
            return RationalInterval::point(v);
        }
        match self {
            GammaPreset::Sqrt(d) => {
                let scaled = BigUint::from(*d) << (2 * bits as usize);
                let s = scaled.sqrt();
                let den = BigInt::one() << bits as usize;
                RationalInterval::new(
                    BigRational::new(BigInt::from(s.clone()), den.clone()),
                    BigRational::new(BigInt::from(s) + 1, den),
                )
            }
            GammaPreset::E => e_enclosure(bits),
            _ => unreachable!("rational presets handled above"),
        }
    }

    /// Exact comparison of `γ` with a rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if let Some(v) = self.rational_value() {
            return cmp_ratio(&v, x);
        }
        match self {
            GammaPreset::Sqrt(d) => {
                if x.is_negative() {
                    return Ordering::Greater;
                }
                let lhs = BigInt::from(*d) * x.denom() * x.denom();
                let rhs = x.numer() * x.numer();
                lhs.cmp(&rhs)
            }
            GammaPreset::E => {
                // e is irrational, so refinement always separates it from x.
                let mut bits = 64;
                loop {
                    let enc = self.enclosure(bits);
                    if cmp_ratio(x, enc.lo()) == Ordering::Less {
                        return Ordering::Greater;
                    }
                    if cmp_ratio(x, enc.hi()) == Ordering::Greater {
                        return Ordering::Less;
                    }
                    bits *= 2;
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(80).midpoint_f64()
    }
}

/// `e ∈ [A/n!, A/n! + 1/(n·n!)]` with `A = Σ_{k≤n} n!/k!`.
fn e_enclosure(bits: u32) -> RationalInterval {
    let mut n = 2u32;
    let mut fact = BigUint::from(2u32);
    let target = BigUint::one() << bits as usize;
    while &fact * n < target {
        n += 1;
        fact *= n;
    }
    // A = Σ_{k=0}^{n} n!/k!, accumulated from k = n downward
    let mut term = BigUint::one();
    let mut acc = BigUint::one();
    for k in (1..=n).rev() {
        term *= k;
        acc += &term;
    }
    let fact = BigInt::from(fact);
    let acc = BigInt::from(acc);
    let lo = BigRational::new(acc.clone(), fact.clone());
    let hi = BigRational::new(acc * n + 1, fact * n);
    RationalInterval::new(lo, hi)
}

#[derive(Debug, Clone)]
enum State {
    Euclid {
        num: BigInt,
        den: BigInt,
    },
    Surd {
        d: u128,
        a0: u128,
        m: u128,
        q: u128,
        a: u128,
    },
    E {
        index: u64,
    },
    List {
        items: Vec<BigUint>,
        pos: usize,
    },
    Done,
}

/// Lazy stream of partial quotients; ends when a rational expansion terminates.
#[derive(Debug, Clone)]
pub struct QuotientStream {
    state: State,
}

impl QuotientStream {
    /// `a_n` of e for `n ≥ 1`.
    pub fn e_quotient(n: u64) -> u64 {
        if n % 3 == 2 {
            2 * (n + 1) / 3
        } else {
            1
        }
    }
}

impl Iterator for QuotientStream {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        match &mut self.state {
            State::Done => None,
            State::Euclid { num, den } => {
                if den.is_zero() {
                    self.state = State::Done;
                    return None;
                }
                let (a, r) = num.div_mod_floor(den);
                *num = std::mem::take(den);
                *den = r;
                Some(a.to_biguint().expect("positive quotient"))
            }
            State::Surd { d, a0, m, q, a } => {
                let next_m = *q * *a - *m;
                let next_q = (*d - next_m * next_m) / *q;
                let next_a = (*a0 + next_m) / next_q;
                *m = next_m;
                *q = next_q;
                *a = next_a;
                Some(BigUint::from(next_a))
            }
            State::E { index } => {
                *index += 1;
                Some(BigUint::from(QuotientStream::e_quotient(*index)))
            }
            State::List { items, pos } => {
                let item = items.get(*pos).cloned();
                *pos += 1;
                item
            }
        }
    }
}

impl fmt::Display for GammaPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaPreset::Rational(r) => write!(f, "rat:{}/{}", r.numer(), r.denom()),
            GammaPreset::Sqrt(d) => write!(f, "sqrt:{d}"),
            GammaPreset::E => write!(f, "e"),
            GammaPreset::Quotients {
                integer_part,
                quotients,
            } => {
                if !integer_part.is_zero() {
                    write!(f, "int:{integer_part};")?;
                }
                let list: Vec<String> = quotients.iter().map(|q| q.to_string()).collect();
                write!(f, "cf:{}", list.join(","))
            }
        }
    }
}

impl FromStr for GammaPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPreset(s.to_string());
        let s = s.trim();
        if s == "e" {
            return Ok(GammaPreset::E);
        }
        if let Some(rest) = s.strip_prefix("rat:") {
            let (p, q) = rest.split_once('/').unwrap_or((rest, "1"));
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(GammaPreset::Rational(BigRational::new(p, q)));
        }
        if let Some(rest) = s.strip_prefix("sqrt:") {
            let d: u64 = rest.trim().parse().map_err(|_| bad())?;
            return Ok(GammaPreset::Sqrt(d));
        }
        let mut integer_part = BigInt::zero();
        let mut quotients = None;
        for part in s.split(';') {
            let part = part.trim();
            if let Some(n) = part.strip_prefix("int:") {
                integer_part = n.trim().parse().map_err(|_| bad())?;
            } else if let Some(list) = part.strip_prefix("cf:") {
                let parsed = list
                    .split(',')
                    .map(|a| a.trim().parse::<BigUint>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if parsed.iter().any(|a| a.is_zero()) {
                    return Err(bad());
                }
                quotients = Some(parsed);
            } else {
                return Err(bad());
            }
        }
        match quotients {
            Some(quotients) => Ok(GammaPreset::Quotients {
                integer_part,
                quotients,
            }),
            None => Err(bad()),
        }
    }
}

impl GammaPreset {
    /// Approximate `γ` from a quotient prefix, for diagnostics only.
    pub fn approx_from_quotients(&self, depth: usize) -> f64 {
        let mut qs: Vec<f64> = self
            .quotients()
            .take(depth)
            .map(|a| a.to_f64().unwrap_or(f64::INFINITY))
            .collect();
        let mut v = 0.0;
        while let Some(a) = qs.pop() {
            v = if v == 0.0 { a } else { a + 1.0 / v };
        }
        let base = self.integer_part().to_f64().unwrap_or(0.0);
        if v == 0.0 {
            base
        } else {
            base + 1.0 / v
        }
    }
}
