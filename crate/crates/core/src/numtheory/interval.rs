use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Closed interval `[lo, hi]` with exact rational endpoints.
///
/// Every operation returns an enclosure of all results for operands drawn
/// from the input intervals, so comparisons made on the endpoints are
/// certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        if cmp_ratio(&a, &b) != Ordering::Greater {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(x: impl Into<BigInt>) -> Self {
        Self::point(BigRational::from_integer(x.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Upper bound on `|x|`.
    pub fn abs_hi(&self) -> BigRational {
        max_ratio(self.lo.abs(), self.hi.abs())
    }

    /// Lower bound on `|x|`.
    pub fn abs_lo(&self) -> BigRational {
        if self.contains_zero() {
            BigRational::zero()
        } else {
            min_ratio(self.lo.abs(), self.hi.abs())
        }
    }

    /// `1/x`; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Self::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        ratio_to_f64(&self.midpoint())
    }

    pub fn lo_f64(&self) -> f64 {
        ratio_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        ratio_to_f64(&self.hi)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.lo * k, &self.hi * k)
    }
}

/// Cross-multiplied comparison. `Ord` on `BigRational` recurses along the
/// continued fraction and overflows the stack on long shared prefixes.
pub(crate) fn cmp_ratio(a: &BigRational, b: &BigRational) -> Ordering {
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

fn min_ratio(a: BigRational, b: BigRational) -> BigRational {
    if cmp_ratio(&a, &b) == Ordering::Greater { b } else { a }
}

fn max_ratio(a: BigRational, b: BigRational) -> BigRational {
    if cmp_ratio(&a, &b) == Ordering::Less { b } else { a }
}

/// Nearest double; saturates to ±∞ for huge magnitudes and to 0 for tiny ones.
pub(crate) fn ratio_to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to a scaled quotient for values beyond f64's direct range.
    let num_bits = x.numer().bits() as i64;
    let den_bits = x.denom().bits() as i64;
    let shift = num_bits - den_bits;
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    if shift > 1100 {
        return sign * f64::INFINITY;
    }
    if shift < -1100 {
        return 0.0;
    }
    let scaled = if shift > 0 {
        BigRational::new(x.numer().abs(), x.denom() << (shift as usize))
    } else {
        BigRational::new(x.numer().abs() << ((-shift) as usize), x.denom().clone())
    };
    sign * scaled.to_f64().unwrap_or(1.0) * 2f64.powi(shift as i32)
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().cloned().reduce(min_ratio).unwrap();
        let hi = products.iter().cloned().reduce(max_ratio).unwrap();
        RationalInterval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_encloses_samples() {
        let a = RationalInterval::new(r(-1, 2), r(3, 4));
        let b = RationalInterval::new(r(2, 3), r(5, 3));
        let prod = &a * &b;
        assert_eq!(prod.lo(), &r(-5, 6));
        assert_eq!(prod.hi(), &r(5, 4));
        let diff = &a - &b;
        assert_eq!(diff.lo(), &r(-13, 6));
        assert_eq!(diff.hi(), &r(1, 12));
        assert!(a.recip().is_none());
        let inv = b.recip().unwrap();
        assert_eq!(inv.lo(), &r(3, 5));
        assert_eq!(inv.hi(), &r(3, 2));
        assert_eq!(a.abs_lo(), r(0, 1));
        assert_eq!(a.abs_hi(), r(3, 4));
    }

    #[test]
    fn deep_comparisons() {
        // consecutive Fibonacci ratios share a continued fraction of length ~3000
        let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
        for _ in 0..3000 {
            (a, b) = (b.clone(), a + b);
        }
        let x = BigRational::new(b.clone(), a.clone());
        let y = BigRational::new(&b + &a, b.clone());
        let i = RationalInterval::new(x.clone(), y.clone());
        let o = cmp_ratio(&x, &y);
        assert_eq!(o == Ordering::Less, (&x - &y).is_negative());
        assert_eq!(i.lo(), if o == Ordering::Less { &x } else { &y });
    }

    #[test]
    fn huge_ratio_to_float() {
        let big = BigRational::from_integer(BigInt::from(10).pow(400u32));
        assert_eq!(ratio_to_f64(&big), f64::INFINITY);
        let tiny = big.recip();
        assert_eq!(ratio_to_f64(&tiny), 0.0);
        let mid = BigRational::new(BigInt::from(10).pow(300u32) * 3, BigInt::from(10).pow(299u32));
        assert!((ratio_to_f64(&mid) - 30.0).abs() < 1e-12);
    }
}
