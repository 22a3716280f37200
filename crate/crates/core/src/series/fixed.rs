//! Decimal fixed-point arithmetic on big-integer mantissas.
//!
//! A [`FixedPoint`] stores mant/10^scale exactly; every operation rounds to
//! the nearest representable value, so per-operation error is at most half an
//! ulp of the chosen scale. This is all the series work needs: term
//! generation stays exact (rational), and only accumulation rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn pow10(n: usize) -> BigInt {
    BigInt::from(10u32).pow(n as u32)
}

/// Nearest-integer division, halves rounded away from zero.
fn div_nearest(a: BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a, b.clone());
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    let half: BigInt = &b >> 1usize;
    if a.is_negative() {
        -(half - a).div_floor(&b)
    } else {
        (a + half).div_floor(&b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    mant: BigInt,
    scale: usize,
}

impl FixedPoint {
    pub fn zero(scale: usize) -> FixedPoint {
        FixedPoint {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn one(scale: usize) -> FixedPoint {
        FixedPoint {
            mant: pow10(scale),
            scale,
        }
    }

    pub fn from_int(n: i64, scale: usize) -> FixedPoint {
        FixedPoint {
            mant: BigInt::from(n) * pow10(scale),
            scale,
        }
    }

    pub fn from_ratio(r: &BigRational, scale: usize) -> FixedPoint {
        FixedPoint {
            mant: div_nearest(r.numer() * pow10(scale), r.denom()),
            scale,
        }
    }

    pub fn scale(&self) -> usize {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> FixedPoint {
        FixedPoint {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    /// Change scale, rounding when digits are dropped.
    pub fn rescale(&self, scale: usize) -> FixedPoint {
        let mant = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant * pow10(scale - self.scale),
            Ordering::Less => div_nearest(self.mant.clone(), &pow10(self.scale - scale)),
        };
        FixedPoint { mant, scale }
    }

    pub fn mul(&self, other: &FixedPoint) -> FixedPoint {
        assert_eq!(self.scale, other.scale, "mixed scales");
        FixedPoint {
            mant: div_nearest(&self.mant * &other.mant, &pow10(self.scale)),
            scale: self.scale,
        }
    }

    /// Multiply by an exact rational (one rounding at the end).
    pub fn mul_ratio(&self, r: &BigRational) -> FixedPoint {
        FixedPoint {
            mant: div_nearest(&self.mant * r.numer(), r.denom()),
            scale: self.scale,
        }
    }

    pub fn div(&self, other: &FixedPoint) -> FixedPoint {
        assert_eq!(self.scale, other.scale, "mixed scales");
        assert!(!other.is_zero(), "division by zero");
        FixedPoint {
            mant: div_nearest(&self.mant * pow10(self.scale), &other.mant),
            scale: self.scale,
        }
    }

    /// Square root of a non-negative value (floor at one extra guard digit).
    pub fn sqrt(&self) -> FixedPoint {
        assert!(!self.mant.is_negative(), "sqrt of negative value");
        let guard = 2usize;
        let wide = &self.mant * pow10(self.scale + 2 * guard);
        FixedPoint {
            mant: wide.sqrt(),
            scale: self.scale + guard,
        }
        .rescale(self.scale)
    }

    pub fn cmp_abs(&self, other: &FixedPoint) -> Ordering {
        assert_eq!(self.scale, other.scale, "mixed scales");
        self.mant.abs().cmp(&other.mant.abs())
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.scale.saturating_sub(17);
        let reduced = &self.mant / pow10(shift);
        reduced.to_f64().unwrap_or(f64::INFINITY) / 10f64.powi((self.scale - shift) as i32)
    }

    /// Decimal digit string, e.g. "-0.25000" at scale 5.
    pub fn to_decimal_string(&self) -> String {
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let digits = self.mant.abs().to_string();
        if self.scale == 0 {
            return format!("{sign}{digits}");
        }
        let pad = if digits.len() <= self.scale {
            "0".repeat(self.scale - digits.len() + 1) + &digits
        } else {
            digits
        };
        let (int, frac) = pad.split_at(pad.len() - self.scale);
        format!("{sign}{int}.{frac}")
    }
}

impl Add for &FixedPoint {
    type Output = FixedPoint;
    fn add(self, other: &FixedPoint) -> FixedPoint {
        assert_eq!(self.scale, other.scale, "mixed scales");
        FixedPoint {
            mant: &self.mant + &other.mant,
            scale: self.scale,
        }
    }
}

impl Sub for &FixedPoint {
    type Output = FixedPoint;
    fn sub(self, other: &FixedPoint) -> FixedPoint {
        assert_eq!(self.scale, other.scale, "mixed scales");
        FixedPoint {
            mant: &self.mant - &other.mant,
            scale: self.scale,
        }
    }
}

impl Neg for &FixedPoint {
    type Output = FixedPoint;
    fn neg(self) -> FixedPoint {
        FixedPoint {
            mant: -&self.mant,
            scale: self.scale,
        }
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// atan(1/x)·10^scale by the Gregory series, truncated terms rounded down.
fn atan_inv(x: u64, scale: usize) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = pow10(scale) / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1u64;
    loop {
        term /= &x2;
        if term.is_zero() {
            return sum;
        }
        let contrib = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        k += 1;
    }
}

/// π by Machin's formula, 16·atan(1/5) − 4·atan(1/239).
pub fn pi(scale: usize) -> FixedPoint {
    let work = scale + 10;
    let mant = atan_inv(5, work) * 16 - atan_inv(239, work) * 4;
    FixedPoint { mant, scale: work }.rescale(scale)
}

/// √n for a small non-negative integer.
pub fn sqrt_int(n: u64, scale: usize) -> FixedPoint {
    FixedPoint::from_int(n as i64, scale).sqrt()
}

/// Complex value on two fixed-point components of a common scale.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedComplex {
    pub re: FixedPoint,
    pub im: FixedPoint,
}

impl FixedComplex {
    pub fn zero(scale: usize) -> FixedComplex {
        FixedComplex {
            re: FixedPoint::zero(scale),
            im: FixedPoint::zero(scale),
        }
    }

    pub fn real(re: FixedPoint) -> FixedComplex {
        let scale = re.scale();
        FixedComplex {
            re,
            im: FixedPoint::zero(scale),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn mul(&self, other: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &self.re.mul(&other.re) - &self.im.mul(&other.im),
            im: &self.re.mul(&other.im) + &self.im.mul(&other.re),
        }
    }

    pub fn norm_sqr(&self) -> FixedPoint {
        &self.re.mul(&self.re) + &self.im.mul(&self.im)
    }

    /// Reciprocal, computed at doubled scale so the squared norm of a value
    /// near the ulp cannot underflow to zero.
    pub fn recip(&self) -> FixedComplex {
        assert!(!self.is_zero(), "reciprocal of zero");
        let s = self.re.scale();
        let wide = self.rescale(2 * s + 4);
        let d = wide.norm_sqr();
        FixedComplex {
            re: wide.re.div(&d).rescale(s),
            im: (-&wide.im).div(&d).rescale(s),
        }
    }

    pub fn rescale(&self, scale: usize) -> FixedComplex {
        FixedComplex {
            re: self.re.rescale(scale),
            im: self.im.rescale(scale),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.norm_sqr().to_f64().max(0.0).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ratio_roundtrip_and_rounding() {
        let x = FixedPoint::from_ratio(&br(1, 3), 5);
        assert_eq!(x.to_decimal_string(), "0.33333");
        let y = FixedPoint::from_ratio(&br(2, 3), 5);
        assert_eq!(y.to_decimal_string(), "0.66667");
        let z = FixedPoint::from_ratio(&br(-1, 8), 2);
        assert_eq!(z.to_decimal_string(), "-0.13");
    }

    #[test]
    fn arithmetic_spot_checks() {
        let a = FixedPoint::from_ratio(&br(3, 2), 10);
        let b = FixedPoint::from_ratio(&br(-1, 4), 10);
        assert_eq!((&a + &b).to_decimal_string(), "1.2500000000");
        assert_eq!(a.mul(&b).to_decimal_string(), "-0.3750000000");
        assert_eq!(a.div(&b).to_decimal_string(), "-6.0000000000");
        assert_eq!(a.mul_ratio(&br(2, 3)).to_decimal_string(), "1.0000000000");
    }

    #[test]
    fn sqrt_matches_known_digits() {
        let two = FixedPoint::from_int(2, 30);
        assert_eq!(
            two.sqrt().to_decimal_string(),
            "1.414213562373095048801688724210"
        );
        assert_eq!(
            sqrt_int(7, 40).to_decimal_string(),
            "2.6457513110645905905016157536392604257103"
        );
    }

    #[test]
    fn pi_matches_known_digits() {
        assert_eq!(
            pi(60).to_decimal_string(),
            "3.141592653589793238462643383279502884197169399375105820974945"
        );
        assert_eq!(pi(8).to_decimal_string(), "3.14159265");
    }

    #[test]
    fn rescale_rounds() {
        let x = FixedPoint::from_ratio(&br(2, 3), 8);
        assert_eq!(x.rescale(3).to_decimal_string(), "0.667");
        assert_eq!(x.rescale(10).to_decimal_string(), "0.6666666700");
    }

    #[test]
    fn complex_algebra() {
        let s = 20;
        let i = FixedComplex {
            re: FixedPoint::zero(s),
            im: FixedPoint::one(s),
        };
        let sq = i.mul(&i);
        assert_eq!(sq.re, FixedPoint::from_int(-1, s));
        assert!(sq.im.is_zero());
        let z = FixedComplex {
            re: FixedPoint::from_ratio(&br(3, 1), s),
            im: FixedPoint::from_ratio(&br(4, 1), s),
        };
        assert_eq!(z.norm_sqr(), FixedPoint::from_int(25, s));
        let w = z.recip();
        let back = w.mul(&z);
        assert_eq!((&back.re - &FixedPoint::one(s)).abs().to_f64(), 0.0);
    }

    #[test]
    fn to_f64_on_large_scales() {
        let x = FixedPoint::from_ratio(&br(1, 4), 120);
        assert!((x.to_f64() - 0.25).abs() < 1e-15);
    }
}
