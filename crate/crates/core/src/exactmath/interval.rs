use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use super::scalar::Sign;
use crate::{Error, Result};

/// Binary floating value `mantissa * 2^exp` with an unbounded mantissa.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: i64,
}

fn shl(x: &BigInt, by: u64) -> BigInt {
    x << by
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn new(mantissa: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mantissa, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        if let Some(tz) = self.mantissa.trailing_zeros() {
            if tz > 0 {
                self.mantissa >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> Sign {
        match self.mantissa.sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(shl(&self.mantissa, self.exp as u64))
        } else {
            Rational::new(self.mantissa.clone(), shl(&BigInt::one(), (-self.exp) as u64))
        }
    }

    /// Rounds to at most `bits` significant bits; `up` selects the direction
    /// toward positive infinity, otherwise toward negative infinity.
    pub fn round(&self, bits: u32, up: bool) -> Dyadic {
        let len = self.mantissa.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let shift = len - bits as u64;
        let divisor = shl(&BigInt::one(), shift);
        let m = if up {
            Integer::div_ceil(&self.mantissa, &divisor)
        } else {
            self.mantissa.div_floor(&divisor)
        };
        Dyadic::new(m, self.exp + shift as i64)
    }

    pub fn from_rational(r: &Rational, bits: u32, up: bool) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let num = r.numer();
        let den = r.denom();
        let e = num.bits() as i64 - den.bits() as i64 - bits as i64 - 2;
        let m = if e >= 0 {
            let d = shl(den, e as u64);
            if up {
                Integer::div_ceil(num, &d)
            } else {
                num.div_floor(&d)
            }
        } else {
            let n = shl(num, (-e) as u64);
            if up {
                Integer::div_ceil(&n, den)
            } else {
                n.div_floor(den)
            }
        };
        Dyadic::new(m, e).round(bits, up)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.min(other.exp);
        let a = shl(&self.mantissa, (self.exp - exp) as u64);
        let b = shl(&other.mantissa, (other.exp - exp) as u64);
        Dyadic::new(a + b, exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exp: self.exp }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &other.mantissa, self.exp + other.exp)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.min(other.exp);
        let a = shl(&self.mantissa, (self.exp - exp) as u64);
        let b = shl(&other.mantissa, (other.exp - exp) as u64);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Closed interval `[lo, hi]` with outward-rounded dyadic endpoints carrying
/// `bits` significant bits. Every operation returns an enclosure of the exact
/// real result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    bits: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, bits: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParams("interval with lo > hi".into()));
        }
        Ok(Interval { lo, hi, bits: bits.max(1) })
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(r, bits, false),
            hi: Dyadic::from_rational(r, bits, true),
            bits,
        }
    }

    /// Encloses the rational range `[lo, hi]`.
    pub fn from_bounds(lo: &Rational, hi: &Rational, bits: u32) -> Result<Self> {
        Interval::new(Dyadic::from_rational(lo, bits, false), Dyadic::from_rational(hi, bits, true), bits)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn upper(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn width(&self) -> Rational {
        self.upper() - self.lower()
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() != Sign::Positive && self.hi.signum() != Sign::Negative
    }

    /// The certified sign, or `None` when the enclosure straddles zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.signum() == Sign::Positive {
            Some(Sign::Positive)
        } else if self.hi.signum() == Sign::Negative {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    fn outward(lo: Dyadic, hi: Dyadic, bits: u32) -> Interval {
        Interval { lo: lo.round(bits, false), hi: hi.round(bits, true), bits }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let bits = self.bits.max(other.bits);
        Interval::outward(self.lo.add(&other.lo), self.hi.add(&other.hi), bits)
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), bits: self.bits }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let bits = self.bits.max(other.bits);
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Interval::outward(lo, hi, bits)
    }

    /// Reciprocal; fails when the enclosure contains zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::IndeterminateSign { bits: self.bits });
        }
        let one = Rational::one();
        let lo = &one / self.upper();
        let hi = &one / self.lower();
        Ok(Interval {
            lo: Dyadic::from_rational(&lo, self.bits, false),
            hi: Dyadic::from_rational(&hi, self.bits, true),
            bits: self.bits,
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self.mul(&other.recip()?))
    }

    /// Enclosure of the square root. Negative parts of the input are clipped;
    /// an interval lying entirely below zero is rejected.
    pub fn sqrt(&self) -> Result<Interval> {
        if self.hi.signum() == Sign::Negative {
            return Err(Error::InvalidParams("square root of a negative interval".into()));
        }
        let bits = self.bits;
        let lo = if self.lo.signum() == Sign::Negative { Dyadic::zero() } else { self.lo.clone() };
        let lo = isqrt_bound(&lo, bits, false);
        let hi = isqrt_bound(&self.hi, bits, true);
        Ok(Interval { lo, hi, bits })
    }

    /// Same enclosure re-rounded (or widened) to a different precision.
    pub fn with_bits(&self, bits: u32) -> Interval {
        Interval::outward(self.lo.clone(), self.hi.clone(), bits)
    }
}

/// sqrt(x) rounded down (`up = false`) or up to roughly `bits` bits.
fn isqrt_bound(x: &Dyadic, bits: u32, up: bool) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    let len = x.mantissa().bits() as i64;
    let exp = x.exp();
    // choose s with exp + 2s >= 0 and len + exp + 2s >= 2 bits + 4
    let target = (-exp).max(2 * bits as i64 + 4 - len - exp).max(0);
    let s = (target + 1) / 2;
    let total = exp + 2 * s;
    let n: BigUint = x.mantissa().magnitude() << total as u64;
    let mut r = n.sqrt();
    if up && &r * &r < n {
        r += 1u32;
    }
    Dyadic::new(BigInt::from(r), -s).round(bits, up)
}
