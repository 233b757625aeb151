use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::rational::{format_rational, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Sign of `(-1)^e`.
    pub fn of_power(e: i64) -> Sign {
        if e.rem_euclid(2) == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// Either an exact rational or an interval enclosure of an irrational value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Exact(Rational),
    Approx(Interval),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn to_interval(&self, bits: u32) -> Interval {
        match self {
            Scalar::Exact(r) => Interval::from_rational(r, bits),
            Scalar::Approx(i) => i.clone(),
        }
    }

    pub fn bits(&self) -> Option<u32> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Approx(i) => Some(i.bits()),
        }
    }

    /// Exact sign for rationals; for intervals the sign if the enclosure
    /// excludes zero, else [`Error::IndeterminateSign`].
    pub fn sign(&self) -> Result<Sign> {
        match self {
            Scalar::Exact(r) => Ok(Sign::of(r)),
            Scalar::Approx(i) => i.sign().ok_or(Error::IndeterminateSign { bits: i.bits() }),
        }
    }

    /// Lower end of the value (the value itself when exact).
    pub fn lower(&self) -> Rational {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Approx(i) => i.lower(),
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        match self {
            Scalar::Exact(x) => x == r,
            Scalar::Approx(i) => i.contains(r),
        }
    }

    fn binary(
        &self,
        other: &Scalar,
        exact: impl FnOnce(&Rational, &Rational) -> Rational,
        approx: impl FnOnce(&Interval, &Interval) -> Interval,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            (Scalar::Approx(a), Scalar::Approx(b)) => Scalar::Approx(approx(a, b)),
            (Scalar::Exact(a), Scalar::Approx(b)) => {
                Scalar::Approx(approx(&Interval::from_rational(a, b.bits()), b))
            }
            (Scalar::Approx(a), Scalar::Exact(b)) => {
                Scalar::Approx(approx(a, &Interval::from_rational(b, a.bits())))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                if b.is_zero() {
                    Err(Error::SingularMatrix)
                } else {
                    Ok(Scalar::Exact(a / b))
                }
            }
            _ => {
                let bits = self.bits().into_iter().chain(other.bits()).max().unwrap_or(128);
                Ok(Scalar::Approx(self.to_interval(bits).div(&other.to_interval(bits))?))
            }
        }
    }

    pub fn sqrt(&self, bits: u32) -> Result<Scalar> {
        Ok(Scalar::Approx(self.to_interval(bits).sqrt()?))
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<Interval> for Scalar {
    fn from(i: Interval) -> Self {
        Scalar::Approx(i)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b| a.add(b))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b| a.sub(b))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b| a.mul(b))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(i) => Scalar::Approx(i.neg()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => f.write_str(&format_rational(r)),
            Scalar::Approx(i) => write!(
                f,
                "[{}, {}]",
                format_rational(&i.lower()),
                format_rational(&i.upper())
            ),
        }
    }
}

/// Precision schedule for interval re-evaluation: start at `start_bits`,
/// double on an indeterminate sign, give up above `cap_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start_bits: 128, cap_bits: 4096 }
    }
}

impl PrecisionPolicy {
    pub fn schedule(self) -> impl Iterator<Item = u32> {
        let cap = self.cap_bits.max(self.start_bits);
        core::iter::successors(Some(self.start_bits.max(1)), move |&b| {
            (b < cap).then(|| (b.saturating_mul(2)).min(cap))
        })
    }
}

/// Sign of a quantity re-evaluated by `eval` at increasing precision until the
/// enclosure excludes zero. Exact results return immediately.
pub fn certified_sign(
    policy: PrecisionPolicy,
    mut eval: impl FnMut(u32) -> Result<Scalar>,
) -> Result<Sign> {
    let mut last = policy.start_bits;
    for bits in policy.schedule() {
        last = bits;
        match eval(bits) {
            Ok(s) => match s.sign() {
                Ok(sign) => return Ok(sign),
                Err(Error::IndeterminateSign { .. }) => continue,
                Err(e) => return Err(e),
            },
            Err(Error::IndeterminateSign { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::IndeterminateSign { bits: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, ratio};
    use alloc::vec::Vec;

    #[test]
    fn exact_signs() {
        assert_eq!(Scalar::Exact(ratio(-7, 3)).sign().unwrap(), Sign::Negative);
        assert_eq!(Scalar::Exact(int(0)).sign().unwrap(), Sign::Zero);
    }

    #[test]
    fn mixed_arithmetic_promotes() {
        let a = Scalar::Exact(ratio(1, 3));
        let b = Scalar::Approx(Interval::from_rational(&ratio(1, 3), 96));
        let s = &a + &b;
        assert!(!s.is_exact());
        assert!(s.contains(&ratio(2, 3)));
        assert_eq!(s.bits(), Some(96));
        let one = Scalar::Exact(int(1));
        let p = &(&a * &Scalar::Exact(int(3))) - &one;
        assert_eq!(p, Scalar::zero());
    }

    #[test]
    fn schedule_doubles_to_cap() {
        let s: Vec<u32> = PrecisionPolicy::default().schedule().collect();
        assert_eq!(s, [128, 256, 512, 1024, 2048, 4096]);
        let s: Vec<u32> = PrecisionPolicy { start_bits: 100, cap_bits: 300 }.schedule().collect();
        assert_eq!(s, [100, 200, 300]);
    }

    #[test]
    fn sqrt8_minus_sqrt6_certified() {
        let sign = certified_sign(PrecisionPolicy::default(), |bits| {
            let a = Scalar::Exact(int(8)).sqrt(bits)?;
            let b = Scalar::Exact(int(6)).sqrt(bits)?;
            Ok(&a - &b)
        })
        .unwrap();
        assert_eq!(sign, Sign::Positive);
    }

    #[test]
    fn escalation_gives_up_on_true_zero() {
        let mut seen = Vec::new();
        let r = certified_sign(PrecisionPolicy { start_bits: 64, cap_bits: 256 }, |bits| {
            seen.push(bits);
            let a = Scalar::Exact(int(2)).sqrt(bits)?;
            Ok(&(&a * &a) - &Scalar::Exact(int(2)))
        });
        assert_eq!(r, Err(Error::IndeterminateSign { bits: 256 }));
        assert_eq!(seen, [64, 128, 256]);
    }
}
