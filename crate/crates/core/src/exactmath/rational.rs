use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime parts).
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, plain integers and decimal literals such as `"2.125"` or
/// `"1.5e-3"`. Decimal input is converted exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{whole}{frac}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if neg { -value } else { value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    Nearest,
}

/// Decimal rendering with `digits` significant digits in `d.ddde±x` form,
/// rounded in the requested direction.
pub fn to_decimal(r: &Rational, digits: usize, rounding: Rounding) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let ten = BigInt::from(10);
    let abs = r.abs();
    // 10^e <= |r| < 10^(e+1)
    let mut e = r.numer().abs().to_string().len() as i64 - r.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > abs {
        e -= 1;
    }
    while pow10(e + 1) <= abs {
        e += 1;
    }
    let scale = digits as i64 - 1 - e;
    let scaled = r * pow10(scale);
    let n = match rounding {
        Rounding::Down => scaled.numer().div_floor(scaled.denom()),
        Rounding::Up => num_integer::Integer::div_ceil(scaled.numer(), scaled.denom()),
        Rounding::Nearest => scaled.round().to_integer(),
    };
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let lead_exp = s.len() as i64 - 1 - scale;
    let trimmed = s.trim_end_matches('0');
    let (head, tail) = trimmed.split_at(1);
    let sign = if neg { "-" } else { "" };
    let mut out = format!("{sign}{head}");
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if lead_exp != 0 {
        out.push_str(&format!("e{lead_exp}"));
    }
    out
}
