//! Text forms of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};

use crate::enumeration::Rat;
use crate::error::{Error, Result};

/// `"p/q"`, always with an explicit denominator.
pub fn fraction(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or an integer `"p"`. Signs are allowed on the numerator.
pub fn parse_fraction(s: &str) -> Result<Rat> {
    let bad = |message: String| Error::Format { context: format!("fraction {s:?}"), message };
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|e| bad(format!("numerator: {e}")))?;
    let q: BigInt = q.parse().map_err(|e| bad(format!("denominator: {e}")))?;
    if q.is_zero() {
        return Err(bad("zero denominator".into()));
    }
    Ok(Rat::new(p, q))
}

/// Decimal rendering with `places` fractional digits, rounded half to even.
/// Display only; the exact value is the fraction.
pub fn decimal(r: &Rat, places: usize) -> String {
    let scale: BigInt = Pow::pow(BigInt::from(10u32), places as u64);
    let scaled = r.abs() * Rat::from_integer(scale.clone());
    let (q, rem): (BigInt, BigInt) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2u32;
    let q = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal if q.is_odd() => q + 1,
        _ => q,
    };
    let (int, frac) = q.div_rem(&scale);
    let sign = if r.is_negative() && !(int.is_zero() && frac.is_zero()) { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>places$}", frac.to_string())
    }
}
