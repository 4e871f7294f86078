//! Exact rational scalars.
//!
//! All optimization and bound arithmetic in this crate is exact: every value
//! is a `BigRational` kept in lowest terms with a positive denominator, which
//! `num` guarantees on construction. No floating point appears anywhere on
//! the solver path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`; intended for literals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as an exact rational.
pub fn int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"` with arbitrary-precision parts.
///
/// Decimal notation is rejected: callers that need `0.5` must write `1/2`,
/// so no value is ever silently rounded.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |msg: &str| Error::Input(format!("invalid fraction {s:?}: {msg}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| bad("expected an integer or p/q with integer parts"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| bad("expected an integer or p/q with integer parts"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

/// True when the value is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The value as `usize`, if it is a nonnegative integer that fits.
pub fn to_usize(r: &Rat) -> Option<usize> {
    if is_integer(r) && !r.is_negative() {
        r.numer().to_usize()
    } else {
        None
    }
}
