//! Rational arithmetic helpers and univariate root finding.

pub mod roots;
pub mod upoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rat;

pub use roots::{isolate_complex_roots, rational_roots, refine_complex_roots, RootBox};

/// Division that reports a zero divisor instead of panicking.
pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Parse `"p/q"` or `"p"` with an optional leading minus sign.
pub fn parse_rat(src: &str) -> Result<Rat> {
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {src:?}"),
    };
    let (num, den) = match src.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (src, None),
    };
    let digits = |s: &str, signed: bool| {
        let body = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) {
        return Err(bad("malformed numerator"));
    }
    let n: BigInt = num.parse().map_err(|_| bad("malformed numerator"))?;
    let d: BigInt = match den {
        Some(d) if digits(d, false) => d.parse().map_err(|_| bad("malformed denominator"))?,
        Some(_) => return Err(bad("malformed denominator")),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form, `"p/q"` or `"p"`.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Nearest dyadic rational `k / 2^bits` at or above `r`.
pub(crate) fn dyadic_ceil(r: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = r * Rat::from_integer(scale.clone());
    Rat::new(scaled.ceil().to_integer(), scale)
}

pub(crate) fn dyadic_round(r: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = r * Rat::from_integer(scale.clone());
    Rat::new(scaled.round().to_integer(), scale)
}

/// Rational lower bound on `sqrt(q)` with error at most `2^-bits`.
pub(crate) fn sqrt_lower(q: &Rat, bits: u32) -> Rat {
    if q <= &Rat::zero() {
        return Rat::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * Rat::from_integer(scale)).floor().to_integer();
    Rat::new(scaled.sqrt(), BigInt::one() << bits)
}

/// Rational upper bound on `sqrt(q)` with error at most `2^-bits`.
pub(crate) fn sqrt_upper(q: &Rat, bits: u32) -> Rat {
    if q <= &Rat::zero() {
        return Rat::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * Rat::from_integer(scale)).ceil().to_integer();
    Rat::new(scaled.sqrt() + BigInt::one(), BigInt::one() << bits)
}
