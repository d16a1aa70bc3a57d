//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; both invariants are maintained by the backing
//! implementation on every operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational.  Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-3/2"`, `"7"`, `"0"`.  Used by the JSON presentation loaders.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    t.parse::<Rat>()
        .map_err(|e| Error::InvalidInput(format!("malformed rational literal {t:?}: {e}")))
}

/// `-1` raised to an integer power, with the usual parity rule.
pub fn neg_one_pow(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Formats a rational for report output; integers print without a slash.
pub fn rat_string(x: &Rat) -> String {
    x.to_string()
}

/// True when `x` is a (possibly negative) integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Signum as an i32 for canonical printing decisions.
pub fn sign_of(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
