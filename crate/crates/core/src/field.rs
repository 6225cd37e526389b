use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact field of characteristic zero.
///
/// Every scalar here is exact: zero tests are decisions, not tolerances.
pub trait Field:
    Num + Neg<Output = Self> + Clone + Eq + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    /// Size proxy used to choose cheap pivots.
    fn height(&self) -> u64;

    fn is_negative(&self) -> bool;
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn height(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for Ratio<i64> {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn height(&self) -> u64 {
        (64 - self.numer().unsigned_abs().leading_zeros() + 64 - self.denom().unsigned_abs().leading_zeros()) as u64
    }

    fn is_negative(&self) -> bool {
        *self.numer() < 0
    }
}

/// `(-1)^k`.
pub fn sign<S: Field>(k: usize) -> S {
    if k % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Parse `"p/q"` or `"p"` into an exact scalar.
pub fn parse_scalar<S: Field>(text: &str) -> Option<S> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    let v = S::from_str(t).ok()?;
    if t.contains('/') {
        let den = t.split('/').nth(1)?.trim();
        if den.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return None;
        }
    }
    Some(v)
}
