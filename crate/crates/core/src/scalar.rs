//! Exact extended rationals: `Ratio<i64>` plus a distinguished infinity.
//!
//! Arithmetic is checked; an overflow panics instead of silently wrapping,
//! so every value that is produced is exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

pub type Rational = Ratio<i64>;

/// A non-negative exact rational or `+∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ext {
    Fin(Rational),
    Inf,
}

impl Ext {
    pub fn int(n: i64) -> Self {
        Ext::Fin(Rational::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Ext::Fin(Rational::new(n, d))
    }

    pub fn zero() -> Self {
        Ext::Fin(Rational::zero())
    }

    pub fn one() -> Self {
        Ext::Fin(Rational::one())
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Ext::Inf)
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            Ext::Fin(r) => Some(r),
            Ext::Inf => None,
        }
    }

    /// `self + other`, with `∞` absorbing.
    pub fn plus(self, other: Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(checked(a.checked_add(&b))),
            _ => Ext::Inf,
        }
    }

    /// Truncated subtraction `max(self - other, 0)`; `∞ ⊖ ∞ = 0`.
    pub fn monus(self, other: Ext) -> Ext {
        match (self, other) {
            (_, Ext::Inf) => Ext::zero(),
            (Ext::Inf, Ext::Fin(_)) => Ext::Inf,
            (Ext::Fin(a), Ext::Fin(b)) => {
                if a > b {
                    Ext::Fin(checked(a.checked_sub(&b)))
                } else {
                    Ext::zero()
                }
            }
        }
    }

    pub fn sub_fin(a: Rational, b: Rational) -> Rational {
        checked(a.checked_sub(&b))
    }

    pub fn add_fin(a: Rational, b: Rational) -> Rational {
        checked(a.checked_add(&b))
    }

    pub fn mul_fin(a: Rational, b: Rational) -> Rational {
        checked(a.checked_mul(&b))
    }

    pub fn div_fin(a: Rational, b: Rational) -> Rational {
        checked(a.checked_div(&b))
    }
}

fn checked(r: Option<Rational>) -> Rational {
    r.expect("rational arithmetic overflowed i64")
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order (`∞` greatest). Quantale orders are layered on top of this.
impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::Inf, Ext::Inf) => Ordering::Equal,
            (Ext::Inf, _) => Ordering::Greater,
            (_, Ext::Inf) => Ordering::Less,
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Inf => write!(f, "inf"),
            Ext::Fin(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Ext::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an exact non-negative rational: {0:?}")]
pub struct ParseExtError(pub String);

/// Accepts `"inf"`, `"p/q"`, integers and finite decimals such as `"0.7"`.
impl FromStr for Ext {
    type Err = ParseExtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseExtError(s.to_string());
        if t == "inf" || t == "∞" {
            return Ok(Ext::Inf);
        }
        let r = if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: i64 = d.trim().parse().map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            Rational::new(n, d)
        } else if let Some((whole, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 17 {
                return Err(err());
            }
            let w: i64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| err())? };
            let scale = 10i64.pow(frac.len() as u32);
            let f: i64 = frac.parse().map_err(|_| err())?;
            let num = w
                .checked_mul(scale)
                .and_then(|v| v.checked_add(f))
                .ok_or_else(err)?;
            Rational::new(num, scale)
        } else {
            Rational::from_integer(t.parse().map_err(|_| err())?)
        };
        if r.is_negative() {
            return Err(err());
        }
        Ok(Ext::Fin(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Ext>().unwrap(), Ext::ratio(1, 2));
        assert_eq!("0.7".parse::<Ext>().unwrap(), Ext::ratio(7, 10));
        assert_eq!("inf".parse::<Ext>().unwrap(), Ext::Inf);
        assert_eq!(Ext::ratio(4, 2).to_string(), "2");
        assert_eq!(Ext::ratio(1, 3).to_string(), "1/3");
        assert!("-1".parse::<Ext>().is_err());
        assert!("1/0".parse::<Ext>().is_err());
    }

    #[test]
    fn monus_and_add() {
        assert_eq!(Ext::int(5).monus(Ext::int(3)), Ext::int(2));
        assert_eq!(Ext::int(3).monus(Ext::int(5)), Ext::zero());
        assert_eq!(Ext::Inf.monus(Ext::int(5)), Ext::Inf);
        assert_eq!(Ext::Inf.monus(Ext::Inf), Ext::zero());
        assert_eq!(Ext::int(1).plus(Ext::Inf), Ext::Inf);
    }
}
