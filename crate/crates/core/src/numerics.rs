//! Exact rational arithmetic on 64-bit integers.
//!
//! Every intermediate product is formed in `i128` and narrowed back with a
//! check, so overflow is always a hard failure: the `checked_*` methods
//! return [`Error::Overflow`], the operator impls panic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced rational number `num/den` with `den >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Fraction {
    num: i64,
    den: i64,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

fn reduce_wide(num: i128, den: i128) -> Result<Fraction> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    Ok(Fraction {
        num: narrow(n)?,
        den: narrow(d)?,
    })
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    /// Reduced representative of `p/q`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        reduce_wide(p as i128, q as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn abs(self) -> Self {
        Fraction {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    pub fn ceil(self) -> i64 {
        -Integer::div_floor(&-self.num, &self.den)
    }

    pub fn recip(self) -> Result<Self> {
        if self.num == 0 {
            return Err(Error::DivisionByZero);
        }
        reduce_wide(self.den as i128, self.num as i128)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = self.wide(rhs);
        reduce_wide(a * d + c * b, b * d)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = self.wide(rhs);
        reduce_wide(a * d - c * b, b * d)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = self.wide(rhs);
        reduce_wide(a * c, b * d)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(Error::DivisionByZero);
        }
        let (a, b, c, d) = self.wide(rhs);
        reduce_wide(a * d, b * c)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Fraction {
            num: self.num.checked_neg().ok_or(Error::Overflow)?,
            den: self.den,
        })
    }

    fn wide(self, rhs: Self) -> (i128, i128, i128, i128) {
        (
            self.num as i128,
            self.den as i128,
            rhs.num as i128,
            rhs.den as i128,
        )
    }

    /// Canonical continued fraction `[a0; a1, ..., ak]` with `a0 = floor(x)`
    /// and `ak >= 2` whenever `k >= 1`.
    pub fn continued_fraction(self) -> Vec<i64> {
        let (mut n, mut d) = (self.num as i128, self.den as i128);
        let mut terms = Vec::new();
        while d != 0 {
            let a = Integer::div_floor(&n, &d);
            terms.push(a as i64);
            let r = n - a * d;
            n = d;
            d = r;
        }
        terms
    }

    /// Folds a continued fraction back into a rational.
    pub fn from_continued_fraction(terms: &[i64]) -> Result<Self> {
        let (last, rest) = terms
            .split_last()
            .ok_or_else(|| Error::Parse("empty continued fraction".into()))?;
        let mut acc = Fraction::from_integer(*last);
        for &a in rest.iter().rev() {
            acc = Fraction::from_integer(a).checked_add(acc.recip()?)?;
        }
        Ok(acc)
    }
}

impl Default for Fraction {
    fn default() -> Self {
        Fraction::ZERO
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::from_integer(n)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, c, d) = self.wide(*other);
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                match self.$checked(rhs) {
                    Ok(x) => x,
                    Err(e) => panic!("{} {} {}: {}", self, stringify!($method), rhs, e),
                }
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        self.checked_neg().expect("fraction negation overflow")
    }
}

impl std::iter::Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Fraction {
        iter.fold(Fraction::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let int = |t: &str| -> Result<i64> {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {:?}", t.trim())))
        };
        match s.split_once('/') {
            Some((p, q)) => Fraction::new(int(p)?, int(q)?),
            None => Ok(Fraction::from_integer(int(s)?)),
        }
    }
}

impl From<Fraction> for String {
    fn from(f: Fraction) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Fraction {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Shorthand for building fractions from literals in tests and tables.
pub fn frac(p: i64, q: i64) -> Fraction {
    Fraction::new(p, q).expect("nonzero denominator")
}
