//! Exact arithmetic on the extended real line `R ∪ {-inf, +inf}`.
//!
//! Finite values are arbitrary-precision rationals kept in lowest terms, so
//! no operation ever rounds. The infinite values obey
//!
//! ```text
//! a + (±inf) = (±inf) + a = ±inf        (±inf) + (±inf) = ±inf
//! (±inf) - (±inf) = 0                   |±inf| = +inf
//! -inf < a < +inf                       for every finite a
//! ```
//!
//! Mixed-sign infinite addition is not covered by the conventions and is
//! surfaced as [`Error::UndefinedArithmetic`]; subtraction is total.

use std::fmt;
use std::ops::{Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An extended real number: an exact rational, `-inf`, or `+inf`.
///
/// The derived ordering is the total order of the extended line:
/// `NegInf < Finite(a) < PosInf` with finite values compared exactly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn integer(n: i64) -> Self {
        ExtReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Finite rational `numer/denom`. Panics if `denom` is zero.
    pub fn rational(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        ExtReal::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Addition under the extended conventions. The only undefined case is
    /// a mixed-sign infinite sum.
    pub fn checked_add(&self, other: &ExtReal) -> Result<ExtReal> {
        use ExtReal::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => {
                Err(Error::UndefinedArithmetic("(+inf) + (-inf)"))
            }
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    pub fn abs(&self) -> ExtReal {
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a.abs()),
            _ => ExtReal::PosInf,
        }
    }

    /// Exact halving; infinities are fixed points.
    pub fn halve(&self) -> ExtReal {
        match self {
            ExtReal::Finite(a) => {
                ExtReal::Finite(a / BigRational::from_integer(BigInt::from(2)))
            }
            inf => inf.clone(),
        }
    }
}

impl From<BigRational> for ExtReal {
    fn from(r: BigRational) -> Self {
        ExtReal::Finite(r)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::integer(n)
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(a) => ExtReal::Finite(-a),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        -&self
    }
}

/// Total subtraction: same-sign infinite differences collapse to zero,
/// every other infinite case is forced by the addition conventions.
impl Sub for &ExtReal {
    type Output = ExtReal;

    fn sub(self, other: &ExtReal) -> ExtReal {
        use ExtReal::*;
        match (self, other) {
            (PosInf, PosInf) | (NegInf, NegInf) => ExtReal::zero(),
            (PosInf, _) => PosInf,
            (NegInf, _) => NegInf,
            (Finite(_), PosInf) => NegInf,
            (Finite(_), NegInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a - b),
        }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;

    fn sub(self, other: ExtReal) -> ExtReal {
        &self - &other
    }
}

/// The max-norm distance `max_i |u_i - v_i|` between two points of the
/// extended space, evaluated with the extended conventions. The result
/// always lies in `[0, +inf]`.
pub fn max_norm_dist(u: &[ExtReal], v: &[ExtReal]) -> Result<ExtReal> {
    if u.len() != v.len() || u.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: u.len().max(1),
            found: if u.is_empty() { 0 } else { v.len() },
        });
    }
    Ok(u.iter()
        .zip(v)
        .map(|(a, b)| (a - b).abs())
        .max()
        .expect("nonempty"))
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses an extended-real token: `inf`, `-inf`, an integer, a decimal
/// (converted exactly, `0.25` -> `1/4`), or a fraction `p/q`.
pub(crate) fn parse_token(s: &str) -> std::result::Result<ExtReal, String> {
    match s {
        "inf" | "+inf" => return Ok(ExtReal::PosInf),
        "-inf" => return Ok(ExtReal::NegInf),
        "" => return Err("empty number".to_string()),
        _ => {}
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer = parse_big_int(p)?;
        let denom = parse_big_int(q)?;
        if denom.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(ExtReal::Finite(BigRational::new(numer, denom)));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = split_sign(int_part);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(format!("malformed decimal `{s}`"));
        }
        let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| format!("malformed decimal `{s}`"))?
        };
        let frac_val: BigInt = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            frac_part.parse().map_err(|_| format!("malformed decimal `{s}`"))?
        };
        let magnitude = int_val * &scale + frac_val;
        let numer = if sign < 0 { -magnitude } else { magnitude };
        return Ok(ExtReal::Finite(BigRational::new(numer, scale)));
    }
    Ok(ExtReal::Finite(BigRational::from_integer(parse_big_int(s)?)))
}

fn split_sign(s: &str) -> (i8, &str) {
    if let Some(rest) = s.strip_prefix('-') {
        (-1, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (1, rest)
    } else {
        (1, s)
    }
}

fn parse_big_int(s: &str) -> std::result::Result<BigInt, String> {
    let (sign, digits) = split_sign(s);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(format!("malformed integer `{s}`"));
    }
    let value: BigInt = digits.parse().map_err(|_| format!("malformed integer `{s}`"))?;
    Ok(if sign < 0 { -value } else { value })
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_token(s).map_err(|message| Error::Parse {
            line: 1,
            column: 1,
            message,
        })
    }
}
