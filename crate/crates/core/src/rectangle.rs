//! Open rectangles in `R^n` and the distances between the persistence
//! modules they support.
//!
//! A rectangle module is determined by its underlying rectangle
//! `(a_1, b_1) x ... x (a_n, b_n)`, so every distance here is a function of
//! the corner vectors `a` and `b` alone. Rectangles are stored in open
//! canonical form: closed or half-open user input is normalized at parse
//! time and the written brackets are kept only as display metadata, which
//! is sound because the interleaving distance is invariant under closure
//! and interior.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ext_real::{max_norm_dist, ExtReal};

/// Whether an interval endpoint was written open or closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bracket {
    Open,
    Closed,
}

/// The written brackets of one axis interval: `(lower, upper)`.
pub type AxisBrackets = (Bracket, Bracket);

/// An `n`-parameter open rectangle `(a_1, b_1) x ... x (a_n, b_n)` with
/// `a_i` in `R ∪ {-inf}`, `b_i` in `R ∪ {+inf}` and `a_i < b_i` on every
/// axis.
///
/// Equality, ordering and hashing use only the corner vectors; the optional
/// bracket decoration never influences them or any distance.
#[derive(Clone)]
pub struct Rectangle {
    lower: Vec<ExtReal>,
    upper: Vec<ExtReal>,
    brackets: Option<Vec<AxisBrackets>>,
}

impl Rectangle {
    pub fn new(lower: Vec<ExtReal>, upper: Vec<ExtReal>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidRectangle(
                "rectangle needs at least one axis".to_string(),
            ));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        for (axis, (a, b)) in lower.iter().zip(&upper).enumerate() {
            if *a == ExtReal::PosInf {
                return Err(Error::InvalidRectangle(format!(
                    "axis {axis}: lower endpoint may not be +inf"
                )));
            }
            if *b == ExtReal::NegInf {
                return Err(Error::InvalidRectangle(format!(
                    "axis {axis}: upper endpoint may not be -inf"
                )));
            }
            if a >= b {
                return Err(Error::InvalidRectangle(format!(
                    "axis {axis}: lower endpoint {a} must be strictly below upper endpoint {b}"
                )));
            }
        }
        Ok(Rectangle {
            lower,
            upper,
            brackets: None,
        })
    }

    /// Like [`Rectangle::new`], additionally recording the brackets the
    /// input was written with.
    pub fn with_brackets(
        lower: Vec<ExtReal>,
        upper: Vec<ExtReal>,
        brackets: Vec<AxisBrackets>,
    ) -> Result<Self> {
        if brackets.len() != lower.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: brackets.len(),
            });
        }
        let mut rect = Rectangle::new(lower, upper)?;
        rect.brackets = Some(brackets);
        Ok(rect)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[ExtReal] {
        &self.lower
    }

    pub fn upper(&self) -> &[ExtReal] {
        &self.upper
    }

    /// The brackets the rectangle was written with, if it came from input
    /// that recorded them. Display metadata only.
    pub fn display_brackets(&self) -> Option<&[AxisBrackets]> {
        self.brackets.as_deref()
    }

    fn check_dim(&self, other: &Rectangle) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Shortest side length `min_i (b_i - a_i)`. The module supported on
    /// this rectangle is `eps`-trivial exactly for `eps >=` this value.
    pub fn triviality_threshold(&self) -> ExtReal {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| b - a)
            .min()
            .expect("rectangle has at least one axis")
    }

    /// Interleaving distance to the zero module: half the triviality
    /// threshold.
    pub fn zero_distance(&self) -> ExtReal {
        self.triviality_threshold().halve()
    }

    /// The underlying rectangle of the `eps`-shifted module: every finite
    /// endpoint translated down by `eps`, infinite endpoints unchanged.
    pub fn shift(&self, eps: &BigRational) -> Rectangle {
        assert!(!eps.is_negative(), "shift amount must be nonnegative");
        let delta = ExtReal::Finite(eps.clone());
        Rectangle {
            lower: self.lower.iter().map(|a| a - &delta).collect(),
            upper: self.upper.iter().map(|b| b - &delta).collect(),
            brackets: self.brackets.clone(),
        }
    }

    /// Whether a nonzero morphism exists from this module into the
    /// `eps`-shift of `other`. With corners `(a, b)` here and `(c, d)`
    /// there, the criterion is
    /// `max{max_i (c_i - a_i), max_i (d_i - b_i)} <= eps < min_i (d_i - a_i)`.
    pub fn admits_nontrivial_morphism(
        &self,
        other: &Rectangle,
        eps: &BigRational,
    ) -> Result<bool> {
        self.check_dim(other)?;
        assert!(!eps.is_negative(), "shift amount must be nonnegative");
        let eps = ExtReal::Finite(eps.clone());
        let need_shift = self
            .lower
            .iter()
            .zip(&other.lower)
            .map(|(a, c)| c - a)
            .chain(self.upper.iter().zip(&other.upper).map(|(b, d)| d - b))
            .max()
            .expect("nonempty");
        let room = self
            .lower
            .iter()
            .zip(&other.upper)
            .map(|(a, d)| d - a)
            .min()
            .expect("nonempty");
        Ok(need_shift <= eps && eps < room)
    }

    /// The interleaving distance between the rectangle modules supported on
    /// `self = (a, b)` and `other = (c, d)`:
    ///
    /// ```text
    /// min{ max{ min_i (b_i-a_i)/2, min_i (d_i-c_i)/2 },
    ///      max{ ||c-a||_inf, ||d-b||_inf } }
    /// ```
    ///
    /// The first term is the cost of interleaving through the zero module,
    /// the second the cost of shifting one rectangle onto the other.
    pub fn interleaving_distance(&self, other: &Rectangle) -> Result<ExtReal> {
        self.check_dim(other)?;
        let trivial_term = self.zero_distance().max(other.zero_distance());
        let shift_term = max_norm_dist(&other.lower, &self.lower)?
            .max(max_norm_dist(&other.upper, &self.upper)?);
        Ok(trivial_term.min(shift_term))
    }
}

impl PartialEq for Rectangle {
    fn eq(&self, other: &Self) -> bool {
        self.lower == other.lower && self.upper == other.upper
    }
}

impl Eq for Rectangle {}

impl PartialOrd for Rectangle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rectangle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.lower, &self.upper).cmp(&(&other.lower, &other.upper))
    }
}

impl Hash for Rectangle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lower.hash(state);
        self.upper.hash(state);
    }
}

impl fmt::Debug for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (axis, (a, b)) in self.lower.iter().zip(&self.upper).enumerate() {
            if axis > 0 {
                write!(f, " x ")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}
