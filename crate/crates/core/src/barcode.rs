//! Barcodes: finite multisets of same-dimension rectangles.
//!
//! A barcode is the decomposition of a rectangle-decomposable persistence
//! module; the empty barcode represents the zero module. Bars are kept in
//! storage order, duplicates are meaningful.

use crate::error::{Error, Result};
use crate::rectangle::Rectangle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode {
    /// `None` only for an empty barcode whose dimension was never declared.
    dim: Option<usize>,
    bars: Vec<Rectangle>,
}

impl Barcode {
    /// The empty barcode with undeclared dimension (the zero module).
    pub fn empty() -> Self {
        Barcode {
            dim: None,
            bars: Vec::new(),
        }
    }

    /// An empty barcode with a declared dimension.
    pub fn with_dim(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidRectangle(
                "barcode dimension must be positive".to_string(),
            ));
        }
        Ok(Barcode {
            dim: Some(dim),
            bars: Vec::new(),
        })
    }

    pub fn from_bars(bars: Vec<Rectangle>) -> Result<Self> {
        let mut barcode = Barcode::empty();
        for bar in bars {
            barcode.push(bar)?;
        }
        Ok(barcode)
    }

    pub fn push(&mut self, bar: Rectangle) -> Result<()> {
        match self.dim {
            Some(dim) if dim != bar.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: bar.dim(),
                })
            }
            _ => self.dim = Some(bar.dim()),
        }
        self.bars.push(bar);
        Ok(())
    }

    /// Declared or inferred dimension; `None` for an undeclared empty
    /// barcode, which is compatible with every dimension.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn bars(&self) -> &[Rectangle] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Errors unless the two barcodes can live in a common dimension.
    pub fn check_compatible(&self, other: &Barcode) -> Result<()> {
        if let (Some(a), Some(b)) = (self.dim, other.dim) {
            if a != b {
                return Err(Error::DimensionMismatch {
                    expected: a,
                    found: b,
                });
            }
        }
        Ok(())
    }

    /// Multiset equality: equal after sorting bars by their corner vectors.
    pub fn multiset_eq(&self, other: &Barcode) -> bool {
        if self.bars.len() != other.bars.len() {
            return false;
        }
        let mut left = self.bars.clone();
        let mut right = other.bars.clone();
        left.sort();
        right.sort();
        left == right
    }
}
