//! Exact distances between rectangle-decomposable persistence modules.
//!
//! A rectangle persistence module is determined by its underlying open
//! rectangle in `R^n`; a rectangle-decomposable module by its barcode, a
//! finite multiset of such rectangles. This crate computes
//!
//! * the interleaving distance between two rectangle modules, in closed
//!   form from the corner coordinates ([`Rectangle::interleaving_distance`]),
//! * the bottleneck distance between two rectangle-decomposable modules,
//!   by exact threshold search over matching costs
//!   ([`bottleneck_distance`]),
//!
//! entirely in extended rational arithmetic ([`ExtReal`]), so results are
//! exact including the infinite cases.
//!
//! An independent oracle recomputes both quantities from first principles
//! — interleavings are decided diagram-by-diagram on a finite grid,
//! bottleneck by brute-force enumeration of matchings — and the library's
//! test suite holds the fast and slow routes to exact agreement. See
//! [`oracle`].
//!
//! Barcodes are read and written in an exact line-oriented TEXT format and
//! a JSON schema ([`io`]), and [`sampling`] provides seeded random inputs.
//!
//! ```
//! use rectdist::{parse_rectangle_literal, ExtReal};
//!
//! let r = parse_rectangle_literal("(0,2) x (0,2)")?;
//! let q = parse_rectangle_literal("(1,3) x (1,3)")?;
//! assert_eq!(r.interleaving_distance(&q)?, ExtReal::integer(1));
//! # Ok::<(), rectdist::Error>(())
//! ```

pub mod barcode;
mod bipartite;
pub mod bottleneck;
pub mod error;
pub mod ext_real;
pub mod io;
pub mod oracle;
pub mod rectangle;
pub mod sampling;

pub use barcode::Barcode;
pub use bottleneck::{
    bottleneck_distance, matching_cost, BottleneckResult, CostMatrix, Matching,
};
pub use error::{Error, Result};
pub use ext_real::{max_norm_dist, ExtReal};
pub use io::{parse_barcode, parse_rectangle_literal, serialize_barcode, Format};
pub use oracle::{
    critical_grid, enumerate_bottleneck, grid_interleaving_check, interleaving_candidates,
    oracle_interleaving_distance, GridModule, ENUMERATION_LIMIT,
};
pub use rectangle::{Bracket, Rectangle};
