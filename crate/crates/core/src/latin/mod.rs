//! Latin rectangles and squares: validation, normalization, the paratopism
//! action, symmetry-group orders and brute-force enumeration.
//!
//! Symbols, rows and columns are 1-based at every public boundary.

mod enumerate;
mod groups;
mod perm;
mod rectangle;
mod text;

pub use enumerate::{count_reduced, enumerate_reduced, ReducedRectangles, MAX_ENUMERATION_ORDER};
pub use groups::{
    autoparatopism_group_order, autotopism_group_order, count_isotopisms,
    has_nontrivial_autoparatopism, MAX_GROUP_ORDER_N,
};
pub use perm::{Conjugate, Paratopism, Permutation};
pub use rectangle::{total_from_reduced, LatinRectangle};
pub use text::{parse_rectangle, write_rectangle};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("invalid shape: {0}")]
    ShapeInvalid(String),
    #[error("symbol {symbol} out of range 1..={n} at row {row}, column {column}")]
    SymbolOutOfRange { row: usize, column: usize, symbol: usize, n: usize },
    #[error("symbol {symbol} repeats in row {row} (column {column})")]
    RowRepeat { row: usize, column: usize, symbol: usize },
    #[error("symbol {symbol} repeats in column {column} (row {row})")]
    ColumnRepeat { row: usize, column: usize, symbol: usize },
    #[error("operation requires a Latin square, got {k}x{n}")]
    NotSquare { k: usize, n: usize },
    #[error("degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
