//! Exact enumeration of Latin rectangles and Latin squares.
//!
//! Reduced `k x n` Latin rectangles are counted through the bipartite graph
//! recording which symbols appear in which columns: every such graph is
//! `k`-regular, and the rectangles mapping to it are counted by the number of
//! unordered 1-factorizations of the graph. Counts are cross-checked by a
//! signed-permanent formula, divisibility predicates and brute force.
//!
//! Modules:
//! - [`latin`]: rectangles, normalization, paratopisms, brute-force oracles.
//! - [`bipartite`]: canonical labeling, perfect matchings, 1-factorization counts.
//! - [`census`]: isomorph-free generation of regular bipartite graphs and the
//!   class-sum formulas.
//! - [`permanent`]: the sign-matrix permanent identity for `L_n`.
//! - [`number_theory`]: published constants, divisibility and factorization.
//! - [`symmetry`]: census of squares with non-trivial autoparatopism groups.
//! - [`cli`]: the `latin-census` command line.

pub mod bipartite;
pub mod census;
pub mod cli;
pub mod format;
pub mod latin;
pub mod number_theory;
pub mod permanent;
pub mod symmetry;

/// Exact nonnegative count.
pub type BigCount = num_bigint::BigUint;

pub use bipartite::{BipartiteGraph, CanonicalForm, CanonicalKey, FactorizationMemo};
pub use latin::{LatinRectangle, Paratopism, Permutation};
