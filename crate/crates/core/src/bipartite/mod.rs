//! Regular bipartite graphs on `C ∪ S` with `|C| = |S| = n`: canonical
//! labeling, automorphism-group orders, perfect matchings and the memoized
//! count of unordered 1-factorizations.

pub(crate) mod canon;
mod factorization;
pub(crate) mod graph;
mod matching;
mod text;

pub use canon::{canonical_form, CanonicalForm, CanonicalKey};
pub use factorization::{
    edge_select, factorization_count, factorization_count_with, EdgeRule, FactorizationMemo,
    MAX_FACTORIZATION_N,
};
pub use graph::{BipartiteGraph, Edge, MAX_SIDE};
pub use matching::{count_perfect_matchings, one_factors_through, remove_factor, OneFactor};
pub use text::{parse_graph, write_graph};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("({}, {}) is not an edge", .0.column + 1, .0.symbol + 1)]
    NotAnEdge(Edge),
    #[error("the graph has no edges")]
    EmptyGraph,
    #[error("the 1-factor is not contained in the graph")]
    FactorNotInGraph,
    #[error("graph is not regular")]
    NotRegular,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
