//! Treewidth upper bounds from graph separators with partial fill-in.
//!
//! Given a separator `S` of a graph `G`, filling in only the pairs of
//! separator vertices attached to a common component yields the bound
//! `tw(G) <= max(tw(H_S), max_i(|S_i| + tw(G_i)))`, which is never worse
//! than the classic `|S| + max_i tw(G_i)` obtained by turning all of `S`
//! into a clique. The crate computes both bounds, constructs the witness
//! tree decomposition, searches for good separators, provides an exact
//! oracle for small graphs, and applies the decomposition to binary
//! constraint satisfaction with separator caching.

pub mod bounds;
pub mod csp;
pub mod decomposition;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod graph;
pub mod separator;

pub use bounds::{
    attachment_sets, combine_decompositions, corollary_bound, fill_in, recursive_bound,
    separator_as_clique_bound, separator_as_components_bound, BoundReport, ComponentBound,
    FillInResult, RecursionConfig, SubMethod,
};
pub use csp::{
    fit_growth_exponent, parse_constraints, solve_backtrack, solve_with_separator,
    ConstraintTable, CspInstance, SolveStats,
};
pub use decomposition::{
    find_cluster_containing, parse_td, validate, write_td, TreeDecomposition, ValidationVerdict,
    Violation,
};
pub use error::{Error, Result};
pub use exact::{
    exact_treewidth, greedy_elimination_width, width_of_ordering, EliminationOrdering,
    DEFAULT_EXACT_LIMIT,
};
pub use graph::{parse_graph, write_graph, Graph, Vertex, VertexSet};
pub use separator::{enumerate_candidates, min_vertex_cut, score, SeparatorCandidate};
