//! All minimal Markov bases of a toric ideal, from the configuration matrix
//! alone.
//!
//! Given an integer matrix `A` whose kernel meets the nonnegative orthant
//! only in zero, the moves of its toric ideal live in finite fibers
//! `{u >= 0 : A u = t}`. This crate admits such matrices with an exact
//! feasibility proof, computes a generating set of moves by binomial
//! completion, and then reads everything else off the fiber graphs:
//!
//! - [`count_markov`] - the exact number of minimal Markov bases;
//! - [`markov_bases`] - a lazy stream of all of them, deterministic order;
//! - [`random_markov`] - exactly uniform independent samples;
//! - [`indispensable_set`] / [`universal_markov`] - the intersection and
//!   union of all minimal bases;
//! - [`verify_markov_basis`] - connectivity-based verification with
//!   certificates;
//! - [`prufer_tree`] - the Prüfer decode used by the spanning-tree
//!   enumeration, exposed as a utility.
//!
//! No computer-algebra system is involved; all arithmetic is exact.

pub mod error;
pub mod fiber;
pub mod lattice;
pub mod markov;
pub mod matrix;
pub mod moves;
pub mod parse;
pub mod render;
pub mod seed;
pub mod simplex;

pub use error::{Error, Result};
pub use fiber::{
    enumerate_fiber, fiber_graph, fiber_graph_dot, fiber_graph_uncached, generating_fiber_graphs,
    Fiber, FiberGraph, FiberKey,
};
pub use lattice::{kernel_lattice_basis, LatticeBasis};
pub use markov::{
    collect_markov_bases, count_markov, count_markov_from_seed, generating_fibers,
    indispensable_from_seed, indispensable_set, markov_bases, markov_bases_from_seed, minimize,
    prufer_tree, random_markov, random_markov_from_seed, universal_from_seed, universal_markov,
    verify_markov_basis, verify_seed_basis, BasisStream, BigCount, Certificate, Verdict,
    DEFAULT_MATERIALIZE_LIMIT,
};
pub use matrix::{positive_grading, ConfigMatrix, Grading, PointednessCheck, DEFAULT_FIBER_LIMIT};
pub use moves::{canonical_sign, BasisKind, MarkovBasis, Move};
pub use parse::{matrix_to_json, parse_key, parse_matrix, parse_moves};
pub use render::{parse_binomial, render_binomial};
pub use seed::{
    buchberger, saturate_variable, seed_markov_basis, seed_markov_basis_with_budget, Binomial,
    BinomialGb, CompletionBudget, TermOrder,
};
