//! Decides whether a subspace arrangement over a prime field admits a linear
//! layout of width at most k, and constructs one by dynamic programming over
//! a branch-decomposition. Front-ends cover matroid path-width, trellis-width
//! of linear block codes, and linear rank-width / linear clique-width of
//! graphs.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: exact GF(q) arithmetic, matrices, canonical subspaces
//! - [`arrangement`]: arrangements, connectivity, layouts, preprocessing,
//!   branch-decompositions with boundary bases
//! - [`trajectory`]: the statistics calculus the DP runs on (compactification,
//!   comparison, projection, sums)
//! - [`fullset`]: the full-set dynamic program with certificate backtracking
//! - [`solver`]: end-to-end decision and exact drivers (iterative compression)
//! - [`matroid`], [`graph`]: represented matroids / trellises and graph
//!   rank-width front-ends
//! - [`oracle`]: brute-force references the test suites compare against
//! - [`gen`]: seeded instance generators
//!
//! With the default `parallel` feature, the heavy inner loops (join candidate
//! generation, antichain pruning, boundary computation) run on rayon; without
//! it everything is sequential.

pub mod arrangement;
pub mod error;
pub mod gen;
pub mod graph;
pub mod linalg;
pub mod matroid;
pub mod fullset;
pub mod oracle;
pub mod solver;
pub mod trajectory;

pub use error::{Error, Result};
