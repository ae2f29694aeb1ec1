//! Hermitian discrete hypergroups built from random walks on graphs.
//!
//! A graph with a chosen base point gives a family of "jump" measures `R_i`
//! (step to a uniform vertex at distance `i`), and products of these
//! measures decompose back onto the `R_k` with rational coefficients. This
//! crate computes those coefficients exactly, checks the hypergroup axioms,
//! and compares against distance-regular theory and known closed forms.

pub mod cli;
pub mod convolution;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hypergroup;
pub mod oracles;
pub mod rational;
pub mod report;
pub mod scheme;

pub use error::{Error, Result};
