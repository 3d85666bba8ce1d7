//! Exact and empirical analysis of rough ideal convergence for double
//! sequences over ℕ×ℕ.
//!
//! A double sequence assigns a point of ℝ^d to every index pair (j, k).
//! For a roughness degree `r ≥ 0` and an ideal `I` of "small" index sets,
//! a point ξ is a rough I-limit of the sequence when, for every ε > 0,
//! the set of indices whose values stay at least `r + ε` away from ξ
//! belongs to `I`. This crate computes the resulting limit sets, cluster
//! points, I-limsup/liminf and boundedness classifications exactly for
//! symbolically specified sequences, and approximately through grid
//! truncation (the [`oracle`] module), so every exact result can be
//! cross-checked against brute force.
//!
//! Modules:
//! - [`geometry`]: p-norms, closed balls, intervals.
//! - [`ideals`]: symbolic index regions with exact rational densities and
//!   the decidable ideal families.
//! - [`sequences`]: the structured double-sequence model.
//! - [`analysis`]: rough limit sets, cluster points, and one executable
//!   checker per supported theorem.
//! - [`oracle`]: independent finite-truncation engine.
//! - [`sexpr`]: the text format for regions and sequence specs.
//! - [`testgen`]: deterministic random instance generators for test
//!   harnesses.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod ideals;
pub mod oracle;
pub mod sequences;
pub mod sexpr;
pub mod testgen;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Absolute tolerance for comparing derived floating-point reals.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// Maximum supported point dimension.
pub const MAX_DIM: usize = 8;
