//! Knot Floer model complexes of the pretzel knots `P(−2, m, n)` and their
//! involutive concordance invariants `V₀`, `V̲₀`, `V̄₀`.
//!
//! Everything is exact: complexes live over `F₂[U, U⁻¹]`, homology is taken
//! over `F₂[U]` through Smith normal form, and every derived quantity is read
//! off explicit cycle representatives.

pub mod complex;
pub mod error;
pub mod f2;
pub mod homology;
pub mod invariants;
pub mod involution;
pub mod matrix;
pub mod pretzel;
pub mod render;
pub mod snf;
pub mod upoly;

pub use error::{AlgebraError, Error, Result};
